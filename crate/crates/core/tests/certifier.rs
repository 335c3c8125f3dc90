use emeasure::certify::{
    certify_against_theorem, min_linear_form, min_linear_form_with, naive_min, CertifyOptions,
};

#[test]
fn reduced_scan_matches_full_enumeration() {
    for (n, k) in [(2, 2), (2, 3), (3, 3)] {
        for h in 1..=3 {
            let rec = min_linear_form(n, k, h, 96).unwrap();
            let naive = naive_min(n, k, h);
            assert_eq!(rec.argmin, naive.argmin, "n={n} k={k} H={h}");
            assert!((rec.min_value.to_f64() - naive.value).abs() < 1e-12);
        }
    }
}

#[test]
fn argmin_respects_height_and_is_nonzero() {
    let rec = min_linear_form(2, 3, 7, 96).unwrap();
    assert!(rec.argmin[1..].iter().all(|l| l.unsigned_abs() <= 7));
    assert!(rec.argmin.iter().any(|&l| l != 0));
    assert!(*rec.argmin.iter().rev().find(|&&l| l != 0).unwrap() > 0);
    assert!(rec.min_value.is_positive());
}

#[test]
fn thread_count_does_not_change_the_result() {
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let a = one.install(|| min_linear_form(2, 3, 12, 128).unwrap());
    let b = min_linear_form(2, 3, 12, 128).unwrap();
    assert_eq!(a.argmin, b.argmin);
    assert_eq!(a.min_value, b.min_value);
    assert_eq!(a.tuples_scanned, b.tuples_scanned);
}

#[test]
fn low_starting_precision_escalates() {
    let opts = CertifyOptions::with_precision(32);
    let rec = min_linear_form_with(2, 3, 30, &opts).unwrap();
    assert!(rec.min_value.precision_bits() >= 32);
    assert!(rec.min_value.excludes_zero());
}

#[test]
fn certificate_verdicts_for_small_heights() {
    for h in [3u64, 5, 20] {
        let rec = certify_against_theorem(2, 3, h, 128).unwrap();
        assert_eq!(rec.verdict, Some(true));
        assert!(!rec.hypothesis_satisfied);
    }
}

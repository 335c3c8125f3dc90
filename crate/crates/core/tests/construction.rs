use emeasure::pade::{
    a0_poly, aj_poly, bareiss_determinant, normalize_system, remainder_value, AlphaVector,
    ApproximationSystem, ExponentVector, IntegerRoute, SystemDocument,
};
use emeasure::{ExactRational, IntPolynomial};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rat(p: i64, q: i64) -> ExactRational {
    ExactRational::new(p.into(), q.into())
}

#[test]
fn unit_multiplicities_small_system() {
    let alpha = AlphaVector::new(2, 2).unwrap();
    let ell = ExponentVector::custom(vec![1, 1, 1]).unwrap();
    let a0 = a0_poly(&ell, &alpha);
    // −t²/2 + 3t − 6 from i!σ_i of Ω = −x³ + 3x²/2 − x/2
    assert_eq!(a0.coeffs(), &[rat(-6, 1), rat(3, 1), rat(-1, 2)]);
    assert_eq!(a0.eval(&ExactRational::one()), rat(-7, 2));
    let a1 = aj_poly(1, &ell, &alpha).unwrap();
    assert_eq!(a1.degree(), Some(2));
}

#[test]
fn both_routes_build_the_same_family() {
    for (n, k, ell) in [(2, 2, 2), (2, 3, 3), (3, 3, 2), (3, 4, 3)] {
        let slow = normalize_system(n, k, ell).unwrap();
        let fast = ApproximationSystem::build_fast(n, k, ell).unwrap();
        assert_eq!(slow, fast);
        assert_ne!(slow.determinant(), BigInt::zero());
        assert_eq!(
            IntegerRoute::new(n, k, ell).unwrap().values(),
            slow.values_at_one()
        );
    }
}

#[test]
fn document_round_trip() {
    let sys = normalize_system(2, 3, 2).unwrap();
    let doc = sys.to_document();
    let json = serde_json::to_string(&doc).unwrap();
    let back: SystemDocument = serde_json::from_str(&json).unwrap();
    assert_eq!(back, doc);
    assert_eq!(doc.norm_factor.numerator, "64");
    let m: Vec<Vec<BigInt>> = doc
        .values_at_one
        .iter()
        .map(|r| r.iter().map(|s| s.parse().unwrap()).collect())
        .collect();
    assert_eq!(bareiss_determinant(m).to_string(), doc.determinant);
}

#[test]
fn remainders_are_small_and_resolved() {
    let a = remainder_value(1, 0, 2, 2, 2, 128).unwrap();
    assert!(a.excludes_zero());
    let b = remainder_value(1, 0, 2, 2, 2, 256).unwrap();
    assert!(b.radius() * rat(2, 1) <= a.radius());
    let deep = remainder_value(2, 1, 2, 2, 40, 64).unwrap();
    assert!(deep.to_f64().abs() < 1e-20);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn integer_polynomials_have_the_stated_degrees(n in 2usize..4, extra in 0usize..2, ell in 2usize..5) {
        let k = n + extra;
        let sys = ApproximationSystem::build_fast(n, k, ell).unwrap();
        let big_l = (k + 1) * ell - 1;
        for u in 0..=k {
            for j in 0..=k {
                let p: &IntPolynomial = sys.poly(u, j);
                let ell_j = if j == u { ell - 1 } else { ell };
                prop_assert_eq!(p.degree(), Some(big_l - ell_j));
            }
        }
    }
}

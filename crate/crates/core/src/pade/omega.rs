//! The auxiliary product `Ω(x) = ∏ (a_s − x)^{ℓ_s}` and its coefficients `σ_i`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::vectors::{ExponentVector, Nodes};
use crate::exact::{binomial, Polynomial};
use crate::ExactPolynomial;

/// Expands `∏_s (a_s − x)^{ℓ_s}` by repeated exact multiplication.
pub fn omega_poly(nodes: &(impl Nodes + ?Sized), ell: &ExponentVector) -> ExactPolynomial {
    let nodes = nodes.nodes();
    assert_eq!(
        nodes.len(),
        ell.entries().len(),
        "one multiplicity per node"
    );
    let mut acc = Polynomial::one();
    for (a, &m) in nodes.iter().zip(ell.entries()) {
        let factor = Polynomial::root_factor(a.clone());
        for _ in 0..m {
            acc = &acc * &factor;
        }
    }
    acc
}

/// `σ_i` from the multinomial closed form
/// `σ_i = (−1)^i Σ_{i_0+…+i_k=i} ∏ C(ℓ_r, i_r) a_r^{ℓ_r − i_r}`.
pub fn sigma_closed_form(
    i: usize,
    ell: &ExponentVector,
    nodes: &(impl Nodes + ?Sized),
) -> BigRational {
    sigma_closed_form_all(ell, nodes)
        .get(i)
        .cloned()
        .unwrap_or_else(BigRational::zero)
}

/// All `σ_0 … σ_L` from the closed form, enumerating every composition once.
pub fn sigma_closed_form_all(
    ell: &ExponentVector,
    nodes: &(impl Nodes + ?Sized),
) -> Vec<BigRational> {
    let nodes = nodes.nodes();
    let exps = ell.entries();
    assert_eq!(nodes.len(), exps.len(), "one multiplicity per node");
    let total = ell.total();

    // Common denominator: a_r = num_r / den.
    let den = nodes
        .iter()
        .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
    let nums: Vec<BigInt> = nodes
        .iter()
        .map(|a| a.numer() * (&den / a.denom()))
        .collect();

    // Per node: admissible (i_r, C(ℓ_r, i_r) num_r^{ℓ_r − i_r}).
    let tables: Vec<Vec<(usize, BigInt)>> = nums
        .iter()
        .zip(exps)
        .map(|(num, &m)| {
            (0..=m)
                .filter_map(|ir| {
                    let p = m - ir;
                    if num.is_zero() && p > 0 {
                        return None;
                    }
                    Some((ir, binomial(m, ir) * num_traits::pow(num.clone(), p)))
                })
                .collect()
        })
        .collect();

    let mut buckets = vec![BigInt::zero(); total + 1];
    let mut idx = vec![0usize; tables.len()];
    'outer: loop {
        let mut deg = 0;
        let mut prod = BigInt::one();
        for (t, &ix) in tables.iter().zip(&idx) {
            deg += t[ix].0;
            prod *= &t[ix].1;
        }
        buckets[deg] += prod;
        // odometer step
        for pos in 0..idx.len() {
            idx[pos] += 1;
            if idx[pos] < tables[pos].len() {
                continue 'outer;
            }
            idx[pos] = 0;
        }
        break;
    }

    // Σ ∏ C·num^{ℓ−i} carries den^{L−i}.
    buckets
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            let sign = if i % 2 == 1 {
                -BigInt::one()
            } else {
                BigInt::one()
            };
            BigRational::new(sign * s, num_traits::pow(den.clone(), total - i))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::pade::vectors::AlphaVector;

    fn ones() -> ExponentVector {
        ExponentVector::custom(vec![1, 1, 1]).unwrap()
    }

    #[test]
    fn product_expansion_small() {
        let alpha = AlphaVector::new(2, 2).unwrap();
        let om = omega_poly(&alpha, &ones());
        // (0 - x)(1/2 - x)(1 - x) expanded by hand
        assert_eq!(om.coeffs(), &[rat(0, 1), rat(-1, 2), rat(3, 2), rat(-1, 1)]);
    }

    #[test]
    fn vanishes_at_nodes() {
        let alpha = AlphaVector::new(3, 4).unwrap();
        let ell = ExponentVector::row(4, 3, 2).unwrap();
        let om = omega_poly(&alpha, &ell);
        for a in alpha.nodes() {
            assert!(om.eval(a).is_zero());
        }
        let two_two = omega_poly(
            &AlphaVector::new(2, 2).unwrap(),
            &ExponentVector::custom(vec![2, 2, 2]).unwrap(),
        );
        assert_eq!(two_two.degree(), Some(6));
    }

    #[test]
    fn closed_form_small() {
        let alpha = AlphaVector::new(2, 2).unwrap();
        assert_eq!(sigma_closed_form(3, &ones(), &alpha), rat(-1, 1));
        assert_eq!(sigma_closed_form(1, &ones(), &alpha), rat(-1, 2));
        assert_eq!(sigma_closed_form(0, &ones(), &alpha), rat(0, 1));
    }

    #[test]
    fn closed_form_vanishes_below_l0() {
        let alpha = AlphaVector::new(3, 3).unwrap();
        let ell = ExponentVector::row(3, 5, 1).unwrap();
        let all = sigma_closed_form_all(&ell, &alpha);
        assert!(all[..5].iter().all(|s| s.is_zero()));
        assert!(!all[5].is_zero());
    }

    #[test]
    fn closed_form_matches_expansion_for_shifted_nodes() {
        let alpha = AlphaVector::new(2, 4).unwrap();
        for j in 0..=4 {
            let beta = alpha.shifted(j);
            for u in 0..=4 {
                let ell = ExponentVector::row(4, 3, u).unwrap();
                let expanded = omega_poly(&beta, &ell);
                let closed = sigma_closed_form_all(&ell, &beta);
                for (i, s) in closed.iter().enumerate() {
                    assert_eq!(s, &expanded.coeff(i), "j={j} u={u} i={i}");
                }
            }
        }
    }
}

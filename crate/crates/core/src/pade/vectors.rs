use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Rejects parameters outside `k ≥ n ≥ 2`, `ℓ ≥ 2`.
pub fn check_parameters(n: usize, k: usize, ell: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InputDomain(format!("n = {n} must be at least 2")));
    }
    if k < n {
        return Err(Error::InputDomain(format!(
            "k = {k} must satisfy k >= n = {n}"
        )));
    }
    if ell < 2 {
        return Err(Error::InputDomain(format!(
            "ell = {ell} must be at least 2"
        )));
    }
    Ok(())
}

/// Anything that supplies the nodes of an auxiliary product.
pub trait Nodes {
    fn nodes(&self) -> &[BigRational];
}

impl Nodes for [BigRational] {
    fn nodes(&self) -> &[BigRational] {
        self
    }
}

impl Nodes for Vec<BigRational> {
    fn nodes(&self) -> &[BigRational] {
        self
    }
}

/// The nodes `α_s = s/n` for `s = 0..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaVector {
    n: usize,
    k: usize,
    entries: Vec<BigRational>,
}

impl AlphaVector {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 2 || k < n {
            return Err(Error::InputDomain(format!(
                "alpha vector needs k >= n >= 2, got n = {n}, k = {k}"
            )));
        }
        Ok(Self::unchecked(n, k))
    }

    /// Same nodes without the `k ≥ n ≥ 2` guard (small synthetic examples).
    pub fn unchecked(n: usize, k: usize) -> Self {
        let entries = (0..=k)
            .map(|s| BigRational::new(s.into(), n.into()))
            .collect();
        Self { n, k, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Nodes shifted so that index `j` sits at zero.
    pub fn shifted(&self, j: usize) -> BetaVector {
        let base = &self.entries[j];
        BetaVector {
            j,
            entries: self.entries.iter().map(|a| a - base).collect(),
        }
    }
}

impl Nodes for AlphaVector {
    fn nodes(&self) -> &[BigRational] {
        &self.entries
    }
}

/// `β_s^{(j)} = α_s − α_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaVector {
    j: usize,
    entries: Vec<BigRational>,
}

impl BetaVector {
    pub fn shift_index(&self) -> usize {
        self.j
    }
}

impl Nodes for BetaVector {
    fn nodes(&self) -> &[BigRational] {
        &self.entries
    }
}

/// Multiplicities `ℓ_s` of the nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentVector {
    entries: Vec<usize>,
    base: Option<(usize, usize)>,
}

impl ExponentVector {
    /// `ℓ̄^{(u)}`: `ℓ − 1` at index `u`, `ℓ` elsewhere, `k + 1` entries.
    pub fn row(k: usize, ell: usize, u: usize) -> Result<Self> {
        if ell < 2 {
            return Err(Error::InputDomain(format!(
                "ell = {ell} must be at least 2"
            )));
        }
        if u > k {
            return Err(Error::InputDomain(format!(
                "row index u = {u} exceeds k = {k}"
            )));
        }
        let entries = (0..=k)
            .map(|s| if s == u { ell - 1 } else { ell })
            .collect();
        Ok(Self {
            entries,
            base: Some((ell, u)),
        })
    }

    /// An arbitrary vector of positive multiplicities.
    pub fn custom(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() || entries.contains(&0) {
            return Err(Error::InputDomain(
                "exponent vector entries must be positive".into(),
            ));
        }
        Ok(Self {
            entries,
            base: None,
        })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// `L = Σ ℓ_s`.
    pub fn total(&self) -> usize {
        self.entries.iter().sum()
    }

    /// `(ℓ, u)` when built by [`ExponentVector::row`].
    pub fn base(&self) -> Option<(usize, usize)> {
        self.base
    }
}

/// Position of the node equal to zero.
pub fn zero_index(nodes: &[BigRational]) -> Option<usize> {
    nodes.iter().position(|a| a.is_zero())
}

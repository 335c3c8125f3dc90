use serde::{Deserialize, Serialize};

use super::approx::ApproximationSystem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionStrings {
    pub numerator: String,
    pub denominator: String,
}

/// Serialized form of an [`ApproximationSystem`]. Polynomials list coefficients
/// from the constant term upward; `values_at_one` is the determinant matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDocument {
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    #[serde(rename = "L")]
    pub big_l: usize,
    pub norm_factor: FractionStrings,
    pub polys: Vec<Vec<Vec<String>>>,
    pub values_at_one: Vec<Vec<String>>,
    pub determinant: String,
}

impl SystemDocument {
    pub fn from_system(sys: &ApproximationSystem) -> Self {
        let values = sys.values_at_one();
        let determinant = super::bareiss_determinant(values.clone()).to_string();
        Self {
            n: sys.n(),
            k: sys.k(),
            ell: sys.ell(),
            big_l: sys.big_l(),
            norm_factor: FractionStrings {
                numerator: sys.norm_factor().numer().to_string(),
                denominator: sys.norm_factor().denom().to_string(),
            },
            polys: sys
                .polys()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|p| p.coeffs().iter().map(|c| c.to_string()).collect())
                        .collect()
                })
                .collect(),
            values_at_one: values
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect())
                .collect(),
            determinant,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pade::normalize_system;

    #[test]
    fn round_trip() {
        let doc = normalize_system(2, 2, 2).unwrap().to_document();
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.contains("\"L\":5"));
        let back: SystemDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(doc.values_at_one.len(), 3);
        assert_ne!(doc.determinant, "0");
    }
}

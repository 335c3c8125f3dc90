use serde::{Deserialize, Serialize};

use crate::exact::Ball;

#[derive(Clone, Debug, PartialEq)]
pub struct CertificateRecord {
    pub n: usize,
    pub k: usize,
    pub h: u64,
    pub min_value: Ball,
    /// `(λ_0, λ_1, …, λ_k)`, highest nonzero entry positive.
    pub argmin: Vec<i64>,
    /// `−log(min) / log H`, only for `H ≥ 3`.
    pub empirical_omega: Option<f64>,
    pub theorem_omega: Option<f64>,
    pub hypothesis_satisfied: bool,
    /// `min > H^{−ω}`; set by the theorem check only.
    pub verdict: Option<bool>,
    pub tuples_scanned: u64,
    pub lambda0_bounded: bool,
    pub wall_time_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinValueDocument {
    pub midpoint_decimal: String,
    pub radius_decimal: String,
    pub precision_bits: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "H")]
    pub h: u64,
    pub min_value: MinValueDocument,
    pub argmin: Vec<i64>,
    pub empirical_omega: Option<f64>,
    pub theorem_omega: Option<f64>,
    pub hypothesis_satisfied: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verdict: Option<bool>,
    pub tuples_scanned: u64,
    #[serde(default)]
    pub lambda0_bounded: bool,
    pub wall_time_ms: u64,
}

impl CertificateRecord {
    pub fn precision_bits(&self) -> u64 {
        self.min_value.precision_bits()
    }

    pub fn to_document(&self) -> CertificateDocument {
        CertificateDocument {
            n: self.n,
            k: self.k,
            h: self.h,
            min_value: MinValueDocument {
                midpoint_decimal: self.min_value.mid_decimal(30),
                radius_decimal: self.min_value.rad_decimal(),
                precision_bits: self.min_value.precision_bits(),
            },
            argmin: self.argmin.clone(),
            empirical_omega: self.empirical_omega,
            theorem_omega: self.theorem_omega,
            hypothesis_satisfied: self.hypothesis_satisfied,
            verdict: self.verdict,
            tuples_scanned: self.tuples_scanned,
            lambda0_bounded: self.lambda0_bounded,
            wall_time_ms: self.wall_time_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("certificate serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let rec = crate::certify::min_linear_form(2, 2, 1, 128).unwrap();
        let json = rec.to_json();
        let doc: CertificateDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(doc, rec.to_document());
        assert!(json.contains("\"H\":1"));
        assert!(doc.min_value.midpoint_decimal.starts_with("6.9560"));
    }
}

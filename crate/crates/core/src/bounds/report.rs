use serde::Serialize;

/// One evaluated quantity, for tabular or JSON output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: Option<usize>,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<f64>,
    #[serde(rename = "logH", skip_serializing_if = "Option::is_none")]
    pub log_h: Option<f64>,
    #[serde(rename = "loglogH", skip_serializing_if = "Option::is_none")]
    pub loglog_h: Option<f64>,
    pub quantity: String,
    /// Log scale where the quantity is a bound on a huge or tiny number.
    pub value: f64,
    pub log_scale: bool,
    pub hypothesis_satisfied: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paper_constant: Option<f64>,
}

impl BoundReport {
    pub fn new(k: usize, quantity: impl Into<String>, value: f64) -> Self {
        Self {
            n: None,
            k,
            ell: None,
            log_h: None,
            loglog_h: None,
            quantity: quantity.into(),
            value,
            log_scale: false,
            hypothesis_satisfied: None,
            paper_constant: None,
        }
    }

    pub fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn ell(mut self, ell: f64) -> Self {
        self.ell = Some(ell);
        self
    }

    pub fn log_h(mut self, log_h: f64) -> Self {
        self.log_h = Some(log_h);
        self
    }

    pub fn loglog_h(mut self, loglog_h: f64) -> Self {
        self.loglog_h = Some(loglog_h);
        self
    }

    pub fn log_scale(mut self) -> Self {
        self.log_scale = true;
        self
    }

    pub fn hypothesis(mut self, satisfied: bool) -> Self {
        self.hypothesis_satisfied = Some(satisfied);
        self
    }

    pub fn paper_constant(mut self, c: f64) -> Self {
        self.paper_constant = Some(c);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serializes_optional_fields() {
        let r = BoundReport::new(2, "omega", 2.0092)
            .n(2)
            .loglog_h(1000.0)
            .hypothesis(false);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["quantity"], "omega");
        assert_eq!(v["loglogH"], 1000.0);
        assert!(v.get("ell").is_none());
        assert_eq!(v["hypothesis_satisfied"], false);
    }
}

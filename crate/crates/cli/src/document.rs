use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// The JSON document every successful command prints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: Value,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub toolkit: String,
    pub version: String,
    /// Identifiers of the formulas and procedures that produced `results`.
    pub formulas: Vec<String>,
    /// Whether any `*_approx` floating-point fields were added.
    pub approximate_fields: bool,
}

impl ResultDocument {
    pub fn new(command: &str, formulas: &[&str]) -> Self {
        ResultDocument {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: Value::Null,
            provenance: Provenance {
                toolkit: "psc-moduli".to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                formulas: formulas.iter().map(|s| s.to_string()).collect(),
                approximate_fields: false,
            },
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_round_trip() {
        let mut doc = ResultDocument::new("rho", &["rho-lens-cyclotomic-sum"])
            .input("order", 2)
            .input("q", 1);
        doc.results = json!({ "values": [{ "s": 1, "value": "1/4" }] });
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let back: ResultDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
    }
}

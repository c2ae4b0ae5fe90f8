use std::collections::BTreeMap;

use lambdag_core::Rational;
use serde::{Deserialize, Serialize};

/// One computed value and the method that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodValue {
    pub method: String,
    pub value: Rational,
}

/// Serialized result of one command invocation (or one `verify` row).
///
/// Rationals serialize as `"p/q"` strings, so the JSON form is lossless.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Vec<MethodValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        OutputRecord {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: Vec::new(),
            agree: None,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn result(mut self, method: &str, value: Rational) -> Self {
        self.results.push(MethodValue {
            method: method.to_string(),
            value,
        });
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_schema_and_round_trip() {
        let rec = OutputRecord::new("lambda2")
            .input("k", "2")
            .result("pixton-eq5", Rational::new(7, 5760));
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(
            json,
            r#"{"command":"lambda2","inputs":{"k":"2"},"results":[{"method":"pixton-eq5","value":"7/5760"}]}"#
        );
        assert_eq!(serde_json::from_str::<OutputRecord>(&json).unwrap(), rec);

        let mut with_agree = rec.clone();
        with_agree.agree = Some(true);
        let json = serde_json::to_string(&with_agree).unwrap();
        assert!(json.ends_with(r#","agree":true}"#));
        assert_eq!(
            serde_json::from_str::<OutputRecord>(&json).unwrap(),
            with_agree
        );
    }
}

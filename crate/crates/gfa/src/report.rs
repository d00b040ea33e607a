//! Report envelope shared by every CLI subcommand: a stable JSON shape
//! with the command result, juxtapositions of computed values against
//! printed claims, and warnings. Output is deterministic: objects are
//! built through `serde_json::Value`, whose maps keep keys sorted.

use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone)]
pub struct Comparison {
    pub label: String,
    pub computed: Value,
    pub paper_value: Value,
    /// `None` marks a disputed claim: reported, never adjudicated.
    pub agrees: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub result: Value,
    pub comparisons: Vec<Comparison>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str, result: Value) -> Self {
        Report {
            command: command.to_string(),
            result,
            comparisons: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn compare(
        &mut self,
        label: &str,
        computed: Value,
        paper_value: Value,
        agrees: Option<bool>,
    ) {
        if agrees.is_none() {
            self.warnings.push(format!(
                "comparison {label:?} juxtaposes a disputed claim; agrees is left null"
            ));
        }
        self.comparisons.push(Comparison {
            label: label.to_string(),
            computed,
            paper_value,
            agrees,
        });
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    pub fn to_value(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "result": self.result,
            "comparisons": self
                .comparisons
                .iter()
                .map(|c| json!({
                    "label": c.label,
                    "computed": c.computed,
                    "paper_value": c.paper_value,
                    "agrees": c.agrees,
                }))
                .collect::<Vec<_>>(),
            "warnings": self.warnings,
        })
    }

    pub fn render(&self, pretty: bool) -> String {
        let v = self.to_value();
        if pretty {
            serde_json::to_string_pretty(&v).expect("report serializes")
        } else {
            serde_json::to_string(&v).expect("report serializes")
        }
    }
}

/// Relative agreement at tolerance `tol` for comparison records.
pub fn agrees_rel(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_and_stable() {
        let mut r = Report::new("demo", json!({"zeta": 1, "alpha": 2}));
        r.compare("x", json!(1.0), json!(2.0), Some(false));
        let a = r.render(false);
        let b = r.render(false);
        assert_eq!(a, b);
        // serde_json maps sort keys: "alpha" precedes "zeta"
        assert!(a.find("alpha").unwrap() < a.find("zeta").unwrap());
        assert!(a.starts_with('{'));
    }

    #[test]
    fn null_agrees_adds_warning() {
        let mut r = Report::new("demo", json!({}));
        r.compare("claim", json!(0.75), json!(1.575), None);
        assert_eq!(r.warnings.len(), 1);
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::redei::SymbolValue;

/// One evaluated symbol, as printed by `redei`, `cubic` and `scan --out json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub n: u32,
    pub exponent: u32,
    pub rendered: String,
    pub triple: Vec<String>,
    /// The oracle path ran and agreed.
    pub verified: bool,
    pub fallbacks: Vec<String>,
    /// For n = 3: the exponent under the cohomological sign convention.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cohomological_exponent: Option<u32>,
}

impl ResultRecord {
    pub fn new(value: SymbolValue, triple: Vec<String>, verified: bool, fallbacks: Vec<String>) -> Self {
        ResultRecord {
            n: value.n,
            exponent: value.exponent,
            rendered: value.render(),
            triple,
            verified,
            fallbacks,
            cohomological_exponent: None,
        }
    }

    pub fn value(&self) -> SymbolValue {
        SymbolValue::new(self.exponent as i64, self.n)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{}", self.triple.join(","), self.exponent, self.rendered, self.verified)
    }
}

impl fmt::Display for ResultRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] = {}", self.triple.join(", "), self.rendered)?;
        if let Some(c) = self.cohomological_exponent {
            write!(f, " (cohomological: {})", SymbolValue::new(c as i64, self.n))?;
        }
        write!(f, "{}", if self.verified { ", oracle agrees" } else { "" })?;
        for note in &self.fallbacks {
            write!(f, "\n  note: {note}")?;
        }
        Ok(())
    }
}

pub const CSV_HEADER: &str = "p1,p2,p3,exponent,symbol,verified";

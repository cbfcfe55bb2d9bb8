//! Report records and serialization.
//!
//! A report is reproducible byte-for-byte from (command, config, seed):
//! timings are only included when explicitly requested, and every random
//! draw inside the engine is derived from the master seed and the row name.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub primes: [u64; 2],
    pub stability_window: usize,
    pub holdout: usize,
    pub max_samples: usize,
    pub certify_rational: bool,
    pub output_format: String,
}

impl RunConfig {
    pub fn engine(&self) -> eulersym::aut::EngineCfg {
        eulersym::aut::EngineCfg {
            seed: self.seed,
            primes: self.primes,
            stability_window: self.stability_window,
            holdout: self.holdout,
            max_samples: self.max_samples,
            certify_rational: self.certify_rational,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Item {
    pub name: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub dims: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expected: Option<usize>,
    /// Where the expected value comes from, cited by content.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub anchor: Option<String>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_ms: Option<u128>,
}

impl Item {
    pub fn passed(&self) -> bool {
        self.verdict == "PASS"
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: Vec<String>,
    pub config: RunConfig,
    pub items: Vec<Item>,
}

impl Report {
    pub fn new(command: Vec<String>, config: RunConfig) -> Self {
        Report { schema: SCHEMA_VERSION, command, config, items: Vec::new() }
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(Item::passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,dims,expected,anchor,verdict,wall_ms\n");
        for item in &self.items {
            let dims = item.dims.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            let expected = item.expected.map(|e| e.to_string()).unwrap_or_default();
            let anchor = item.anchor.clone().unwrap_or_default().replace(',', ";");
            let wall = item.wall_ms.map(|w| w.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                item.name, dims, expected, anchor, item.verdict, wall
            ));
        }
        out
    }

    pub fn render(&self) -> String {
        if self.config.output_format == "csv" {
            self.to_csv()
        } else {
            self.to_json()
        }
    }
}

/// Build a PASS/FAIL row from a computed value and an optional expectation.
pub fn verdict_row(
    name: &str,
    dims: Vec<usize>,
    expected: Option<usize>,
    anchor: Option<&str>,
) -> Item {
    let verdict = match expected {
        Some(e) => {
            if dims.last() == Some(&e) {
                "PASS"
            } else {
                "FAIL"
            }
        }
        None => "PASS",
    };
    Item {
        name: name.into(),
        dims,
        expected,
        anchor: anchor.map(String::from),
        verdict: verdict.into(),
        detail: None,
        wall_ms: None,
    }
}

pub fn error_row(name: &str, err: &eulersym::Error) -> Item {
    Item {
        name: name.into(),
        dims: Vec::new(),
        expected: None,
        anchor: None,
        verdict: format!("ERROR: {err}"),
        detail: None,
        wall_ms: None,
    }
}

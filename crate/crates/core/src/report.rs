//! Serializable reports and the fixed CSV layout.

use serde::Serialize;

use crate::checks::CheckReport;
use crate::distance::Distance;
use crate::graph::{BalancedWitness, Verdict};
use crate::group::Group;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub x: u32,
    pub y: u32,
    pub x_cycles: String,
    pub y_cycles: String,
    pub distances: [Distance; 5],
}

impl WitnessReport {
    pub fn new(group: &Group, w: &BalancedWitness) -> Self {
        Self {
            x: w.x,
            y: w.y,
            x_cycles: group.element(w.x).to_string(),
            y_cycles: group.element(w.y).to_string(),
            distances: w.distances,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphReport {
    pub group: String,
    pub order: usize,
    pub classes: usize,
    pub components: usize,
    pub diameter: Distance,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    /// Degenerate pairs skipped by the balanced search; absent when the
    /// search was not needed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degenerate_pairs: Option<u64>,
    pub millis: u64,
}

pub const CSV_HEADER: &str =
    "name,order,classes,components,diameter,verdict,witness_x,witness_y,millis";

impl GraphReport {
    pub fn verdict_of(group: &Group, verdict: &Verdict) -> (String, Option<WitnessReport>) {
        (
            verdict.label().to_string(),
            verdict.witness().map(|w| WitnessReport::new(group, w)),
        )
    }

    pub fn csv_row(&self) -> String {
        let (wx, wy) = match &self.witness {
            Some(w) => (w.x.to_string(), w.y.to_string()),
            None => (String::new(), String::new()),
        };
        format!(
            "{},{},{},{},{},{},{},{},{}",
            csv_field(&self.group),
            self.order,
            self.classes,
            self.components,
            self.diameter,
            self.verdict,
            wx,
            wy,
            self.millis
        )
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiameterReport {
    pub group: String,
    pub order: usize,
    pub components: usize,
    pub diameter: Distance,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalancedReport {
    pub group: String,
    pub order: usize,
    pub balanced: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    pub degenerate_pairs: u64,
    pub millis: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UhypReport {
    pub seed: u64,
    pub samples: u64,
    pub bound: i64,
    pub passed: bool,
    pub reports: Vec<CheckReport>,
}

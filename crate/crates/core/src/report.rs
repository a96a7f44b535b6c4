//! Machine-readable run reports.
//!
//! Reports are JSON. Floats are written in shortest round-trip form, so a
//! report parsed back compares equal to the one written.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::periodic::{PeriodicClassReport, PeriodicCount};
use crate::ti::{CriticalTheta, TISolution};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamsEcho {
    pub q: usize,
    pub k: usize,
    pub theta: Option<f64>,
    /// Every other input and every default the run filled in.
    pub settings: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountCheck {
    pub name: String,
    pub found: usize,
    pub predicted: Option<usize>,
    pub matches: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub label: String,
    pub depth: usize,
    pub violation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub theta: f64,
    /// Distinct translation-invariant solution vectors.
    pub ti_count: Option<usize>,
    /// Solutions on `I_1` of the period-two system (antiferromagnetic rows only).
    pub periodic_m1: Option<usize>,
    /// Period-two total over all classes, where the counting regime applies.
    pub periodic_total: Option<usize>,
}

/// A change in one count column between neighbouring grid points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Transition {
    pub column: String,
    pub from: usize,
    pub to: usize,
    pub theta_lo: f64,
    pub theta_hi: f64,
    /// Closest closed-form threshold, if one is known for this column.
    pub reference: Option<f64>,
    /// Whether the bracket midpoint lies within one grid step of `reference`.
    pub within_one_step: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub step: f64,
    pub rows: Vec<SweepRow>,
    pub transitions: Vec<Transition>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub params: ParamsEcho,
    pub critical: Vec<CriticalTheta>,
    pub ti_solutions: Vec<TISolution>,
    pub periodic_classes: Vec<PeriodicClassReport>,
    pub periodic_count: Option<PeriodicCount>,
    pub counts: Vec<CountCheck>,
    pub oracle: Vec<OracleCheck>,
    pub sweep: Option<SweepTable>,
    pub warnings: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, q: usize, k: usize, theta: Option<f64>) -> Self {
        RunReport {
            command: command.to_string(),
            params: ParamsEcho {
                q,
                k,
                theta,
                settings: BTreeMap::new(),
            },
            critical: Vec::new(),
            ti_solutions: Vec::new(),
            periodic_classes: Vec::new(),
            periodic_count: None,
            counts: Vec::new(),
            oracle: Vec::new(),
            sweep: None,
            warnings: Vec::new(),
        }
    }

    pub fn setting(&mut self, key: &str, value: impl ToString) {
        self.params
            .settings
            .insert(key.to_string(), value.to_string());
    }

    /// False if any count disagrees with its prediction, any oracle check
    /// failed, or a sweep transition misses its threshold.
    pub fn all_checks_pass(&self) -> bool {
        let sweep_ok = self.sweep.as_ref().is_none_or(|s| {
            s.transitions
                .iter()
                .all(|t| t.within_one_step != Some(false))
        });
        self.counts.iter().all(|c| c.matches != Some(false))
            && self.oracle.iter().all(|o| o.passed)
            && sweep_ok
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are serializable")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

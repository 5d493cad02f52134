//! Shared report type for sampled axiom checks.

use serde::Serialize;
use std::fmt;

/// Outcome of one axiom over a sample set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomOutcome {
    pub name: String,
    pub passed: bool,
    /// Largest observed violation magnitude (0 when the axiom held everywhere).
    pub worst_deviation: f64,
    /// Human-readable description of the sample that produced `worst_deviation`.
    pub witness: Option<String>,
    pub samples: usize,
}

impl AxiomOutcome {
    pub(crate) fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            passed: true,
            worst_deviation: 0.0,
            witness: None,
            samples: 0,
        }
    }

    /// Records one sample. `deviation` is how far the sample is from satisfying
    /// the axiom; anything above `tol` is a failure.
    pub(crate) fn record(&mut self, deviation: f64, tol: f64, witness: impl FnOnce() -> String) {
        self.samples += 1;
        let deviation = if deviation.is_nan() { f64::INFINITY } else { deviation };
        if deviation > tol {
            self.passed = false;
        }
        if deviation > self.worst_deviation {
            self.worst_deviation = deviation;
            self.witness = Some(witness());
        }
    }
}

/// Per-axiom pass/fail table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub outcomes: Vec<AxiomOutcome>,
    /// True when the samples were evaluated in exact rational arithmetic.
    pub exact: bool,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            write!(
                f,
                "{:<28} {:<4} worst={:.3e} samples={}",
                o.name,
                if o.passed { "ok" } else { "FAIL" },
                o.worst_deviation,
                o.samples
            )?;
            if let Some(w) = &o.witness {
                write!(f, " witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

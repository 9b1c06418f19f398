use std::fmt;

use almost_ortho_core::Family;
use serde::{Serialize, Serializer};

use crate::error::HarnessError;

/// Which construction each trial measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Shifted zeros only.
    Weak,
    /// Shifted zeros completed to a quasi-orthogonal polynomial.
    Quasi,
    Both,
}

impl Mode {
    pub fn runs_weak(self) -> bool {
        matches!(self, Mode::Weak | Mode::Both)
    }

    pub fn runs_quasi(self) -> bool {
        matches!(self, Mode::Quasi | Mode::Both)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Weak => "weak",
            Mode::Quasi => "quasi",
            Mode::Both => "both",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

fn family_name<S: Serializer>(family: &Family, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(family.name())
}

/// One experiment: `trials` random shift patterns per epsilon.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    #[serde(serialize_with = "family_name")]
    pub family: Family,
    pub n: usize,
    pub s: usize,
    pub epsilons: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub mode: Mode,
    pub output: OutputFormat,
    /// 0-based zeros to shift; the `s` smallest when absent.
    pub shift_indices: Option<Vec<usize>>,
    /// Use zero shifts regardless of the draws, as a sanity baseline.
    pub zero_deltas: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            family: Family::Legendre,
            n: 4,
            s: 2,
            epsilons: vec![1e-2, 1e-3, 1e-4, 1e-5],
            trials: 20,
            seed: 1,
            mode: Mode::Both,
            output: OutputFormat::Text,
            shift_indices: None,
            zero_deltas: false,
        }
    }
}

/// Largest degree the harness accepts.
pub const MAX_N: usize = 32;

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |msg: String| Err(HarnessError::Config(msg));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.n < 2 || self.n > MAX_N {
            return bad(format!("n must be in 2..={MAX_N}, got {}", self.n));
        }
        if self.s == 0 || self.s >= self.n {
            return bad(format!("s must be in 1..n, got s = {} with n = {}", self.s, self.n));
        }
        if self.epsilons.is_empty() {
            return bad("at least one epsilon is required".into());
        }
        if let Some(e) = self.epsilons.iter().find(|e| !(**e > 0.0 && **e < 1.0)) {
            return bad(format!("epsilon {e} is outside (0, 1)"));
        }
        if let Some(idx) = &self.shift_indices {
            if idx.len() != self.s {
                return bad(format!("{} shift indices given for s = {}", idx.len(), self.s));
            }
            for (a, i) in idx.iter().enumerate() {
                if *i >= self.n || idx[..a].contains(i) {
                    return bad(format!("shift indices must be distinct and below n = {}", self.n));
                }
            }
        }
        Ok(())
    }

    /// Zero positions that get shifted.
    pub fn indices(&self) -> Vec<usize> {
        self.shift_indices.clone().unwrap_or_else(|| (0..self.s).collect())
    }
}

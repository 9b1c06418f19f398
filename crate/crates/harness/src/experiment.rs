use almost_ortho_core::almost::{almost_profile, build_qn};
use almost_ortho_core::poly::{sorted_pair_distance, zeros_orthogonal};
use almost_ortho_core::quasi::{quasi_direct, quasi_profile};
use almost_ortho_core::{MomentFunctional, Perturbation, ZeroSet};
use serde::Serialize;

use crate::config::{ExperimentConfig, Mode};
use crate::error::HarnessError;
use crate::rng::{draw_deltas, trial_rng};

/// Raw measurements of one trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trial {
    pub index: usize,
    pub deltas: Vec<f64>,
    /// Largest distance between the zeros of `P_n` and of the candidate,
    /// matched in sorted order.
    pub zero_distance: f64,
    /// Weak: `max_{j<n} |f_j|`. Quasi: max over the band `n-s..n-1`; the
    /// lower inner products vanish by construction.
    pub inner_product: f64,
    /// `L[P~_j candidate]` for `j = 0..=n`.
    pub profile: Vec<f64>,
}

/// All trials of one mode at one epsilon.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub mode: Mode,
    pub epsilon: f64,
    pub max_zero_distance: f64,
    pub mean_zero_distance: f64,
    pub max_inner_product: f64,
    pub mean_inner_product: f64,
    pub trials: Vec<Trial>,
}

impl TrialReport {
    fn new(mode: Mode, epsilon: f64, trials: Vec<Trial>) -> Self {
        let count = trials.len() as f64;
        let fold = |f: fn(&Trial) -> f64| {
            let max = trials.iter().map(f).fold(0.0, f64::max);
            let mean = trials.iter().map(f).sum::<f64>() / count;
            (max, mean)
        };
        let (max_zero_distance, mean_zero_distance) = fold(|t| t.zero_distance);
        let (max_inner_product, mean_inner_product) = fold(|t| t.inner_product);
        TrialReport {
            mode,
            epsilon,
            max_zero_distance,
            mean_zero_distance,
            max_inner_product,
            mean_inner_product,
            trials,
        }
    }
}

struct Context<'a> {
    config: &'a ExperimentConfig,
    functional: MomentFunctional,
    zeros: ZeroSet,
    indices: Vec<usize>,
}

impl Context<'_> {
    fn weak(&self, eps: f64, index: usize, deltas: Vec<f64>) -> almost_ortho_core::Result<Trial> {
        let n = self.config.n;
        let pert = Perturbation::with_indices(n, self.indices.clone(), deltas.clone(), eps)?;
        let qn = build_qn(self.functional.coeffs(), &self.zeros, &pert)?;
        let profile = almost_profile(&self.functional, &qn, n)?;
        Ok(Trial {
            index,
            zero_distance: sorted_pair_distance(&pert.shifted_zeros(&self.zeros), self.zeros.zeros()),
            inner_product: profile.max_defect(),
            profile: profile.f,
            deltas,
        })
    }

    fn quasi(&self, eps: f64, index: usize, deltas: Vec<f64>) -> almost_ortho_core::Result<Trial> {
        let (n, s) = (self.config.n, self.config.s);
        let pert = Perturbation::with_indices(n, self.indices.clone(), deltas.clone(), eps)?;
        let gammas = pert.gammas(&self.zeros);
        let q = quasi_direct(&self.functional, &gammas, n)?;
        let g = quasi_profile(&self.functional, &q)?;
        Ok(Trial {
            index,
            zero_distance: sorted_pair_distance(&q.all_zeros, self.zeros.zeros()),
            inner_product: g[n - s..n].iter().fold(0.0, |m, v| m.max(v.abs())),
            profile: g,
            deltas,
        })
    }
}

/// Runs every trial of `config`, weak reports first, then quasi, each in
/// the order of `config.epsilons`. Both modes see the same shifts.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<TrialReport>, HarnessError> {
    config.validate()?;
    let n = config.n;
    let functional = MomentFunctional::new(config.family, n + 1).map_err(|e| HarnessError::Config(e.to_string()))?;
    let zeros = zeros_orthogonal(functional.coeffs(), n).map_err(|e| HarnessError::Numeric {
        mode: config.mode,
        epsilon: 0.0,
        trial: 0,
        source: e,
    })?;
    let ctx = Context {
        config,
        functional,
        zeros,
        indices: config.indices(),
    };

    let draws: Vec<Vec<Vec<f64>>> = config
        .epsilons
        .iter()
        .enumerate()
        .map(|(e, eps)| {
            (0..config.trials)
                .map(|t| {
                    if config.zero_deltas {
                        vec![0.0; config.s]
                    } else {
                        draw_deltas(&mut trial_rng(config.seed, e, t), config.s, *eps)
                    }
                })
                .collect()
        })
        .collect();

    let mut reports = Vec::new();
    for mode in [Mode::Weak, Mode::Quasi] {
        let wanted = match mode {
            Mode::Weak => config.mode.runs_weak(),
            _ => config.mode.runs_quasi(),
        };
        if !wanted {
            continue;
        }
        for (eps, trial_draws) in config.epsilons.iter().zip(&draws) {
            let trials = trial_draws
                .iter()
                .enumerate()
                .map(|(t, deltas)| {
                    let run = match mode {
                        Mode::Weak => ctx.weak(*eps, t, deltas.clone()),
                        _ => ctx.quasi(*eps, t, deltas.clone()),
                    };
                    run.map_err(|source| HarnessError::Numeric {
                        mode,
                        epsilon: *eps,
                        trial: t,
                        source,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            reports.push(TrialReport::new(mode, *eps, trials));
        }
    }
    Ok(reports)
}

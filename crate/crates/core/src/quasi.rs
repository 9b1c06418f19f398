//! Quasi almost orthogonal polynomials: keep `s` shifted zeros
//! `gamma_1..gamma_s` fixed and choose the remaining `n - s` zeros so that
//! the result is orthogonal to every `P~_j` with `j < n - s`.
//!
//! Two constructions are provided. [`quasi_direct`] solves one linear
//! system for the monic tail factor `V_{n-s}` and is exact. The mu-route
//! ([`correction_system`] followed by [`quasi_corrected`]) adds a
//! combination of `P~_i` to `Q_n` and agrees with the direct route to
//! second order in the shifts.

use alloc::format;
use alloc::vec::Vec;

use crate::almost::{first_order_profile, AlmostProfile, Perturbation, TauTable};
use crate::error::{Error, Result};
use crate::families::RecurrenceCoeffs;
use crate::functional::MomentFunctional;
use crate::linalg::{self, condition_1, Lu, Matrix};
use crate::math::abs;
use crate::poly::{real_zeros, zeros_orthogonal, Polynomial, RootFactoredPolynomial, ZeroSet};

/// Condition-number ceiling for every dense solve in this module.
pub const MAX_CONDITION: f64 = 1e12;

/// Tolerance on the exactly-zero part of the quasi-orthogonality pattern.
pub const PATTERN_TOL: f64 = 1e-10;

/// `P_n^(eps) = sigma_n prod_{k<=s} (x - gamma_k) V_{n-s}(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiPolynomial {
    /// Degree.
    pub n: usize,
    /// Number of prescribed zeros.
    pub s: usize,
    /// Prescribed zeros, in the order given.
    pub gammas: Vec<f64>,
    /// `v_0..v_{n-s-1}` of the monic tail `V_{n-s} = x^{n-s} + sum v_i x^i`.
    pub tail_coeffs: Vec<f64>,
    /// Zeros of the tail, one per unshifted zero of `P_n`, ascending.
    pub tail_zeros: Vec<f64>,
    /// Expanded polynomial.
    pub full: Polynomial,
    /// All `n` zeros, ascending.
    pub all_zeros: Vec<f64>,
}

impl QuasiPolynomial {
    /// Monic tail factor `V_{n-s}`.
    pub fn tail(&self) -> Polynomial {
        let mut c = self.tail_coeffs.clone();
        c.push(1.0);
        Polynomial::new(c)
    }
}

/// Pairs each gamma with the nearest unused entry of `zeros`. Returns the
/// anchor index of every gamma and the indices left over, ascending.
fn match_zeros(zeros: &[f64], gammas: &[f64]) -> (Vec<usize>, Vec<usize>) {
    let mut used = alloc::vec![false; zeros.len()];
    let mut anchors = Vec::with_capacity(gammas.len());
    for g in gammas {
        let best = (0..zeros.len())
            .filter(|k| !used[*k])
            .min_by(|a, b| abs(zeros[*a] - g).total_cmp(&abs(zeros[*b] - g)))
            .expect("fewer gammas than zeros");
        used[best] = true;
        anchors.push(best);
    }
    (anchors, (0..zeros.len()).filter(|k| !used[*k]).collect())
}

fn check_shape(coeffs: &RecurrenceCoeffs, s: usize, n: usize) -> Result<()> {
    if s == 0 || s >= n {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= s <= n - 1, got n = {n}, s = {s}"
        )));
    }
    if n > coeffs.max_degree() {
        return Err(Error::DegreeOutOfRange {
            requested: n,
            available: coeffs.max_degree(),
        });
    }
    Ok(())
}

/// Builds `P_n^(eps)` with prescribed zeros `gammas`: leading coefficient
/// `sigma_n`, orthogonal to every `P~_j` with `j < n - s`.
///
/// Such a polynomial is `P~_n + sum_{i=n-s}^{n-1} c_i P~_i`, so the
/// orthogonality conditions hold by construction and the `s` zero
/// conditions `P_n^(eps)(gamma_k) = 0` determine `c`. The monic tail
/// `V_{n-s}` follows by synthetic division and its zeros are
/// Newton-refined from the zeros of `P_n` not paired with a gamma.
/// [`quasi_gram`] solves the same problem through the Gram system in the
/// tail coefficients instead.
pub fn quasi_direct(functional: &MomentFunctional, gammas: &[f64], n: usize) -> Result<QuasiPolynomial> {
    let coeffs = functional.coeffs();
    let s = gammas.len();
    check_gammas(coeffs, gammas, n)?;
    let zeros = zeros_orthogonal(coeffs, n)?;
    let (anchors, _) = match_zeros(zeros.zeros(), gammas);
    let values = gammas
        .iter()
        .map(|g| coeffs.orthonormal_values(*g, n))
        .collect::<Result<Vec<_>>>()?;
    let a = Matrix::from_fn(s, |k, c| values[k][n - s + c]);
    // The computed zeros are taken as exact zeros of P_n, so the value at
    // gamma is measured from its anchor; an unshifted gamma gives exactly 0.
    let rhs = anchors
        .iter()
        .zip(&values)
        .map(|(k, v)| Ok(-(v[n] - coeffs.orthonormal_values(zeros.zeros()[*k], n)?[n])))
        .collect::<Result<Vec<f64>>>()?;
    let sol = linalg::solve(&a, &rhs, MAX_CONDITION)?;
    let basis = coeffs.orthonormal_sequence(n)?;
    let full = basis[n - s..n]
        .iter()
        .zip(&sol.x)
        .fold(basis[n].clone(), |acc, (p, c)| &acc + &p.scale(*c));

    let mut tail = full.clone();
    for g in gammas {
        let tolerance = 1e-10 * tail.evaluation_scale(*g).max(tail.max_abs_coeff());
        let (q, rem) = tail.divide_linear(*g);
        if abs(rem) > tolerance {
            return Err(Error::DivisionResidual {
                root: *g,
                remainder: abs(rem),
                tolerance,
            });
        }
        tail = q;
    }
    let tail = tail.scale(1.0 / tail.leading());
    assemble(gammas, n, tail, full)
}

/// Builds `P_n^(eps)` from the Gram conditions
/// `L[P~_j prod (x - gamma_k) V] = 0`, `j < n - s`, solved for the tail
/// `V = P_{n-s} + sum_{i<n-s} c_i P~_i` (monic `P_{n-s}`). This is the
/// monomial system in `v_{n-s,i}` after a triangular change of variables.
///
/// The Gram matrix grows ill-conditioned with `n` (1e7 for Laguerre at
/// n = 8), so this route serves as a cross-check of [`quasi_direct`].
pub fn quasi_gram(functional: &MomentFunctional, gammas: &[f64], n: usize) -> Result<QuasiPolynomial> {
    let coeffs = functional.coeffs();
    let s = gammas.len();
    check_gammas(coeffs, gammas, n)?;
    let m = n - s;
    let fixed = RootFactoredPolynomial::new(1.0, gammas.to_vec());
    let rule = functional.rule(n)?;
    let at_nodes = rule
        .nodes()
        .iter()
        .map(|x| {
            let mut v = coeffs.orthonormal_values(*x, m)?;
            v[m] = coeffs.monic_values(*x, m)?[m];
            Ok((v, fixed.evaluate(*x)))
        })
        .collect::<Result<Vec<_>>>()?;
    let gram = |j: usize, i: usize| -> f64 {
        at_nodes
            .iter()
            .zip(rule.weights())
            .map(|((v, w), wt)| wt * v[j] * w * v[i])
            .sum()
    };
    let a = Matrix::from_fn(m, gram);
    let rhs: Vec<f64> = (0..m).map(|j| -gram(j, m)).collect();
    let sol = linalg::solve(&a, &rhs, MAX_CONDITION)?;
    let basis = coeffs.orthonormal_sequence(m)?;
    let tail = basis[..m]
        .iter()
        .zip(&sol.x)
        .fold(coeffs.monic(m)?, |acc, (p, c)| &acc + &p.scale(*c));
    let full = (&fixed.expand() * &tail).scale(coeffs.norm_factor(n)?);
    assemble(gammas, n, tail, full)
}

fn check_gammas(coeffs: &RecurrenceCoeffs, gammas: &[f64], n: usize) -> Result<()> {
    check_shape(coeffs, gammas.len(), n)?;
    let support = coeffs.family().support();
    if let Some(g) = gammas.iter().find(|g| !support.contains(**g)) {
        return Err(Error::InvalidArgument(format!("gamma {g} lies outside the support")));
    }
    Ok(())
}

fn assemble(gammas: &[f64], n: usize, tail: Polynomial, full: Polynomial) -> Result<QuasiPolynomial> {
    let s = gammas.len();
    // Newton seeded at the unshifted zeros can hop to a neighbour once the
    // tail zeros move by O(1), as they do for Laguerre at eps = 1e-2, so
    // every real zero of the tail is isolated instead.
    let tail_zeros = real_zeros(&tail);
    if tail_zeros.len() != n - s {
        return Err(Error::MissingRealZeros {
            found: tail_zeros.len(),
            expected: n - s,
        });
    }
    let mut all_zeros: Vec<f64> = gammas.iter().chain(&tail_zeros).copied().collect();
    all_zeros.sort_by(f64::total_cmp);
    let mut tail_coeffs = tail.coeffs().to_vec();
    tail_coeffs.truncate(n - s);
    Ok(QuasiPolynomial {
        n,
        s,
        gammas: gammas.to_vec(),
        tail_coeffs,
        tail_zeros,
        full,
        all_zeros,
    })
}

/// `g_j = L[P~_j p]` for `j = 0..=n`, with no pattern assertion.
pub fn inner_products(functional: &MomentFunctional, p: &Polynomial, n: usize) -> Result<Vec<f64>> {
    functional.orthonormal_projections(p, n)
}

/// `g_j = L[P~_j P_n^(eps)]`, verifying `|g_j| <= 1e-10` for `j < n - s`
/// and `g_n = 1 +- 1e-10`. The band `n-s..n-1` is returned unchecked.
pub fn quasi_profile(functional: &MomentFunctional, q: &QuasiPolynomial) -> Result<Vec<f64>> {
    let g = inner_products(functional, &q.full, q.n)?;
    for (j, v) in g[..q.n - q.s].iter().enumerate() {
        if !(abs(*v) <= PATTERN_TOL) {
            return Err(Error::PatternViolation {
                j,
                value: *v,
                expected: 0.0,
            });
        }
    }
    if !(abs(g[q.n] - 1.0) <= PATTERN_TOL) {
        return Err(Error::PatternViolation {
            j: q.n,
            value: g[q.n],
            expected: 1.0,
        });
    }
    Ok(g)
}

/// Where the correction route takes `omega_j` from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OmegaSource {
    /// `omega_j = f_j / eps` from the measured profile. The correction is
    /// then exact and reproduces [`quasi_direct`] up to rounding.
    Measured,
    /// `omega_j = -sum_k delta_k tau_{j,k} / eps`, the first-order
    /// prediction; leaves an `O(eps^2)` residue in the zero band.
    #[default]
    FirstOrder,
}

/// The `s x s` system `A mu = b'` for the correction coefficients.
#[derive(Debug, Clone)]
pub struct CorrectionSystem {
    /// `A[k][c] = P~_{n-s+c}(gamma_k)`.
    pub a: Matrix,
    /// `b'_k = sum_{j<n-s} omega_j P~_j(gamma_k)`.
    pub b: Vec<f64>,
    /// `mu_{n-s}..mu_{n-1}`.
    pub mu: Vec<f64>,
    /// `omega_0..omega_{n-s-1}` used in `b'`.
    pub omega: Vec<f64>,
    /// 1-norm condition number of `A`.
    pub condition: f64,
    /// `max |A mu - b'|`.
    pub residual: f64,
}

/// Assembles and solves `A_s mu = b'` at the shifted zeros of `pert`.
pub fn correction_system(
    functional: &MomentFunctional,
    zeros: &ZeroSet,
    pert: &Perturbation,
    profile: &AlmostProfile,
    tau: &TauTable,
    source: OmegaSource,
) -> Result<CorrectionSystem> {
    let coeffs = functional.coeffs();
    let (n, s) = (pert.n(), pert.s());
    check_shape(coeffs, s, n)?;
    if profile.n() != n || tau.n() != n || zeros.degree() != n {
        return Err(Error::InvalidArgument(
            "profile, tau table and perturbation disagree on n".into(),
        ));
    }
    let eps = pert.epsilon();
    let omega: Vec<f64> = match source {
        OmegaSource::Measured => profile.f[..n - s].iter().map(|f| f / eps).collect(),
        OmegaSource::FirstOrder => first_order_profile(pert, tau)[..n - s]
            .iter()
            .map(|f| f / eps)
            .collect(),
    };
    let gammas = pert.gammas(zeros);
    let values = gammas
        .iter()
        .map(|g| coeffs.orthonormal_values(*g, n - 1))
        .collect::<Result<Vec<_>>>()?;
    let a = Matrix::from_fn(s, |k, c| values[k][n - s + c]);
    let b: Vec<f64> = values
        .iter()
        .map(|v| omega.iter().zip(v).map(|(w, p)| w * p).sum())
        .collect();
    let sol = linalg::solve(&a, &b, MAX_CONDITION)?;
    Ok(CorrectionSystem {
        a,
        b,
        mu: sol.x,
        omega,
        condition: sol.condition,
        residual: sol.residual,
    })
}

/// `T_n = Q_n + eps (-sum_{i<n-s} omega_i P~_i + sum_{i>=n-s} mu_i P~_i)`,
/// with every real zero isolated and the ones nearest the shifted zeros
/// taken as `gammas`.
pub fn quasi_corrected(
    coeffs: &RecurrenceCoeffs,
    qn: &Polynomial,
    system: &CorrectionSystem,
    pert: &Perturbation,
    zeros: &ZeroSet,
) -> Result<QuasiPolynomial> {
    let (n, s) = (pert.n(), pert.s());
    check_shape(coeffs, s, n)?;
    let eps = pert.epsilon();
    let basis = coeffs.orthonormal_sequence(n - 1)?;
    let mut tn = qn.clone();
    for (i, w) in system.omega.iter().enumerate() {
        tn = &tn - &basis[i].scale(eps * w);
    }
    for (c, mu) in system.mu.iter().enumerate() {
        tn = &tn + &basis[n - s + c].scale(eps * mu);
    }

    // Zeros are isolated rather than Newton-refined from the zeros of Q_n,
    // for the same reason as in `assemble`.
    let refined = real_zeros(&tn);
    if refined.len() != n {
        return Err(Error::MissingRealZeros {
            found: refined.len(),
            expected: n,
        });
    }
    let (anchors, rest) = match_zeros(&refined, &pert.gammas(zeros));
    let gammas: Vec<f64> = anchors.iter().map(|k| refined[*k]).collect();
    let tail_zeros: Vec<f64> = rest.iter().map(|k| refined[*k]).collect();

    let sigma = coeffs.norm_factor(n)?;
    let mut tail = tn.scale(1.0 / sigma);
    for g in &gammas {
        tail = tail.divide_linear(*g).0;
    }
    let mut tail_coeffs = tail.coeffs().to_vec();
    tail_coeffs.truncate(n - s);
    Ok(QuasiPolynomial {
        n,
        s,
        gammas,
        tail_coeffs,
        tail_zeros,
        full: tn,
        all_zeros: refined,
    })
}

/// Leading principal minors of `A[i][j] = P_{n-1-i}(x_{n,j})`.
#[derive(Debug, Clone, PartialEq)]
pub struct MinorReport {
    /// Degree of `P_n`.
    pub n: usize,
    /// Determinants of the leading `k x k` blocks, `k = 1..=n`.
    pub determinants: Vec<f64>,
    /// Product of the block's row norms (Hadamard bound).
    pub scales: Vec<f64>,
    /// 1-norm condition numbers of the blocks (infinite when singular).
    pub conditions: Vec<f64>,
}

/// Relative threshold below which a leading minor counts as singular.
pub const MINOR_TOL: f64 = 1e-12;

impl MinorReport {
    /// Whether minor `k` (1-based block size) is nonsingular.
    pub fn is_nonsingular(&self, k: usize) -> bool {
        abs(self.determinants[k - 1]) > MINOR_TOL * self.scales[k - 1]
    }

    /// Every leading minor is nonsingular.
    pub fn all_nonsingular(&self) -> bool {
        (1..=self.n).all(|k| self.is_nonsingular(k))
    }
}

/// Builds the matrix of monic values `P_{n-1-i}` at the zeros of `P_n` and
/// reports every leading principal minor.
pub fn principal_minor_check(coeffs: &RecurrenceCoeffs, n: usize) -> Result<MinorReport> {
    let zeros = zeros_orthogonal(coeffs, n)?;
    let cols = zeros
        .zeros()
        .iter()
        .map(|x| coeffs.monic_values(*x, n - 1))
        .collect::<Result<Vec<_>>>()?;
    let full = Matrix::from_fn(n, |i, j| cols[j][n - 1 - i]);
    let mut determinants = Vec::with_capacity(n);
    let mut scales = Vec::with_capacity(n);
    let mut conditions = Vec::with_capacity(n);
    for k in 1..=n {
        let block = full.leading_block(k);
        scales.push((0..k).map(|i| block.row_norm(i)).product());
        match Lu::new(&block) {
            Ok(lu) => {
                determinants.push(lu.det());
                conditions.push(condition_1(&block, &lu));
            }
            Err(_) => {
                determinants.push(0.0);
                conditions.push(f64::INFINITY);
            }
        }
    }
    Ok(MinorReport {
        n,
        determinants,
        scales,
        conditions,
    })
}

/// A sequence `P_0^(eps)..=P_max^(eps)`: members of degree `m <= s` are the
/// orthonormal `P~_m`; every higher degree shifts its `s` smallest zeros by
/// the same `deltas` and is completed by [`quasi_direct`].
pub fn quasi_sequence(functional: &MomentFunctional, deltas: &[f64], max_degree: usize) -> Result<Vec<Polynomial>> {
    let coeffs = functional.coeffs();
    let s = deltas.len();
    (0..=max_degree)
        .map(|m| {
            if m <= s {
                coeffs.orthonormal(m)
            } else {
                let zeros = zeros_orthogonal(coeffs, m)?;
                let gammas: Vec<f64> = zeros.zeros()[..s].iter().zip(deltas).map(|(x, d)| x + d).collect();
                Ok(quasi_direct(functional, &gammas, m)?.full)
            }
        })
        .collect()
}

/// Expansion `x P_n^(eps) = sum_{k=0}^{n+1} d_k P_k^(eps)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandCheck {
    /// Degree expanded.
    pub n: usize,
    /// Quasi-orthogonality order.
    pub s: usize,
    /// `d_{n,0}..d_{n,n+1}`.
    pub d: Vec<f64>,
    /// Coefficientwise residual of the expansion.
    pub residual: f64,
}

impl BandCheck {
    /// `max_{k < n-s} |d_{n,k}|`; zero when the band covers every index.
    pub fn below_band(&self) -> f64 {
        self.d[..self.n.saturating_sub(self.s)]
            .iter()
            .fold(0.0, |m, v| m.max(abs(*v)))
    }

    /// Whether every coefficient below the band is at most `k * eps`.
    pub fn within(&self, k: f64, eps: f64) -> bool {
        self.below_band() <= k * eps
    }
}

/// Expands `x P_n^(eps)` in `seq[0..=n+1]` by back substitution on leading
/// coefficients; `seq[k]` must have degree exactly `k`.
pub fn recurrence_band_check(seq: &[Polynomial], n: usize, s: usize) -> Result<BandCheck> {
    if seq.len() < n + 2 {
        return Err(Error::InvalidArgument(format!(
            "band check of degree {n} needs {} basis members, got {}",
            n + 2,
            seq.len()
        )));
    }
    for (k, p) in seq[..n + 2].iter().enumerate() {
        if p.degree() != k {
            return Err(Error::InvalidArgument(format!(
                "basis member {k} has degree {}",
                p.degree()
            )));
        }
        if !(abs(p.leading()) > 1e-12 * p.max_abs_coeff()) {
            return Err(Error::IllConditioned {
                condition: p.max_abs_coeff() / abs(p.leading()),
                limit: 1e12,
            });
        }
    }
    let target = seq[n].shift_up();
    let mut rest = target.coeffs().to_vec();
    let mut d = alloc::vec![0.0; n + 2];
    for k in (0..=n + 1).rev() {
        let dk = rest[k] / seq[k].leading();
        d[k] = dk;
        for (j, c) in seq[k].coeffs().iter().enumerate() {
            rest[j] -= dk * c;
        }
    }
    let recon = seq[..n + 2]
        .iter()
        .zip(&d)
        .fold(Polynomial::zero(), |acc, (p, dk)| &acc + &p.scale(*dk));
    Ok(BandCheck {
        n,
        s,
        d,
        residual: recon.max_coeff_diff(&target),
    })
}

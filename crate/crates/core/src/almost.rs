//! Almost orthogonal polynomials obtained by shifting a few zeros of an
//! orthonormal polynomial, together with the machinery that predicts their
//! orthogonality defect to first order.
//!
//! With `Q_n = sigma_n prod_{shifted}(x - x_k - delta_k) prod_{rest}(x - x_k)`
//! the profile `f_i = L[P~_i Q_n]` is `O(eps)` for `i < n` and exactly 1 for
//! `i = n`. To first order `f_i = -sum_k delta_k tau_{i,k}` where
//! `tau_{i,k} = L[P~_i R_k]` and `R_k = P~_n / (x - x_k)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::families::RecurrenceCoeffs;
use crate::functional::MomentFunctional;
use crate::math::{abs, max_abs, powi, sqrt};
use crate::poly::{zeros_orthogonal, Polynomial, RootFactoredPolynomial, ZeroSet};

/// A set of zero shifts `delta_k`, each strictly smaller than `epsilon` in
/// magnitude, applied to `s` of the `n` zeros of `P_n`.
///
/// Zero indices are 0-based positions in the ascending zero list. The
/// default choice shifts the `s` smallest zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Perturbation {
    n: usize,
    indices: Vec<usize>,
    deltas: Vec<f64>,
    epsilon: f64,
}

impl Perturbation {
    /// Shifts zeros `0..deltas.len()` (the smallest ones).
    pub fn new(n: usize, deltas: Vec<f64>, epsilon: f64) -> Result<Self> {
        let indices = (0..deltas.len()).collect();
        Self::with_indices(n, indices, deltas, epsilon)
    }

    /// Shifts the zeros at `indices` by the matching `deltas`.
    pub fn with_indices(n: usize, indices: Vec<usize>, deltas: Vec<f64>, epsilon: f64) -> Result<Self> {
        let s = deltas.len();
        if n < 2 || s == 0 || s >= n {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= s <= n - 1, got n = {n}, s = {s}"
            )));
        }
        if indices.len() != s {
            return Err(Error::InvalidArgument(format!(
                "{} indices for {s} shifts",
                indices.len()
            )));
        }
        for (a, i) in indices.iter().enumerate() {
            if *i >= n || indices[..a].contains(i) {
                return Err(Error::InvalidArgument(format!(
                    "shift indices must be distinct and below {n}"
                )));
            }
        }
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        if let Some(d) = deltas.iter().find(|d| !(abs(**d) < epsilon)) {
            return Err(Error::InvalidArgument(format!(
                "shift {d} is not strictly inside (-{epsilon}, {epsilon})"
            )));
        }
        Ok(Perturbation {
            n,
            indices,
            deltas,
            epsilon,
        })
    }

    /// Degree of the shifted polynomial.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of shifted zeros.
    pub fn s(&self) -> usize {
        self.deltas.len()
    }

    /// Shifts, paired with [`Perturbation::indices`].
    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    /// Positions of the shifted zeros.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Bound on the shifts.
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Same pattern with shifts and bound multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::with_indices(
            self.n,
            self.indices.clone(),
            self.deltas.iter().map(|d| d * factor).collect(),
            self.epsilon * factor,
        )
    }

    /// The shifted zeros `gamma_k = x_k + delta_k`, in shift order.
    pub fn gammas(&self, zeros: &ZeroSet) -> Vec<f64> {
        self.indices
            .iter()
            .zip(&self.deltas)
            .map(|(i, d)| zeros.zeros()[*i] + d)
            .collect()
    }

    /// All `n` zeros of `Q_n`, in the positions of the original zeros.
    pub fn shifted_zeros(&self, zeros: &ZeroSet) -> Vec<f64> {
        let mut out = zeros.zeros().to_vec();
        for (i, d) in self.indices.iter().zip(&self.deltas) {
            out[*i] += d;
        }
        out
    }

    fn check_zeros(&self, zeros: &ZeroSet) -> Result<()> {
        if zeros.degree() != self.n {
            return Err(Error::InvalidArgument(format!(
                "perturbation of degree {} applied to zeros of degree {}",
                self.n,
                zeros.degree()
            )));
        }
        Ok(())
    }
}

/// `Q_n = sigma_n prod (x - gamma_k) prod (x - x_k)`.
pub fn build_qn(coeffs: &RecurrenceCoeffs, zeros: &ZeroSet, pert: &Perturbation) -> Result<Polynomial> {
    pert.check_zeros(zeros)?;
    let sigma = coeffs.norm_factor(pert.n)?;
    Ok(Polynomial::from_roots(sigma, &pert.shifted_zeros(zeros)))
}

/// Measured inner products `f_0..f_n` of a zero-shifted polynomial, plus
/// (once attached) the first-order prediction and the `omega` bound.
#[derive(Debug, Clone, PartialEq)]
pub struct AlmostProfile {
    /// `f_i = L[P~_i Q_n]`, `i = 0..=n`.
    pub f: Vec<f64>,
    /// `-sum_k delta_k tau_{i,k}`, `i = 0..n`; empty until attached.
    pub predicted: Vec<f64>,
    /// Bound on `|f_i| / eps` to first order, `i = 0..n`; empty until attached.
    pub omega_bound: Vec<f64>,
}

impl AlmostProfile {
    /// Degree of the profiled polynomial.
    pub fn n(&self) -> usize {
        self.f.len() - 1
    }

    /// `f_i / eps` for `i < n`.
    pub fn omegas(&self, epsilon: f64) -> Vec<f64> {
        self.f[..self.n()].iter().map(|v| v / epsilon).collect()
    }

    /// `max_{i<n} |f_i|`.
    pub fn max_defect(&self) -> f64 {
        max_abs(&self.f[..self.n()])
    }

    /// Fills `predicted` and `omega_bound` from the tau table.
    pub fn attach_prediction(&mut self, pert: &Perturbation, tau: &TauTable, params: &TauBoundParams) {
        self.predicted = first_order_profile(pert, tau);
        let s = pert.s() as f64;
        self.omega_bound = (0..self.n())
            .map(|i| {
                let worst = pert
                    .indices()
                    .iter()
                    .map(|k| tau_bound(params, i, abs(tau.get(0, *k))))
                    .fold(0.0, f64::max);
                s * worst
            })
            .collect();
    }

    /// `max_i |f_i - predicted_i|`, the second-order remainder.
    pub fn prediction_residual(&self) -> f64 {
        self.f
            .iter()
            .zip(&self.predicted)
            .map(|(f, p)| abs(f - p))
            .fold(0.0, f64::max)
    }

    /// `sum_i f_i P~_i`, which reproduces the profiled polynomial.
    pub fn reconstruct(&self, coeffs: &RecurrenceCoeffs) -> Result<Polynomial> {
        let basis = coeffs.orthonormal_sequence(self.n())?;
        Ok(basis
            .iter()
            .zip(&self.f)
            .fold(Polynomial::zero(), |acc, (p, f)| &acc + &p.scale(*f)))
    }
}

/// Profile `f_i = L[P~_i Q_n]` measured by quadrature of each product.
pub fn almost_profile(functional: &MomentFunctional, qn: &Polynomial, n: usize) -> Result<AlmostProfile> {
    if qn.degree() != n {
        return Err(Error::InvalidArgument(format!(
            "profile of degree {n} requested for a polynomial of degree {}",
            qn.degree()
        )));
    }
    Ok(AlmostProfile {
        f: functional.orthonormal_projections(qn, n)?,
        predicted: Vec::new(),
        omega_bound: Vec::new(),
    })
}

/// `P~_n / prod_{k in indices} (x - x_k)` by synthetic division. Indices
/// are 0-based positions in the ascending zero list of `P_n`.
pub fn deflate(coeffs: &RecurrenceCoeffs, n: usize, indices: &[usize]) -> Result<Polynomial> {
    let zeros = zeros_orthogonal(coeffs, n)?;
    deflate_with(&coeffs.orthonormal(n)?, &zeros, indices)
}

pub(crate) fn deflate_with(p: &Polynomial, zeros: &ZeroSet, indices: &[usize]) -> Result<Polynomial> {
    for (a, i) in indices.iter().enumerate() {
        if *i >= zeros.degree() || indices[..a].contains(i) {
            return Err(Error::InvalidArgument(format!(
                "deflation indices must be distinct and below {}",
                zeros.degree()
            )));
        }
    }
    let mut cur = p.clone();
    for i in indices {
        let root = zeros.zeros()[*i];
        let tolerance = 1e-12 * cur.evaluation_scale(root).max(cur.max_abs_coeff());
        let (q, rem) = cur.divide_linear(root);
        if abs(rem) > tolerance {
            return Err(Error::DivisionResidual {
                root,
                remainder: abs(rem),
                tolerance,
            });
        }
        cur = q;
    }
    Ok(cur)
}

/// `tau_{i,k} = L[P~_i R_k]` for `0 <= i < n` and every zero `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TauTable {
    n: usize,
    values: Vec<Vec<f64>>,
    cross_check: f64,
}

impl TauTable {
    /// Degree of `P_n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `tau_{i,k}` with 0-based zero index `k`.
    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.values[i][k]
    }

    /// Rows `i = 0..n`, each holding one entry per zero.
    pub fn rows(&self) -> &[Vec<f64>] {
        &self.values
    }

    /// Largest relative disagreement between the recurrence and direct
    /// quadrature seen while building the table.
    pub fn cross_check_error(&self) -> f64 {
        self.cross_check
    }

    /// Largest residual of
    /// `sqrt(beta_{i+1}) tau_{i+1} - (x_k - alpha_i) tau_i + sqrt(beta_i) tau_{i-1}`
    /// over `0 <= i < n`, with `tau_{-1} = tau_n = 0`.
    pub fn recurrence_residual(&self, coeffs: &RecurrenceCoeffs, zeros: &ZeroSet) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for (k, x) in zeros.zeros().iter().enumerate() {
            let at = |i: isize| -> f64 {
                if i < 0 || i as usize >= n {
                    0.0
                } else {
                    self.values[i as usize][k]
                }
            };
            for i in 0..n {
                let ii = i as isize;
                let lhs = sqrt(coeffs.beta()[i + 1]) * at(ii + 1);
                let rhs = (x - coeffs.alpha()[i]) * at(ii) - sqrt(coeffs.beta()[i]) * at(ii - 1);
                worst = worst.max(abs(lhs - rhs));
            }
        }
        worst
    }
}

/// Relative tolerance between recurrence and quadrature tau values.
pub const TAU_CROSS_CHECK_TOL: f64 = 1e-9;

/// Base row by quadrature, higher rows by the three-term recurrence, every
/// entry checked against direct quadrature of `P~_i R_k`.
///
/// Both quadratures evaluate `R_k = sigma_n prod_{j != k} (x - x_j)` in
/// product form; expanding it in monomials first costs several digits for
/// Laguerre weights at n = 10, and the recurrence amplifies any error in
/// the base row.
pub fn tau_table(functional: &MomentFunctional, n: usize) -> Result<TauTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("tau table needs n >= 1".into()));
    }
    let coeffs = functional.coeffs();
    let zeros = zeros_orthogonal(coeffs, n)?;
    let basis = coeffs.orthonormal_sequence(n - 1)?;
    let sigma = coeffs.norm_factor(n)?;
    let mut values = vec![vec![0.0; n]; n];
    let mut cross_check = 0.0f64;
    for (k, xk) in zeros.zeros().iter().enumerate() {
        let others: Vec<f64> = zeros
            .zeros()
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, x)| *x)
            .collect();
        let r = RootFactoredPolynomial::new(sigma, others);
        let quad = |i: usize| -> Result<f64> {
            let rule = functional.rule((i + n - 1) / 2 + 1)?;
            Ok(rule.integrate(|x| basis[i].evaluate(x) * r.evaluate(x)))
        };
        values[0][k] = quad(0)?;
        for i in 0..n - 1 {
            let prev = if i == 0 {
                0.0
            } else {
                sqrt(coeffs.beta()[i]) * values[i - 1][k]
            };
            values[i + 1][k] = ((xk - coeffs.alpha()[i]) * values[i][k] - prev) / sqrt(coeffs.beta()[i + 1]);
        }
        for (i, row) in values.iter().enumerate() {
            let direct = quad(i)?;
            let err = abs(row[k] - direct) / abs(direct).max(1.0);
            if !(err <= TAU_CROSS_CHECK_TOL) {
                return Err(Error::TauMismatch {
                    i,
                    k: k + 1,
                    recurrence: row[k],
                    direct,
                });
            }
            cross_check = cross_check.max(err);
        }
    }
    Ok(TauTable { n, values, cross_check })
}

/// Constants of the tau growth bound: `h = min sqrt(beta_i)`,
/// `r = max sqrt(beta_i)` over `0 <= i <= n` and
/// `c = max |x_k - alpha_i|` over the same `i` and every zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauBoundParams {
    /// Smallest `sqrt(beta_i)`.
    pub h: f64,
    /// Largest `sqrt(beta_i)`.
    pub r: f64,
    /// Largest `|x_k - alpha_i|`.
    pub c: f64,
}

impl TauBoundParams {
    /// Checks `0 < h <= r` and `c >= 0`.
    pub fn new(h: f64, r: f64, c: f64) -> Result<Self> {
        if !(h > 0.0 && h <= r && c >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tau bound needs 0 < h <= R and C >= 0 (h = {h}, R = {r}, C = {c})"
            )));
        }
        Ok(TauBoundParams { h, r, c })
    }

    /// Constants for the zeros of `P_n`.
    pub fn for_degree(coeffs: &RecurrenceCoeffs, zeros: &ZeroSet) -> Result<Self> {
        let n = zeros.degree();
        if n > coeffs.max_degree() {
            return Err(Error::DegreeOutOfRange {
                requested: n,
                available: coeffs.max_degree(),
            });
        }
        let roots: Vec<f64> = coeffs.beta()[..=n].iter().map(|b| sqrt(*b)).collect();
        let h = roots.iter().copied().fold(f64::INFINITY, f64::min);
        let r = roots.iter().copied().fold(0.0, f64::max);
        let mut c = 0.0f64;
        for a in &coeffs.alpha()[..=n] {
            for x in zeros.zeros() {
                c = c.max(abs(x - a));
            }
        }
        Self::new(h, r, c)
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// `|tau_0| (C/h)^i sum_{j=0}^{i/2} binom(i-j, j) (R h / C^2)^j`.
///
/// Each term is evaluated as `C^{i-2j} R^j h^{j-i}`, so `C = 0` needs no
/// special case: only the `j = i/2` term survives for even `i` and the
/// bound is 0 for odd `i`.
pub fn tau_bound(params: &TauBoundParams, i: usize, tau0_abs: f64) -> f64 {
    let TauBoundParams { h, r, c } = *params;
    let sum: f64 = (0..=i / 2)
        .map(|j| binomial(i - j, j) * powi(c, (i - 2 * j) as u32) * powi(r, j as u32) / powi(h, (i - j) as u32))
        .sum();
    tau0_abs * sum
}

/// First-order estimate `-sum_k delta_k tau_{i,k}` for `i = 0..n`.
pub fn first_order_profile(pert: &Perturbation, tau: &TauTable) -> Vec<f64> {
    (0..tau.n())
        .map(|i| {
            -pert
                .indices()
                .iter()
                .zip(pert.deltas())
                .map(|(k, d)| d * tau.get(i, *k))
                .sum::<f64>()
        })
        .collect()
}

/// First-order position `z_r - eps g(z_r) / f'(z_r)` of the zero of
/// `f + eps g` that starts at the simple zero `z_r` of `f`.
pub fn wilkinson_shift(f: &Polynomial, g: &Polynomial, z_r: f64, eps: f64) -> Result<f64> {
    let (value, slope) = f.evaluate_with_derivative(z_r);
    if abs(value) > 1e-10 * f.evaluation_scale(z_r).max(1.0) {
        return Err(Error::NotAZero {
            at: z_r,
            residual: abs(value),
        });
    }
    if abs(slope) < 1e-12 {
        return Err(Error::SingularDerivative {
            at: z_r,
            derivative: slope,
        });
    }
    Ok(z_r - eps * g.evaluate(z_r) / slope)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Family;

    fn legendre(max: usize) -> MomentFunctional {
        MomentFunctional::new(Family::Legendre, max).unwrap()
    }

    #[test]
    fn perturbation_validation() {
        assert!(Perturbation::new(4, vec![1e-3, -1e-3], 1e-2).is_ok());
        assert!(Perturbation::new(4, vec![], 1e-2).is_err());
        assert!(Perturbation::new(4, vec![0.0; 4], 1e-2).is_err());
        assert!(Perturbation::new(4, vec![1e-2], 1e-2).is_err());
        assert!(Perturbation::new(4, vec![0.0], 0.0).is_err());
        assert!(Perturbation::with_indices(4, vec![1, 1], vec![0.0, 0.0], 1e-2).is_err());
        assert!(Perturbation::with_indices(4, vec![4], vec![0.0], 1e-2).is_err());
    }

    #[test]
    fn zero_shift_reproduces_orthonormal() {
        for family in Family::ALL {
            let c = family.recurrence(8).unwrap();
            for n in 2..=8 {
                let z = zeros_orthogonal(&c, n).unwrap();
                let pert = Perturbation::new(n, vec![0.0; n - 1], 1e-3).unwrap();
                let q = build_qn(&c, &z, &pert).unwrap();
                let p = c.orthonormal(n).unwrap();
                assert!(
                    q.max_coeff_diff(&p) <= 1e-12 * p.max_abs_coeff().max(1.0),
                    "{family} {n}"
                );
                assert_eq!(q.leading(), c.norm_factor(n).unwrap());
            }
        }
    }

    #[test]
    fn legendre_two_expansion() {
        let c = Family::Legendre.recurrence(4).unwrap();
        let z = zeros_orthogonal(&c, 2).unwrap();
        let pert = Perturbation::new(2, vec![1e-3], 1e-2).unwrap();
        let q = build_qn(&c, &z, &pert).unwrap();
        let r = 1.0 / 3.0f64.sqrt();
        let sigma = c.norm_factor(2).unwrap();
        let expect = Polynomial::from_roots(sigma, &[-r + 1e-3, r]);
        assert!(q.max_coeff_diff(&expect) < 1e-15);
    }

    #[test]
    fn deflation_examples() {
        let c = Family::Legendre.recurrence(4).unwrap();
        let p2 = c.orthonormal(2).unwrap();
        assert_eq!(deflate(&c, 2, &[]).unwrap(), p2);
        let sigma = c.norm_factor(2).unwrap();
        let all = deflate(&c, 2, &[0, 1]).unwrap();
        assert_eq!(all.degree(), 0);
        assert!((all.coeffs()[0] - sigma).abs() < 1e-14);
        let one = deflate(&c, 2, &[0]).unwrap();
        let r = 1.0 / 3.0f64.sqrt();
        assert!(one.max_coeff_diff(&Polynomial::from_roots(sigma, &[r])) < 1e-14);
        assert!(deflate(&c, 2, &[0, 0]).is_err());
    }

    #[test]
    fn deflation_rejects_non_roots() {
        let p = Polynomial::from_roots(1.0, &[0.5]);
        let zeros = zeros_orthogonal(&Family::Legendre.recurrence(2).unwrap(), 1).unwrap();
        assert!(matches!(
            deflate_with(&p, &zeros, &[0]),
            Err(Error::DivisionResidual { .. })
        ));
    }

    #[test]
    fn tau_last_row_is_sigma_ratio() {
        for family in Family::ALL {
            let f = MomentFunctional::new(family, 10).unwrap();
            for n in 1..=10 {
                let t = tau_table(&f, n).unwrap();
                let expect = 1.0 / f.coeffs().beta()[n].sqrt();
                for k in 0..n {
                    assert!((t.get(n - 1, k) - expect).abs() < 1e-9 * expect.max(1.0));
                }
                let zeros = zeros_orthogonal(f.coeffs(), n).unwrap();
                assert!(t.recurrence_residual(f.coeffs(), &zeros) < 1e-10 * 10f64.max(expect));
            }
        }
    }

    #[test]
    fn tau_bound_closed_cases() {
        let p = TauBoundParams::new(0.5, 2.0, 3.0).unwrap();
        assert_eq!(tau_bound(&p, 0, 0.7), 0.7);
        assert!((tau_bound(&p, 1, 0.7) - 0.7 * 3.0 / 0.5).abs() < 1e-14);
        // i = 2: (C/h)^2 (1 + R h / C^2) = (C^2 + R h) / h^2
        assert!((tau_bound(&p, 2, 1.0) - (9.0 + 1.0) / 0.25).abs() < 1e-12);
        let degenerate = TauBoundParams::new(1.0, 2.0, 0.0).unwrap();
        assert_eq!(tau_bound(&degenerate, 0, 1.5), 1.5);
        assert_eq!(tau_bound(&degenerate, 3, 1.5), 0.0);
        assert_eq!(tau_bound(&degenerate, 4, 1.5), 1.5 * 4.0);
        assert!(TauBoundParams::new(2.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn first_order_examples() {
        let f = legendre(6);
        let t = tau_table(&f, 4).unwrap();
        let zero = Perturbation::new(4, vec![0.0, 0.0], 1e-3).unwrap();
        assert!(first_order_profile(&zero, &t).iter().all(|v| *v == 0.0));
        let single = Perturbation::with_indices(4, vec![2], vec![5e-4], 1e-3).unwrap();
        let pred = first_order_profile(&single, &t);
        for (i, v) in pred.iter().enumerate() {
            assert_eq!(*v, -5e-4 * t.get(i, 2));
        }
    }

    #[test]
    fn profile_of_unperturbed_is_unit_vector() {
        let f = legendre(8);
        let p = f.coeffs().orthonormal(5).unwrap();
        let prof = almost_profile(&f, &p, 5).unwrap();
        for i in 0..5 {
            assert!(prof.f[i].abs() < 1e-13);
        }
        assert!((prof.f[5] - 1.0).abs() < 1e-13);
        assert!(almost_profile(&f, &p, 4).is_err());
    }

    #[test]
    fn wilkinson_examples() {
        let f = Polynomial::new(vec![-1.0, 0.0, 1.0]);
        assert_eq!(wilkinson_shift(&f, &Polynomial::zero(), 1.0, 1e-3).unwrap(), 1.0);
        let z = wilkinson_shift(&f, &Polynomial::one(), 1.0, 1e-3).unwrap();
        assert!((z - (1.0 - 5e-4)).abs() < 1e-16);
        assert!((z - (1.0 - 1e-3f64).sqrt()).abs() < 1e-6);
        assert!(matches!(
            wilkinson_shift(&f, &Polynomial::one(), 0.5, 1e-3),
            Err(Error::NotAZero { .. })
        ));
        let double = Polynomial::new(vec![0.0, 0.0, 1.0]);
        assert!(matches!(
            wilkinson_shift(&double, &Polynomial::one(), 0.0, 1e-3),
            Err(Error::SingularDerivative { .. })
        ));
    }
}

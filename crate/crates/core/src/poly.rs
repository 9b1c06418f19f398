//! Dense real polynomials, evaluation, zeros of orthogonal polynomials and
//! Newton refinement.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::families::RecurrenceCoeffs;
use crate::math::{abs, max_abs};
use crate::tridiag;

/// Polynomial in the monomial basis, lowest order first.
///
/// Trailing exact zeros are trimmed, so `coeffs()[degree()]` is nonzero
/// unless the polynomial is identically zero (stored as `[0.0]`).
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Builds a polynomial from coefficients, lowest order first.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Polynomial { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Polynomial { coeffs: vec![0.0] }
    }

    /// The constant 1.
    pub fn one() -> Self {
        Polynomial::constant(1.0)
    }

    /// A constant polynomial.
    pub fn constant(c: f64) -> Self {
        Polynomial::new(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![0.0; k + 1];
        c[k] = 1.0;
        Polynomial { coeffs: c }
    }

    /// `leading * prod (x - r)`.
    pub fn from_roots(leading: f64, roots: &[f64]) -> Self {
        let mut p = Polynomial::one();
        for r in roots {
            p = p.mul_linear(*r);
        }
        p.scale(leading)
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients, lowest order first.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of the highest power.
    pub fn leading(&self) -> f64 {
        self.coeffs[self.degree()]
    }

    /// Whether every coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn evaluate_with_derivative(&self, x: f64) -> (f64, f64) {
        let mut p = 0.0;
        let mut dp = 0.0;
        for c in self.coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    }

    /// `sum |c_j| |x|^j`, the magnitude against which rounding in
    /// [`Polynomial::evaluate`] is measured.
    pub fn evaluation_scale(&self, x: f64) -> f64 {
        let ax = abs(x);
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * ax + abs(*c))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| k as f64 * c)
                .collect(),
        )
    }

    /// `c * p`.
    pub fn scale(&self, c: f64) -> Self {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `(x - root) * p`.
    pub fn mul_linear(&self, root: f64) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let n = self.coeffs.len();
        let mut out = vec![0.0; n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k + 1] += c;
            out[k] -= root * c;
        }
        Polynomial::new(out)
    }

    /// `x * p`.
    pub fn shift_up(&self) -> Self {
        self.mul_linear(0.0)
    }

    /// Synthetic division by `(x - root)`, returning quotient and remainder.
    pub fn divide_linear(&self, root: f64) -> (Polynomial, f64) {
        if self.degree() == 0 {
            return (Polynomial::zero(), self.coeffs[0]);
        }
        let n = self.degree();
        let mut q = vec![0.0; n];
        let mut carry = 0.0;
        for k in (0..=n).rev() {
            let next = self.coeffs[k] + carry * root;
            if k == 0 {
                return (Polynomial::new(q), next);
            }
            q[k - 1] = next;
            carry = next;
        }
        unreachable!()
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> f64 {
        max_abs(&self.coeffs)
    }

    /// Largest coefficientwise difference to `other`.
    pub fn max_coeff_diff(&self, other: &Polynomial) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).copied().unwrap_or(0.0);
                let b = other.coeffs.get(k).copied().unwrap_or(0.0);
                abs(a - b)
            })
            .fold(0.0, f64::max)
    }

    fn combine(&self, other: &Polynomial, sign: f64) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or(0.0) + sign * other.coeffs.get(k).copied().unwrap_or(0.0)
                })
                .collect(),
        )
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.combine(rhs, 1.0)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.combine(rhs, -1.0)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Mul<f64> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: f64) -> Polynomial {
        self.scale(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

/// `leading * prod (x - root_k)` with roots kept sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct RootFactoredPolynomial {
    leading: f64,
    roots: Vec<f64>,
}

impl RootFactoredPolynomial {
    /// Sorts `roots` ascending.
    pub fn new(leading: f64, mut roots: Vec<f64>) -> Self {
        roots.sort_by(f64::total_cmp);
        RootFactoredPolynomial { leading, roots }
    }

    /// Leading coefficient.
    pub fn leading(&self) -> f64 {
        self.leading
    }

    /// Roots, ascending.
    pub fn roots(&self) -> &[f64] {
        &self.roots
    }

    /// Coefficient form.
    pub fn expand(&self) -> Polynomial {
        Polynomial::from_roots(self.leading, &self.roots)
    }

    /// Value by the product form.
    pub fn evaluate(&self, x: f64) -> f64 {
        self.roots.iter().fold(self.leading, |acc, r| acc * (x - r))
    }
}

/// The `n` zeros of an orthogonal polynomial `P_n`, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    n: usize,
    zeros: Vec<f64>,
}

impl ZeroSet {
    /// Degree of the polynomial the zeros belong to.
    pub fn degree(&self) -> usize {
        self.n
    }

    /// Zeros, ascending.
    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    /// Strict interlacing `x_{n,k} < x_{n-1,k} < x_{n,k+1}` with `lower`
    /// being the zero set of degree `n - 1`.
    pub fn interlaces(&self, lower: &ZeroSet) -> bool {
        if lower.n + 1 != self.n {
            return false;
        }
        lower
            .zeros
            .iter()
            .enumerate()
            .all(|(k, z)| self.zeros[k] < *z && *z < self.zeros[k + 1])
    }
}

/// Zeros of the monic `P_n` as eigenvalues of its Jacobi matrix (diagonal
/// `alpha_0..alpha_{n-1}`, off-diagonal `sqrt(beta_1)..sqrt(beta_{n-1})`),
/// polished by a Newton step on the recurrence.
pub fn zeros_orthogonal(coeffs: &RecurrenceCoeffs, n: usize) -> Result<ZeroSet> {
    if n == 0 {
        return Err(Error::InvalidArgument("zeros_orthogonal needs n >= 1".into()));
    }
    let zeros = jacobi_eigenvalues(coeffs, n)?;
    let p = coeffs.monic(n.min(coeffs.max_degree()))?;
    if p.degree() == n {
        for z in &zeros {
            let residual = abs(p.evaluate(*z));
            let tolerance = 1e-10 * p.evaluation_scale(*z);
            if residual > tolerance {
                return Err(Error::ZeroResidual {
                    zero: *z,
                    residual,
                    tolerance,
                });
            }
        }
    }
    Ok(ZeroSet { n, zeros })
}

/// Jacobi-matrix eigenvalues for degree `n` (at most `max_degree + 1`),
/// ascending, each polished with Newton steps on the three-term recurrence.
pub(crate) fn jacobi_eigenvalues(coeffs: &RecurrenceCoeffs, n: usize) -> Result<Vec<f64>> {
    if n > coeffs.max_degree() + 1 {
        return Err(Error::DegreeOutOfRange {
            requested: n,
            available: coeffs.max_degree() + 1,
        });
    }
    let diag = coeffs.alpha()[..n].to_vec();
    let off: Vec<f64> = coeffs.beta()[1..n].iter().map(|b| crate::math::sqrt(*b)).collect();
    let mut zeros = tridiag::eigenvalues(&diag, &off)?;
    for i in 0..n {
        let lo = if i > 0 { zeros[i - 1] } else { f64::NEG_INFINITY };
        let hi = if i + 1 < n { zeros[i + 1] } else { f64::INFINITY };
        let mut z = zeros[i];
        for _ in 0..2 {
            let (p, dp) = coeffs.monic_value_and_derivative(z, n)?;
            if dp == 0.0 {
                break;
            }
            let cand = z - p / dp;
            let (pc, _) = coeffs.monic_value_and_derivative(cand, n)?;
            if cand > lo && cand < hi && abs(pc) <= abs(p) {
                z = cand;
            } else {
                break;
            }
        }
        zeros[i] = z;
    }
    zeros.sort_by(f64::total_cmp);
    Ok(zeros)
}

/// Iteration limit for [`refine_zeros`].
pub const NEWTON_MAX_ITERATIONS: usize = 100;

/// Newton-refines each seed to a simple real zero of `p`. The result keeps
/// the seed order; seeds that collapse onto the same zero or cross each
/// other are reported as [`Error::ZeroOrdering`].
pub fn refine_zeros(p: &Polynomial, seeds: &[f64]) -> Result<Vec<f64>> {
    let out = seeds.iter().map(|s| newton(p, *s)).collect::<Result<Vec<f64>>>()?;
    for i in 0..seeds.len() {
        for j in i + 1..seeds.len() {
            let seeds_ordered = seeds[i].total_cmp(&seeds[j]);
            if out[i].total_cmp(&out[j]) != seeds_ordered || out[i] == out[j] {
                return Err(Error::ZeroOrdering {
                    first: seeds[i],
                    second: seeds[j],
                });
            }
        }
    }
    Ok(out)
}

fn newton(p: &Polynomial, seed: f64) -> Result<f64> {
    let mut z = seed;
    for _ in 0..NEWTON_MAX_ITERATIONS {
        let (v, dv) = p.evaluate_with_derivative(z);
        let scale = p.evaluation_scale(z);
        if abs(v) <= 1e-12 * scale {
            // One more step lands on the rounding floor.
            if dv != 0.0 {
                let cand = z - v / dv;
                if abs(p.evaluate(cand)) <= abs(v) {
                    z = cand;
                }
            }
            return Ok(z);
        }
        if dv == 0.0 || !dv.is_finite() {
            break;
        }
        let next = z - v / dv;
        if !next.is_finite() {
            break;
        }
        if next == z {
            return Ok(z);
        }
        z = next;
    }
    Err(Error::NoConvergence {
        seed,
        iterations: NEWTON_MAX_ITERATIONS,
    })
}

/// The simple real zeros of `p`, ascending. Zeros of `p'` split the line
/// into intervals holding at most one zero each, and every sign change is
/// bisected to the rounding floor. Multiple zeros may be missed.
pub fn real_zeros(p: &Polynomial) -> Vec<f64> {
    let d = p.degree();
    if d == 0 {
        return Vec::new();
    }
    let c = p.coeffs();
    if d == 1 {
        return alloc::vec![-c[0] / c[1]];
    }
    let bound = 1.0 + c[..d].iter().map(|v| abs(v / c[d])).fold(0.0, f64::max);
    let critical = real_zeros(&p.derivative());
    let mut points = Vec::with_capacity(critical.len() + 2);
    points.push(-bound);
    points.extend(critical.iter().copied().filter(|x| abs(*x) < bound));
    points.push(bound);

    let mut out: Vec<f64> = Vec::with_capacity(d);
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (p.evaluate(a), p.evaluate(b));
        if fa == 0.0 || fb == 0.0 || (fa < 0.0) == (fb < 0.0) {
            continue;
        }
        out.push(bisect(p, a, b, fa));
    }
    out
}

fn bisect(p: &Polynomial, mut a: f64, mut b: f64, fa: f64) -> f64 {
    let negative_at_a = fa < 0.0;
    loop {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = p.evaluate(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == negative_at_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    if abs(p.evaluate(a)) <= abs(p.evaluate(b)) {
        a
    } else {
        b
    }
}

/// Largest distance between two zero lists after pairing them in sorted
/// order.
pub fn sorted_pair_distance(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.iter().zip(&b).map(|(x, y)| abs(x - y)).fold(0.0, f64::max)
}

/// Smallest gap between consecutive entries of an ascending list.
pub fn min_gap(sorted: &[f64]) -> f64 {
    sorted.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Family;

    #[test]
    fn trimming_and_zero() {
        let p = Polynomial::new(vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
        let z = Polynomial::new(vec![]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), 0);
        assert_eq!(z.coeffs(), &[0.0]);
    }

    #[test]
    fn evaluate_examples() {
        let p = Polynomial::new(vec![-1.0 / 3.0, 0.0, 1.0]);
        assert_eq!(p.evaluate(0.0), -1.0 / 3.0);
        assert!(p.evaluate(1.0 / 3.0f64.sqrt()).abs() < 1e-16 * 4.0);
        assert_eq!(Polynomial::one().evaluate(17.5), 1.0);
    }

    #[test]
    fn derivative_examples() {
        assert!(Polynomial::one().derivative().is_zero());
        let p = Polynomial::new(vec![-1.0 / 3.0, 0.0, 1.0]);
        assert_eq!(p.derivative().coeffs(), &[0.0, 2.0]);
        let q = Polynomial::new(vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(q.derivative().degree(), 2);
    }

    #[test]
    fn from_roots_examples() {
        assert_eq!(Polynomial::from_roots(1.0, &[]).coeffs(), &[1.0]);
        let r = 1.0 / 3.0f64.sqrt();
        let p = Polynomial::from_roots(1.0, &[-r, r]);
        assert!((p.coeffs()[0] + 1.0 / 3.0).abs() < 1e-15);
        assert!(p.coeffs()[1].abs() < 1e-16);
        assert_eq!(p.leading(), 1.0);
    }

    #[test]
    fn root_factored_expands() {
        let f = RootFactoredPolynomial::new(2.0, vec![3.0, -1.0, 0.5]);
        assert_eq!(f.roots(), &[-1.0, 0.5, 3.0]);
        let p = f.expand();
        for x in [-2.0, 0.1, 4.0] {
            assert!((p.evaluate(x) - f.evaluate(x)).abs() <= 1e-12 * p.evaluation_scale(x));
        }
    }

    #[test]
    fn synthetic_division() {
        let p = Polynomial::from_roots(3.0, &[1.0, 2.0, -4.0]);
        let (q, r) = p.divide_linear(2.0);
        assert!(r.abs() < 1e-12);
        assert!(q.max_coeff_diff(&Polynomial::from_roots(3.0, &[1.0, -4.0])) < 1e-12);
        let (q0, r0) = Polynomial::constant(5.0).divide_linear(1.0);
        assert!(q0.is_zero());
        assert_eq!(r0, 5.0);
    }

    #[test]
    fn arithmetic() {
        let a = Polynomial::new(vec![1.0, 1.0]);
        let b = Polynomial::new(vec![-1.0, 1.0]);
        assert_eq!((&a * &b).coeffs(), &[-1.0, 0.0, 1.0]);
        assert_eq!((&a - &a).coeffs(), &[0.0]);
        assert_eq!((&a + &b).coeffs(), &[0.0, 2.0]);
        assert_eq!((-&a).coeffs(), &[-1.0, -1.0]);
    }

    #[test]
    fn zeros_examples() {
        let leg = Family::Legendre.recurrence(4).unwrap();
        assert_eq!(zeros_orthogonal(&leg, 1).unwrap().zeros(), &[0.0]);
        let z2 = zeros_orthogonal(&leg, 2).unwrap();
        let r = 1.0 / 3.0f64.sqrt();
        assert!((z2.zeros()[0] + r).abs() < 1e-15);
        assert!((z2.zeros()[1] - r).abs() < 1e-15);
        let lag = Family::Laguerre.recurrence(2).unwrap();
        assert!((zeros_orthogonal(&lag, 1).unwrap().zeros()[0] - 1.0).abs() < 1e-15);
        assert!(zeros_orthogonal(&lag, 0).is_err());
    }

    #[test]
    fn interlacing_and_support() {
        for family in Family::ALL {
            let c = family.recurrence(10).unwrap();
            let support = family.support();
            let mut prev = zeros_orthogonal(&c, 1).unwrap();
            for n in 2..=10 {
                let z = zeros_orthogonal(&c, n).unwrap();
                assert!(z.interlaces(&prev), "{family} n={n}");
                assert!(z.zeros().iter().all(|x| support.contains(*x)));
                prev = z;
            }
        }
    }

    #[test]
    fn from_roots_inverts_zeros() {
        for family in Family::ALL {
            let c = family.recurrence(10).unwrap();
            for n in 1..=10 {
                let p = c.monic(n).unwrap();
                let z = zeros_orthogonal(&c, n).unwrap();
                let q = Polynomial::from_roots(1.0, z.zeros());
                assert!(
                    q.max_coeff_diff(&p) <= 1e-10 * p.max_abs_coeff().max(1.0),
                    "{family} n={n}: {}",
                    q.max_coeff_diff(&p)
                );
            }
        }
    }

    #[test]
    fn newton_examples() {
        let p = Polynomial::new(vec![-1.0 / 3.0, 0.0, 1.0]);
        let r = 1.0 / 3.0f64.sqrt();
        let z = refine_zeros(&p, &[0.6]).unwrap();
        assert!((z[0] - r).abs() < 1e-15);
        let z = refine_zeros(&p, &[-r, r]).unwrap();
        assert!((z[0] + r).abs() < 1e-15 && (z[1] - r).abs() < 1e-15);
    }

    #[test]
    fn real_zeros_examples() {
        let p = Polynomial::from_roots(2.0, &[-3.0, 0.5, 0.6, 10.0]);
        let z = real_zeros(&p);
        assert_eq!(z.len(), 4);
        for (a, b) in z.iter().zip([-3.0, 0.5, 0.6, 10.0]) {
            assert!((a - b).abs() < 1e-13, "{a} vs {b}");
        }
        // x^2 + 1 has none, x (x^2 + 1) has one.
        assert!(real_zeros(&Polynomial::new(vec![1.0, 0.0, 1.0])).is_empty());
        assert_eq!(real_zeros(&Polynomial::new(vec![0.0, 1.0, 0.0, 1.0])), vec![0.0]);
        assert!(real_zeros(&Polynomial::constant(3.0)).is_empty());
    }

    #[test]
    fn newton_failures() {
        let no_real = Polynomial::new(vec![1.0, 0.0, 1.0]);
        assert!(matches!(
            refine_zeros(&no_real, &[0.3]),
            Err(Error::NoConvergence { seed, .. }) if seed == 0.3
        ));
        let p = Polynomial::new(vec![-1.0, 0.0, 1.0]);
        assert!(matches!(refine_zeros(&p, &[0.9, 1.2]), Err(Error::ZeroOrdering { .. })));
    }

    #[test]
    fn pairing_distance() {
        assert_eq!(sorted_pair_distance(&[3.0, 1.0], &[1.5, 2.0]), 1.0);
        assert_eq!(min_gap(&[0.0, 0.5, 2.0]), 0.5);
    }
}

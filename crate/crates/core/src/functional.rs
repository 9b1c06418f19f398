//! The moment functional `L[p] = integral of p against the family weight`,
//! realized exactly on polynomials by Gaussian quadrature.
//!
//! Nodes are Jacobi-matrix eigenvalues. The weight of node `x_k` is
//! `lambda_0 v_{k,0}^2`, where `v_k` is the normalized eigenvector; that
//! eigenvector is `(P~_0(x_k), .., P~_{m-1}(x_k))` up to scaling, so the
//! weight is evaluated as `1 / sum_j P~_j(x_k)^2`. This keeps the tiny
//! weights at large Laguerre or Hermite nodes accurate in relative terms,
//! which accumulating the eigenvector through QL rotations does not.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::families::{Family, RecurrenceCoeffs};
use crate::math::powi;
use crate::poly::{jacobi_eigenvalues, Polynomial};
use crate::tridiag;

/// Gauss nodes (ascending) and positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    /// Nodes, ascending.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Weights, in node order.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Always false for a constructed rule.
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum_k w_k f(x_k)`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(*x)).sum()
    }
}

/// `m`-point Gauss rule of the family, exact for degree `2m - 1`.
pub fn gauss_rule(coeffs: &RecurrenceCoeffs, m: usize) -> Result<QuadratureRule> {
    if m == 0 {
        return Err(Error::InvalidArgument("a Gauss rule needs m >= 1".into()));
    }
    let nodes = jacobi_eigenvalues(coeffs, m)?;
    let weights = nodes
        .iter()
        .map(|x| {
            let vals = coeffs.orthonormal_values(*x, m - 1)?;
            Ok(1.0 / vals.iter().map(|v| v * v).sum::<f64>())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(QuadratureRule { nodes, weights })
}

/// Textbook Golub-Welsch: weights from the first row of the eigenvector
/// matrix accumulated by the QL sweeps. Kept for comparison with
/// [`gauss_rule`].
pub fn golub_welsch(coeffs: &RecurrenceCoeffs, m: usize) -> Result<QuadratureRule> {
    if m == 0 || m > coeffs.max_degree() + 1 {
        return Err(Error::DegreeOutOfRange {
            requested: m,
            available: coeffs.max_degree() + 1,
        });
    }
    let diag = &coeffs.alpha()[..m];
    let off: Vec<f64> = coeffs.beta()[1..m].iter().map(|b| crate::math::sqrt(*b)).collect();
    let pairs = tridiag::eigen_first_row(diag, &off)?;
    let mass = coeffs.mass();
    Ok(QuadratureRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| mass * p.1 * p.1).collect(),
    })
}

/// The functional of one family with every Gauss rule up to
/// `max_degree + 1` nodes precomputed at construction.
///
/// The rule table is filled once and never mutated afterwards, so shared
/// references can be used from any number of threads.
#[derive(Debug, Clone)]
pub struct MomentFunctional {
    coeffs: RecurrenceCoeffs,
    rules: Vec<QuadratureRule>,
}

impl MomentFunctional {
    /// Coefficients to `max_degree` and rules with up to `max_degree + 1`
    /// nodes, exact for polynomials of degree `2 max_degree + 1`.
    pub fn new(family: Family, max_degree: usize) -> Result<Self> {
        Self::from_coeffs(family.recurrence(max_degree)?)
    }

    /// As [`MomentFunctional::new`] from existing coefficients.
    pub fn from_coeffs(coeffs: RecurrenceCoeffs) -> Result<Self> {
        let rules = (1..=coeffs.max_degree() + 1)
            .map(|m| gauss_rule(&coeffs, m))
            .collect::<Result<Vec<_>>>()?;
        Ok(MomentFunctional { coeffs, rules })
    }

    /// Underlying recurrence coefficients.
    pub fn coeffs(&self) -> &RecurrenceCoeffs {
        &self.coeffs
    }

    /// Family of the weight.
    pub fn family(&self) -> Family {
        self.coeffs.family()
    }

    /// Highest polynomial degree integrated exactly.
    pub fn max_exact_degree(&self) -> usize {
        2 * self.rules.len() - 1
    }

    /// The cached `m`-point rule.
    pub fn rule(&self, m: usize) -> Result<&QuadratureRule> {
        if m == 0 {
            return Err(Error::InvalidArgument("a Gauss rule needs m >= 1".into()));
        }
        self.rules.get(m - 1).ok_or(Error::DegreeOutOfRange {
            requested: m,
            available: self.rules.len(),
        })
    }

    fn rule_for_degree(&self, degree: usize) -> Result<&QuadratureRule> {
        if degree > self.max_exact_degree() {
            return Err(Error::DegreeOutOfRange {
                requested: degree,
                available: self.max_exact_degree(),
            });
        }
        self.rule(degree / 2 + 1)
    }

    /// `lambda_n = L[x^n]`.
    pub fn moment(&self, n: usize) -> Result<f64> {
        let rule = self.rule_for_degree(n)?;
        Ok(rule.integrate(|x| powi(x, n as u32)))
    }

    /// `L[p]` on the smallest rule exact for `deg p`.
    pub fn apply(&self, p: &Polynomial) -> Result<f64> {
        if p.is_zero() {
            return Ok(0.0);
        }
        let rule = self.rule_for_degree(p.degree())?;
        Ok(rule.integrate(|x| p.evaluate(x)))
    }

    /// `(p, q) = L[p q]`, with the product taken pointwise at the nodes so
    /// that swapping the arguments gives bit-identical results.
    pub fn inner_product(&self, p: &Polynomial, q: &Polynomial) -> Result<f64> {
        if p.is_zero() || q.is_zero() {
            return Ok(0.0);
        }
        let rule = self.rule_for_degree(p.degree() + q.degree())?;
        Ok(rule.integrate(|x| p.evaluate(x) * q.evaluate(x)))
    }

    /// `L[P~_i p]` for `i = 0..=n`.
    pub fn orthonormal_projections(&self, p: &Polynomial, n: usize) -> Result<Vec<f64>> {
        let basis = self.coeffs.orthonormal_sequence(n)?;
        basis.iter().map(|b| self.inner_product(b, p)).collect()
    }
}

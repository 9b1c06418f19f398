//! Classical orthogonal polynomial families described by their monic
//! three-term recurrence
//!
//! ```text
//! P_{k+1}(x) = (x - alpha_k) P_k(x) - beta_k P_{k-1}(x),  P_{-1} = 0, P_0 = 1
//! ```
//!
//! with `beta_0` holding the zeroth moment of the weight. Coefficients come
//! from closed forms; the integration tests rebuild them from exact moment
//! sequences.
//!
//! Members are expanded in the monomial basis, which loses accuracy quickly
//! with growing degree. Coefficient tables are therefore capped at
//! [`DEFAULT_MAX_DEGREE`] unless the caller raises the cap explicitly.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::math::{sqrt, PI};
use crate::poly::Polynomial;

/// Largest degree served without an explicit cap override.
pub const DEFAULT_MAX_DEGREE: usize = 64;

/// The supported classical weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Weight 1 on (-1, 1).
    Legendre,
    /// Weight e^{-x} on (0, inf).
    Laguerre,
    /// Weight e^{-x^2} on (-inf, inf).
    Hermite,
    /// Weight (1 - x^2)^{-1/2} on (-1, 1).
    ChebyshevFirstKind,
}

/// Open interval carrying the weight. Endpoints may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    /// Lower endpoint.
    pub lower: f64,
    /// Upper endpoint.
    pub upper: f64,
}

impl Support {
    /// Whether `x` lies strictly inside the interval.
    pub fn contains(&self, x: f64) -> bool {
        x > self.lower && x < self.upper
    }
}

impl Family {
    /// All families, in a fixed order.
    pub const ALL: [Family; 4] = [
        Family::Legendre,
        Family::Laguerre,
        Family::Hermite,
        Family::ChebyshevFirstKind,
    ];

    /// Interval of orthogonality.
    pub fn support(self) -> Support {
        match self {
            Family::Legendre | Family::ChebyshevFirstKind => Support {
                lower: -1.0,
                upper: 1.0,
            },
            Family::Laguerre => Support {
                lower: 0.0,
                upper: f64::INFINITY,
            },
            Family::Hermite => Support {
                lower: f64::NEG_INFINITY,
                upper: f64::INFINITY,
            },
        }
    }

    /// Human-readable weight, for reports only.
    pub fn weight_description(self) -> &'static str {
        match self {
            Family::Legendre => "1 on (-1, 1)",
            Family::Laguerre => "exp(-x) on (0, inf)",
            Family::Hermite => "exp(-x^2) on (-inf, inf)",
            Family::ChebyshevFirstKind => "1/sqrt(1 - x^2) on (-1, 1)",
        }
    }

    /// Whether the weight is even about the origin, forcing `alpha_k = 0`.
    pub fn is_symmetric(self) -> bool {
        !matches!(self, Family::Laguerre)
    }

    /// Lower-case identifier used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            Family::Legendre => "legendre",
            Family::Laguerre => "laguerre",
            Family::Hermite => "hermite",
            Family::ChebyshevFirstKind => "chebyshev",
        }
    }

    fn alpha(self, k: usize) -> f64 {
        match self {
            Family::Laguerre => (2 * k + 1) as f64,
            _ => 0.0,
        }
    }

    fn beta(self, k: usize) -> f64 {
        let kf = k as f64;
        match (self, k) {
            (Family::Legendre, 0) => 2.0,
            (Family::Legendre, _) => kf * kf / (4.0 * kf * kf - 1.0),
            (Family::Laguerre, 0) => 1.0,
            (Family::Laguerre, _) => kf * kf,
            (Family::Hermite, 0) => sqrt(PI),
            (Family::Hermite, _) => kf / 2.0,
            (Family::ChebyshevFirstKind, 0) => PI,
            (Family::ChebyshevFirstKind, 1) => 0.5,
            (Family::ChebyshevFirstKind, _) => 0.25,
        }
    }

    /// Monic recurrence coefficients for degrees `0..=max_degree`, subject to
    /// [`DEFAULT_MAX_DEGREE`].
    pub fn recurrence(self, max_degree: usize) -> Result<RecurrenceCoeffs> {
        self.recurrence_with_cap(max_degree, DEFAULT_MAX_DEGREE)
    }

    /// As [`Family::recurrence`] with an explicit degree cap.
    pub fn recurrence_with_cap(self, max_degree: usize, cap: usize) -> Result<RecurrenceCoeffs> {
        if max_degree > cap {
            return Err(Error::DegreeCap {
                requested: max_degree,
                cap,
            });
        }
        let alpha = (0..=max_degree).map(|k| self.alpha(k)).collect();
        let beta = (0..=max_degree).map(|k| self.beta(k)).collect();
        Ok(RecurrenceCoeffs {
            family: self,
            alpha,
            beta,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "legendre" => Ok(Family::Legendre),
            "laguerre" => Ok(Family::Laguerre),
            "hermite" => Ok(Family::Hermite),
            "chebyshev" | "chebyshev1" | "chebyshev-first-kind" => Ok(Family::ChebyshevFirstKind),
            _ => Err(Error::UnsupportedFamily(s.to_string())),
        }
    }
}

/// Monic recurrence coefficients `alpha_0..alpha_N`, `beta_0..beta_N` of a
/// family, with `beta_0` equal to the zeroth moment.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceCoeffs {
    family: Family,
    alpha: Vec<f64>,
    beta: Vec<f64>,
}

impl RecurrenceCoeffs {
    /// Family the coefficients describe.
    pub fn family(&self) -> Family {
        self.family
    }

    /// Largest index `N` stored.
    pub fn max_degree(&self) -> usize {
        self.alpha.len() - 1
    }

    /// `alpha_0..alpha_N`.
    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    /// `beta_0..beta_N`.
    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    /// Zeroth moment of the weight.
    pub fn mass(&self) -> f64 {
        self.beta[0]
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.max_degree() {
            return Err(Error::DegreeOutOfRange {
                requested: n,
                available: self.max_degree(),
            });
        }
        Ok(())
    }

    /// Monic `P_n`.
    pub fn monic(&self, n: usize) -> Result<Polynomial> {
        self.check_degree(n)?;
        let mut prev = Polynomial::zero();
        let mut cur = Polynomial::one();
        for k in 0..n {
            let next = &cur.mul_linear(self.alpha[k]) - &prev.scale(self.beta[k]);
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    /// Orthonormal `P~_n = sigma_n P_n`, generated by the orthonormal
    /// recurrence `sqrt(beta_{k+1}) P~_{k+1} = (x - alpha_k) P~_k - sqrt(beta_k) P~_{k-1}`
    /// started from `P~_0 = 1/sqrt(beta_0)`.
    pub fn orthonormal(&self, n: usize) -> Result<Polynomial> {
        Ok(self.orthonormal_sequence(n)?.pop().expect("nonempty"))
    }

    /// `P~_0..=P~_n`.
    pub fn orthonormal_sequence(&self, n: usize) -> Result<Vec<Polynomial>> {
        self.check_degree(n)?;
        let mut out = Vec::with_capacity(n + 1);
        out.push(Polynomial::constant(1.0 / sqrt(self.beta[0])));
        for k in 0..n {
            let prev = if k == 0 {
                Polynomial::zero()
            } else {
                out[k - 1].scale(sqrt(self.beta[k]))
            };
            let next = (&out[k].mul_linear(self.alpha[k]) - &prev).scale(1.0 / sqrt(self.beta[k + 1]));
            out.push(next);
        }
        Ok(out)
    }

    /// `sigma_n = (beta_0 beta_1 ... beta_n)^{-1/2}`, the reciprocal norm of `P_n`.
    pub fn norm_factor(&self, n: usize) -> Result<f64> {
        self.check_degree(n)?;
        Ok(self.beta[..=n].iter().map(|b| 1.0 / sqrt(*b)).product())
    }

    /// Values `P~_0(x)..=P~_n(x)` by the orthonormal recurrence.
    pub fn orthonormal_values(&self, x: f64, n: usize) -> Result<Vec<f64>> {
        self.check_degree(n)?;
        let mut out = vec![0.0; n + 1];
        out[0] = 1.0 / sqrt(self.beta[0]);
        for k in 0..n {
            let prev = if k == 0 { 0.0 } else { sqrt(self.beta[k]) * out[k - 1] };
            out[k + 1] = ((x - self.alpha[k]) * out[k] - prev) / sqrt(self.beta[k + 1]);
        }
        Ok(out)
    }

    /// Values `P_0(x)..=P_n(x)` of the monic family.
    pub fn monic_values(&self, x: f64, n: usize) -> Result<Vec<f64>> {
        if n > self.max_degree() + 1 {
            return Err(Error::DegreeOutOfRange {
                requested: n,
                available: self.max_degree() + 1,
            });
        }
        let mut out = vec![0.0; n + 1];
        out[0] = 1.0;
        for k in 0..n {
            let prev = if k == 0 { 0.0 } else { self.beta[k] * out[k - 1] };
            out[k + 1] = (x - self.alpha[k]) * out[k] - prev;
        }
        Ok(out)
    }

    /// Monic `P_n(x)` and `P_n'(x)` by the recurrence. Only `alpha`/`beta`
    /// below index `n` are touched, so `n` may be `max_degree + 1`.
    pub fn monic_value_and_derivative(&self, x: f64, n: usize) -> Result<(f64, f64)> {
        if n > self.max_degree() + 1 {
            return Err(Error::DegreeOutOfRange {
                requested: n,
                available: self.max_degree() + 1,
            });
        }
        let (mut p0, mut p1) = (0.0, 1.0);
        let (mut d0, mut d1) = (0.0, 0.0);
        for k in 0..n {
            let p2 = (x - self.alpha[k]) * p1 - self.beta[k] * p0;
            let d2 = p1 + (x - self.alpha[k]) * d1 - self.beta[k] * d0;
            p0 = p1;
            p1 = p2;
            d0 = d1;
            d1 = d2;
        }
        Ok((p1, d1))
    }
}

//! Orthogonal polynomial families, zero-shifted "almost orthogonal"
//! polynomials and their quasi-orthogonal corrections.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of immutable inputs, so values can be shared freely between
//! threads.
//!
//! The moment functional of a family is realized through Gaussian
//! quadrature with enough nodes to be exact on every polynomial it is
//! applied to, which makes "orthogonal up to rounding" a testable claim.
//!
//! ```
//! use almost_ortho_core::{Family, MomentFunctional};
//!
//! let functional = MomentFunctional::new(Family::Legendre, 8).unwrap();
//! let p2 = functional.coeffs().orthonormal(2).unwrap();
//! let norm = functional.inner_product(&p2, &p2).unwrap();
//! assert!((norm - 1.0).abs() < 1e-12);
//! ```
#![cfg_attr(not(test), no_std)]
#![warn(missing_docs)]
#![warn(missing_debug_implementations)]
// `!(x <= tol)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod almost;
mod error;
pub mod families;
pub mod functional;
pub mod linalg;
mod math;
pub mod poly;
pub mod quasi;
pub mod tridiag;

pub use almost::{AlmostProfile, Perturbation, TauBoundParams, TauTable};
pub use error::{Error, Result};
pub use families::{Family, RecurrenceCoeffs, Support, DEFAULT_MAX_DEGREE};
pub use functional::{MomentFunctional, QuadratureRule};
pub use poly::{Polynomial, RootFactoredPolynomial, ZeroSet};
pub use quasi::{CorrectionSystem, OmegaSource, QuasiPolynomial};

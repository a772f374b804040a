//! Geometric-algebra numerics for prolate and oblate spheroidal domains.
//!
//! The crate is organised bottom-up:
//!
//! * [`ga`] dense multivectors of `G_d`, generic over float or exact rational
//!   coefficients.
//! * [`frames`] the azimuth-dependent quaternion frame `{I_p, J_p, K_p}` and the
//!   even element `z = cosh(eta + I_p theta)` with its partial derivatives.
//! * [`spheroidal`] position maps, focal-distance sums, inversion, tangent and
//!   reciprocal frames, bounding unit spheroids.
//! * [`projection`] spheroidal-graphic and stereographic projection.
//! * [`diffops`] finite-difference and analytic differential operators, exact
//!   multivector polynomials and the Euclidean symmetry-operator algebra.
//! * [`harmonics`] Legendre functions and separated Laplace solutions.
//! * [`monogenic`] paravectors, Cauchy kernel, CK extensions and the
//!   quasi-monogenic family.
//! * [`suites`] named verification suites producing [`report::Report`]s.

pub mod diffops;
pub mod frames;
pub mod harmonics;
pub mod monogenic;
pub mod ga;
pub mod report;
pub mod sampling;
pub mod projection;
pub mod spheroidal;
pub mod suites;

mod error;

pub use error::{Error, Result};

//! Dense multivectors of the Euclidean algebras `G_d`, `d <= 6`.
//!
//! Blades are indexed by bitmask (bit `k` set when `e_k` is a factor) with
//! generators in ascending order as the canonical sign. The coefficient type
//! is generic so the same products serve float numerics and exact rational
//! polynomial algebra.

mod multivector;
mod scalar;

pub use multivector::{blade_grade, blade_name, blade_sign, Multivector, MAX_DIM};
pub use scalar::{rat, Rational, Scalar};

/// Float multivector in `G_3`, the workhorse of the coordinate modules.
pub type Mv = Multivector<f64>;

/// `e_k` in `G_3`.
pub fn e(k: usize) -> Mv {
    Multivector::basis(3, k)
}

/// Pseudoscalar `e_012` of `G_3`.
pub fn pseudoscalar3() -> Mv {
    Multivector::blade(3, 0b111, 1.0)
}

/// Grade-1 element of `G_3` from Cartesian components.
pub fn vec3(x0: f64, x1: f64, x2: f64) -> Mv {
    Multivector::vector(3, &[x0, x1, x2])
}

pub fn scalar3(v: f64) -> Mv {
    Multivector::scalar(3, v)
}

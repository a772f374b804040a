use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use super::scalar::{abs_f64, Scalar};
use crate::error::{Error, Result};

/// Largest supported number of generators.
pub const MAX_DIM: usize = 6;

const TABLE_SIZE: usize = 1 << MAX_DIM;

/// Reordering sign for the blade product `e_A e_B` where `A`, `B` are
/// bitmasks of ascending generator indices.
fn compute_sign(a: usize, b: usize) -> i8 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

fn sign_table() -> &'static [[i8; TABLE_SIZE]; TABLE_SIZE] {
    static TABLE: OnceLock<Box<[[i8; TABLE_SIZE]; TABLE_SIZE]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0i8; TABLE_SIZE]; TABLE_SIZE]);
        for (a, row) in t.iter_mut().enumerate() {
            for (b, s) in row.iter_mut().enumerate() {
                *s = compute_sign(a, b);
            }
        }
        t
    })
}

/// Sign of `e_A e_B = sign * e_{A xor B}` in a Euclidean algebra.
#[inline]
pub fn blade_sign(a: usize, b: usize) -> i8 {
    sign_table()[a][b]
}

/// Dense multivector of `G_dim`, coefficients indexed by blade bitmask.
#[derive(Clone, PartialEq, Debug)]
pub struct Multivector<T = f64> {
    dim: usize,
    coeffs: Vec<T>,
}

/// Grade of the blade with bitmask `mask`.
#[inline]
pub fn blade_grade(mask: usize) -> usize {
    mask.count_ones() as usize
}

fn check_dim(dim: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

impl<T: Scalar> Multivector<T> {
    pub fn new(dim: usize, coeffs: Vec<T>) -> Result<Self> {
        check_dim(dim)?;
        if coeffs.len() != 1 << dim {
            return Err(Error::InvalidArgument(format!(
                "G_{dim} needs {} coefficients, got {}",
                1 << dim,
                coeffs.len()
            )));
        }
        Ok(Self { dim, coeffs })
    }

    /// Panics if `dim` is outside `1..=6`.
    pub fn zero(dim: usize) -> Self {
        check_dim(dim).expect("multivector dimension");
        Self {
            dim,
            coeffs: vec![T::zero(); 1 << dim],
        }
    }

    pub fn scalar(dim: usize, v: T) -> Self {
        Self::blade(dim, 0, v)
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, T::one())
    }

    pub fn blade(dim: usize, mask: usize, v: T) -> Self {
        let mut m = Self::zero(dim);
        m.coeffs[mask] = v;
        m
    }

    /// Unit generator `e_k`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "generator e{k} outside G_{dim}");
        Self::blade(dim, 1 << k, T::one())
    }

    /// Grade-1 element `sum_k c_k e_k`.
    pub fn vector(dim: usize, components: &[T]) -> Self {
        assert!(components.len() <= dim);
        let mut m = Self::zero(dim);
        for (k, c) in components.iter().enumerate() {
            m.coeffs[1 << k] = c.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: usize) -> &T {
        &self.coeffs[mask]
    }

    pub fn set_coeff(&mut self, mask: usize, v: T) {
        self.coeffs[mask] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scalar_part(&self) -> T {
        self.coeffs[0].clone()
    }

    /// Components along `e_0 .. e_{dim-1}`.
    pub fn vector_part(&self) -> Vec<T> {
        (0..self.dim).map(|k| self.coeffs[1 << k].clone()).collect()
    }

    pub fn grade_project(&self, k: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(mask, c)| {
                if blade_grade(mask) == k {
                    c.clone()
                } else {
                    T::zero()
                }
            })
            .collect();
        Self {
            dim: self.dim,
            coeffs,
        }
    }

    /// Grades carrying a non-negligible coefficient.
    pub fn grades(&self) -> Vec<usize> {
        let scale = self.max_abs();
        let mut present = vec![false; self.dim + 1];
        for (mask, c) in self.coeffs.iter().enumerate() {
            if !c.is_negligible(scale) {
                present[blade_grade(mask)] = true;
            }
        }
        (0..=self.dim).filter(|&g| present[g]).collect()
    }

    /// True when every coefficient outside grade `k` is negligible.
    pub fn is_grade(&self, k: usize) -> bool {
        let scale = self.max_abs();
        self.coeffs
            .iter()
            .enumerate()
            .all(|(mask, c)| blade_grade(mask) == k || c.is_negligible(scale))
    }

    fn map_by_grade(&self, f: impl Fn(usize) -> bool) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(mask, c)| if f(blade_grade(mask)) { -c.clone() } else { c.clone() })
            .collect();
        Self {
            dim: self.dim,
            coeffs,
        }
    }

    /// Reversion: grade `k` picks up `(-1)^{k(k-1)/2}`.
    pub fn reverse(&self) -> Self {
        self.map_by_grade(|g| (g * g.saturating_sub(1) / 2) % 2 == 1)
    }

    /// Main involution: odd grades change sign.
    pub fn grade_involution(&self) -> Self {
        self.map_by_grade(|g| g % 2 == 1)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Multivector<U> {
        Multivector {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> Multivector<f64> {
        self.map(|c| c.to_f64())
    }

    /// Largest coefficient magnitude, as a float.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(abs_f64).fold(0.0, f64::max)
    }

    /// Sum of squared coefficients (the Euclidean norm of `A rev(A)` scalar part).
    pub fn norm_sq(&self) -> T {
        self.coeffs
            .iter()
            .fold(T::zero(), |acc, c| acc + c.clone() * c.clone())
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }

    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let mut out = vec![T::zero(); self.coeffs.len()];
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let term = ca.clone() * cb.clone();
                let slot = &mut out[a ^ b];
                if blade_sign(a, b) > 0 {
                    *slot = slot.clone() + term;
                } else {
                    *slot = slot.clone() - term;
                }
            }
        }
        Ok(Self {
            dim: self.dim,
            coeffs: out,
        })
    }

    /// Outer product, extended bilinearly from `e_A ^ e_B = e_A e_B` for
    /// disjoint blades and zero otherwise.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let mut out = vec![T::zero(); self.coeffs.len()];
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if a & b != 0 || cb.is_zero() {
                    continue;
                }
                let term = ca.clone() * cb.clone();
                let slot = &mut out[a | b];
                if blade_sign(a, b) > 0 {
                    *slot = slot.clone() + term;
                } else {
                    *slot = slot.clone() - term;
                }
            }
        }
        Ok(Self {
            dim: self.dim,
            coeffs: out,
        })
    }

    /// Symmetric and antisymmetric halves `(ab+ba)/2`, `(ab-ba)/2`.
    /// For vectors these are the dot and wedge products.
    pub fn dot_wedge(&self, other: &Self) -> Result<(Self, Self)> {
        let ab = self.geometric_product(other)?;
        let ba = other.geometric_product(self)?;
        let half = T::half();
        let dot = (&ab + &ba).scale(&half);
        let wedge = (&ab - &ba).scale(&half);
        Ok((dot, wedge))
    }

    /// Inverse of a versor-like element: `rev(a) / (a rev(a))` when
    /// `a rev(a)` is a nonzero scalar.
    pub fn inverse(&self) -> Result<Self> {
        let rev = self.reverse();
        let prod = self.geometric_product(&rev)?;
        let s = prod.scalar_part();
        let scale = prod.max_abs();
        let non_scalar = prod
            .coeffs
            .iter()
            .skip(1)
            .any(|c| !c.is_negligible(scale));
        if non_scalar {
            return Err(Error::Singular(format!(
                "a*rev(a) is not a scalar for {}",
                self.to_f64()
            )));
        }
        if s.is_zero() || s.is_negligible(abs_f64(&self.norm_sq())) {
            return Err(Error::Singular("a*rev(a) vanishes".into()));
        }
        Ok(rev.scale(&(T::one() / s)))
    }
}

impl Multivector<f64> {
    /// Euclidean coefficient norm `sqrt(sum c^2)`.
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Largest coefficient difference against `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// JSON-friendly form `[dim, c_0, c_1, ...]`.
    pub fn to_array(&self) -> Vec<f64> {
        std::iter::once(self.dim as f64)
            .chain(self.coeffs.iter().copied())
            .collect()
    }

    pub fn from_array(values: &[f64]) -> Result<Self> {
        let (dim, rest) = values
            .split_first()
            .ok_or_else(|| Error::InvalidArgument("empty multivector array".into()))?;
        if dim.fract() != 0.0 || *dim < 1.0 {
            return Err(Error::InvalidArgument(format!("bad dimension {dim}")));
        }
        Self::new(*dim as usize, rest.to_vec())
    }
}

/// Name of the blade with bitmask `mask`, e.g. `e012`.
pub fn blade_name(mask: usize) -> String {
    if mask == 0 {
        return String::new();
    }
    let mut name = String::from("e");
    for k in 0..MAX_DIM {
        if mask & (1 << k) != 0 {
            name.push_str(&k.to_string());
        }
    }
    name
}

impl<T: Scalar + fmt::Display> fmt::Display for Multivector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // grade-major order reads better than raw bitmask order
        let mut masks: Vec<usize> = (0..self.coeffs.len()).collect();
        masks.sort_by_key(|&m| (blade_grade(m), m));
        let mut first = true;
        for mask in masks {
            let c = &self.coeffs[mask];
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if mask == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c} {}", blade_name(mask))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl serde::Serialize for Multivector<f64> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Multivector<f64> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<f64>::deserialize(d)?;
        Self::from_array(&values).map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<T: Scalar> $trait<&Multivector<T>> for &Multivector<T> {
            type Output = Multivector<T>;
            fn $method(self, rhs: &Multivector<T>) -> Multivector<T> {
                let f: fn(&Multivector<T>, &Multivector<T>) -> Multivector<T> = $body;
                f(self, rhs)
            }
        }
        impl<T: Scalar> $trait<Multivector<T>> for Multivector<T> {
            type Output = Multivector<T>;
            fn $method(self, rhs: Multivector<T>) -> Multivector<T> {
                (&self).$method(&rhs)
            }
        }
        impl<T: Scalar> $trait<&Multivector<T>> for Multivector<T> {
            type Output = Multivector<T>;
            fn $method(self, rhs: &Multivector<T>) -> Multivector<T> {
                (&self).$method(rhs)
            }
        }
        impl<T: Scalar> $trait<Multivector<T>> for &Multivector<T> {
            type Output = Multivector<T>;
            fn $method(self, rhs: Multivector<T>) -> Multivector<T> {
                self.$method(&rhs)
            }
        }
    };
}

fn zip_with<T: Scalar>(
    a: &Multivector<T>,
    b: &Multivector<T>,
    f: impl Fn(T, T) -> T,
) -> Multivector<T> {
    assert_eq!(a.dim, b.dim, "multivector dimension mismatch");
    Multivector {
        dim: a.dim,
        coeffs: a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| f(x.clone(), y.clone()))
            .collect(),
    }
}

// Operators panic on dimension mismatch; the fallible forms are the
// named methods.
binop!(Add, add, |a, b| zip_with(a, b, |x, y| x + y));
binop!(Sub, sub, |a, b| zip_with(a, b, |x, y| x - y));
binop!(Mul, mul, |a, b| a
    .geometric_product(b)
    .expect("multivector dimension mismatch"));

impl<T: Scalar> Neg for Multivector<T> {
    type Output = Multivector<T>;
    fn neg(self) -> Multivector<T> {
        -&self
    }
}

impl<T: Scalar> Neg for &Multivector<T> {
    type Output = Multivector<T>;
    fn neg(self) -> Multivector<T> {
        Multivector {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<T: Scalar> AddAssign<&Multivector<T>> for Multivector<T> {
    fn add_assign(&mut self, rhs: &Multivector<T>) {
        assert_eq!(self.dim, rhs.dim, "multivector dimension mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a = a.clone() + b.clone();
        }
    }
}

impl<T: Scalar> SubAssign<&Multivector<T>> for Multivector<T> {
    fn sub_assign(&mut self, rhs: &Multivector<T>) {
        assert_eq!(self.dim, rhs.dim, "multivector dimension mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a = a.clone() - b.clone();
        }
    }
}

impl Mul<f64> for Multivector<f64> {
    type Output = Multivector<f64>;
    fn mul(self, rhs: f64) -> Multivector<f64> {
        self.scale(&rhs)
    }
}

impl Mul<f64> for &Multivector<f64> {
    type Output = Multivector<f64>;
    fn mul(self, rhs: f64) -> Multivector<f64> {
        self.scale(&rhs)
    }
}

impl Mul<Multivector<f64>> for f64 {
    type Output = Multivector<f64>;
    fn mul(self, rhs: Multivector<f64>) -> Multivector<f64> {
        rhs.scale(&self)
    }
}

impl Mul<&Multivector<f64>> for f64 {
    type Output = Multivector<f64>;
    fn mul(self, rhs: &Multivector<f64>) -> Multivector<f64> {
        rhs.scale(&self)
    }
}

impl Div<f64> for Multivector<f64> {
    type Output = Multivector<f64>;
    fn div(self, rhs: f64) -> Multivector<f64> {
        self.scale(&(1.0 / rhs))
    }
}

impl Div<f64> for &Multivector<f64> {
    type Output = Multivector<f64>;
    fn div(self, rhs: f64) -> Multivector<f64> {
        self.scale(&(1.0 / rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ga::scalar::{rat, Rational};

    fn e(k: usize) -> Multivector {
        Multivector::basis(3, k)
    }

    #[test]
    fn generators_square_to_one_and_anticommute() {
        let one = Multivector::one(3);
        for k in 0..3 {
            assert_eq!(&e(k) * &e(k), one);
        }
        let e12 = Multivector::blade(3, 0b110, 1.0);
        assert_eq!(&e(1) * &e(2), e12);
        assert_eq!(&e(2) * &e(1), -e12);
    }

    #[test]
    fn unit_bivector_squares_to_minus_one() {
        let e01 = &e(0) * &e(1);
        assert_eq!(&e01 * &e01, Multivector::scalar(3, -1.0));
    }

    #[test]
    fn dot_wedge_of_vectors() {
        let a = Multivector::vector(3, &[3.0, 4.0, 0.0]);
        let (dot, wedge) = a.dot_wedge(&e(0)).unwrap();
        assert_eq!(dot, Multivector::scalar(3, 3.0));
        // 4 e1 ^ e0 = -4 e01
        assert_eq!(wedge, Multivector::blade(3, 0b011, -4.0));
        let (dot, wedge) = e(1).dot_wedge(&e(1)).unwrap();
        assert_eq!(dot, Multivector::one(3));
        assert!(wedge.is_zero());
        let (dot, wedge) = e(1).dot_wedge(&e(2)).unwrap();
        assert!(dot.is_zero());
        assert_eq!(wedge, Multivector::blade(3, 0b110, 1.0));
    }

    #[test]
    fn inverses() {
        let two = Multivector::scalar(3, 2.0);
        assert_eq!(two.inverse().unwrap(), Multivector::scalar(3, 0.5));

        let v = &e(0) + &e(1);
        assert_eq!(v.inverse().unwrap(), &v * 0.5);

        let e12 = Multivector::blade(3, 0b110, 1.0);
        assert_eq!(e12.inverse().unwrap(), -&e12);

        let mixed = &Multivector::one(3) + &e(0);
        assert!(matches!(mixed.inverse(), Err(Error::Singular(_))));
        assert!(Multivector::<f64>::zero(3).inverse().is_err());
    }

    #[test]
    fn inverse_of_rotor_like_element() {
        let i_p = &e(1) * &e(0);
        let z = &Multivector::scalar(3, 0.3) + &(&i_p * 1.7);
        let prod = &z.inverse().unwrap() * &z;
        assert!(prod.approx_eq(&Multivector::one(3), 1e-15));
    }

    #[test]
    fn pseudoscalar_is_central_and_squares_to_minus_one() {
        let i = Multivector::blade(3, 0b111, 1.0);
        assert_eq!(&i * &i, Multivector::scalar(3, -1.0));
        for mask in 0..8 {
            let b = Multivector::blade(3, mask, 1.0);
            assert_eq!(&i * &b, &b * &i);
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Multivector::<f64>::one(2);
        let b = Multivector::<f64>::one(3);
        assert_eq!(
            a.geometric_product(&b),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        );
        assert!(Multivector::<f64>::new(7, vec![0.0; 128]).is_err());
        assert!(Multivector::<f64>::new(3, vec![0.0; 4]).is_err());
    }

    #[test]
    fn exact_rational_products() {
        let a = Multivector::vector(3, &[rat(1, 2), rat(-3, 4), rat(2, 1)]);
        let sq: Multivector<Rational> = &a * &a;
        assert_eq!(sq, Multivector::scalar(3, rat(1, 4) + rat(9, 16) + rat(4, 1)));
    }

    #[test]
    fn grade_projection_sums_back() {
        let m = Multivector::new(3, (0..8).map(|v| v as f64 + 0.5).collect()).unwrap();
        let mut sum = Multivector::zero(3);
        for k in 0..=3 {
            let part = m.grade_project(k);
            assert!(part.is_grade(k));
            sum += &part;
        }
        assert_eq!(sum, m);
    }

    #[test]
    fn rendering() {
        let m = Multivector::new(3, vec![1.0, 2.0, 0.0, 0.0, 0.0, 0.0, -3.0, 0.0]).unwrap();
        assert_eq!(m.to_string(), "1 + 2 e0 + -3 e12");
        assert_eq!(Multivector::<f64>::zero(2).to_string(), "0");
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, "[3.0,1.0,2.0,0.0,0.0,0.0,0.0,-3.0,0.0]");
        let back: Multivector = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }
}

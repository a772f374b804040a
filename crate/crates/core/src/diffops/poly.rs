//! Polynomials in commuting real variables with exact multivector
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ga::{blade_name, Multivector, Mv, Rational, Scalar};

pub type RMv = Multivector<Rational>;

/// `sum_alpha c_alpha x^alpha` with `c_alpha` in `G_dim` over the rationals.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvPolynomial {
    nvars: usize,
    dim: usize,
    terms: BTreeMap<Vec<u32>, RMv>,
}

impl Eq for Multivector<Rational> {}

impl MvPolynomial {
    pub fn zero(nvars: usize, dim: usize) -> Self {
        Self {
            nvars,
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: RMv) -> Self {
        let mut p = Self::zero(nvars, c.dim());
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn scalar(nvars: usize, dim: usize, v: Rational) -> Self {
        Self::constant(nvars, RMv::scalar(dim, v))
    }

    pub fn one(nvars: usize, dim: usize) -> Self {
        Self::scalar(nvars, dim, Rational::one())
    }

    /// The coordinate `x_i` as a scalar-valued polynomial.
    pub fn var(nvars: usize, dim: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::monomial(exps, RMv::one(dim))
    }

    pub fn monomial(exps: Vec<u32>, c: RMv) -> Self {
        let mut p = Self::zero(exps.len(), c.dim());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &RMv)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Option<&RMv> {
        self.terms.get(exps)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: RMv) {
        assert_eq!(exps.len(), self.nvars, "exponent arity");
        assert_eq!(c.dim(), self.dim, "coefficient dimension");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.nvars != other.nvars {
            return Err(Error::InvalidArgument(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    /// Product with coefficients multiplied geometrically, `self` on the left.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.nvars, self.dim);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca.geometric_product(cb)?);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars, self.dim);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `c * self` with a constant multivector on the left.
    pub fn left_mul(&self, c: &RMv) -> Self {
        let mut out = Self::zero(self.nvars, self.dim);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), c * v);
        }
        out
    }

    /// `self * c` with a constant multivector on the right.
    pub fn right_mul(&self, c: &RMv) -> Self {
        let mut out = Self::zero(self.nvars, self.dim);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(s))
    }

    pub fn map_coeffs(&self, f: impl Fn(&RMv) -> RMv) -> Self {
        let mut out = Self::zero(self.nvars, self.dim);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    pub fn grade_project(&self, k: usize) -> Self {
        self.map_coeffs(|c| c.grade_project(k))
    }

    /// `d/dx_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.dim);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[i] -= 1;
            out.add_term(exps, c.scale(&Rational::from_i64(e[i] as i64)));
        }
        out
    }

    /// `sum_i d^2/dx_i^2`.
    pub fn laplacian(&self) -> Self {
        (0..self.nvars).fold(Self::zero(self.nvars, self.dim), |acc, i| {
            &acc + &self.partial(i).partial(i)
        })
    }

    /// Left gradient `sum_k e_k d_k f` with variable `k` paired to `e_k`.
    pub fn gradient(&self) -> Self {
        let mut out = Self::zero(self.nvars, self.dim);
        for k in 0..self.nvars.min(self.dim) {
            out = &out + &self.partial(k).left_mul(&RMv::basis(self.dim, k));
        }
        out
    }

    /// Multiply every term by `x_i`.
    pub fn shift(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.dim);
        for (e, c) in &self.terms {
            let mut exps = e.clone();
            exps[i] += 1;
            out.add_term(exps, c.clone());
        }
        out
    }

    pub fn eval(&self, x: &[f64]) -> Mv {
        let mut out = Mv::zero(self.dim);
        for (e, c) in &self.terms {
            let m: f64 = e.iter().zip(x).map(|(&k, &v)| v.powi(k as i32)).product();
            out += &(&c.to_f64() * m);
        }
        out
    }

    /// Rational evaluation.
    pub fn eval_exact(&self, x: &[Rational]) -> RMv {
        let mut out = RMv::zero(self.dim);
        for (e, c) in &self.terms {
            let mut m = Rational::one();
            for (&k, v) in e.iter().zip(x) {
                for _ in 0..k {
                    m = m * v.clone();
                }
            }
            out += &c.scale(&m);
        }
        out
    }

    /// Render with the given variable names, e.g. `-11 x0^10 + 165 x0^8 xp^2`.
    pub fn render(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts: Vec<(bool, String)> = Vec::new();
        // highest total degree first, then lexicographically by exponent
        let mut keys: Vec<_> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for exps in keys {
            let c = &self.terms[exps];
            let mono = render_monomial(exps, names);
            for (mask, v) in c.coeffs().iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let neg = v.is_negative();
                let mag = v.abs();
                let mut s = String::new();
                let blade = if mask == 0 { String::new() } else { blade_name(mask) };
                let bare = mono.is_empty() && blade.is_empty();
                if !mag.is_one() || bare {
                    s.push_str(&mag.to_string());
                }
                for piece in [mono.as_str(), blade.as_str()] {
                    if piece.is_empty() {
                        continue;
                    }
                    if !s.is_empty() {
                        s.push(' ');
                    }
                    s.push_str(piece);
                }
                parts.push((neg, s));
            }
        }
        let mut out = String::new();
        for (i, (neg, s)) in parts.into_iter().enumerate() {
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&s);
        }
        out
    }
}

fn render_monomial(exps: &[u32], names: &[&str]) -> String {
    let mut s = Vec::new();
    for (i, &k) in exps.iter().enumerate() {
        let name = names.get(i).copied().unwrap_or("x?");
        match k {
            0 => {}
            1 => s.push(name.to_string()),
            _ => s.push(format!("{name}^{k}")),
        }
    }
    s.join(" ")
}

impl fmt::Display for MvPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.render(&refs))
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl std::ops::$trait<&MvPolynomial> for &MvPolynomial {
            type Output = MvPolynomial;
            fn $method(self, rhs: &MvPolynomial) -> MvPolynomial {
                let f: fn(&MvPolynomial, &MvPolynomial) -> MvPolynomial = $body;
                f(self, rhs)
            }
        }
        impl std::ops::$trait<MvPolynomial> for MvPolynomial {
            type Output = MvPolynomial;
            fn $method(self, rhs: MvPolynomial) -> MvPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

// Operators panic on incompatible shapes; `try_*` report them.
poly_binop!(Add, add, |a, b| a.try_add(b).expect("incompatible polynomials"));
poly_binop!(Sub, sub, |a, b| a
    .try_add(&-b)
    .expect("incompatible polynomials"));
poly_binop!(Mul, mul, |a, b| a.try_mul(b).expect("incompatible polynomials"));

impl std::ops::Neg for &MvPolynomial {
    type Output = MvPolynomial;
    fn neg(self) -> MvPolynomial {
        self.map_coeffs(|c| -c)
    }
}

impl std::ops::Neg for MvPolynomial {
    type Output = MvPolynomial;
    fn neg(self) -> MvPolynomial {
        -&self
    }
}

/// All exponent tuples in `nvars` variables of total degree `<= max_degree`.
pub fn monomial_exponents(nvars: usize, max_degree: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == nvars {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=left {
            prefix.push(k);
            rec(nvars, left - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, max_degree, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ga::rat;

    fn x(i: usize) -> MvPolynomial {
        MvPolynomial::var(3, 3, i)
    }

    #[test]
    fn ring_basics() {
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        let q = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn coefficients_multiply_geometrically() {
        let e0 = MvPolynomial::constant(3, RMv::basis(3, 0));
        let e1 = MvPolynomial::constant(3, RMv::basis(3, 1));
        let a = &(&e0 * &e1) + &(&e1 * &e0);
        assert!(a.is_zero());
    }

    #[test]
    fn derivatives() {
        let p = x(0).pow(3).scale(&rat(1, 3));
        assert_eq!(p.partial(0), x(0).pow(2));
        let r2 = &(&x(0).pow(2) + &x(1).pow(2)) + &x(2).pow(2);
        assert_eq!(r2.laplacian(), MvPolynomial::scalar(3, 3, rat(6, 1)));
        // grad r^2 = 2x
        let g = r2.gradient();
        let expect = (0..3).fold(MvPolynomial::zero(3, 3), |acc, k| {
            &acc + &x(k).left_mul(&RMv::basis(3, k)).scale(&rat(2, 1))
        });
        assert_eq!(g, expect);
    }

    #[test]
    fn evaluation_and_rendering() {
        let p = &x(0).pow(2).scale(&rat(-3, 2)) + &x(1).left_mul(&RMv::basis(3, 2));
        let v = p.eval(&[2.0, 5.0, 0.0]);
        assert_eq!(v.scalar_part(), -6.0);
        assert_eq!(v.coeff(0b100), &5.0);
        assert_eq!(p.render(&["a", "b", "c"]), "-3/2 a^2 + b e2");
        assert_eq!(MvPolynomial::zero(3, 3).to_string(), "0");
        let exact = p.eval_exact(&[rat(1, 2), rat(1, 1), rat(0, 1)]);
        assert_eq!(exact.scalar_part(), rat(-3, 8));
    }

    #[test]
    fn monomial_count() {
        // C(3 + 4, 3) = 35 monomials of degree <= 4 in 3 variables
        assert_eq!(monomial_exponents(3, 4).len(), 35);
    }
}

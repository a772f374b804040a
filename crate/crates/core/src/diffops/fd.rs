//! Central finite differences on black-box multivector fields.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ga::{e, Mv};
use crate::spheroidal::CartesianPoint;

/// Default step for first derivatives.
pub const H_FIRST: f64 = 1e-5;
/// Default step for second derivatives.
pub const H_SECOND: f64 = 1e-4;

type Eval = dyn Fn(&[f64; 3]) -> Result<Mv> + Send + Sync;

/// A multivector field on (a box in) `R^3`.
#[derive(Clone)]
pub struct FieldFn {
    eval: Arc<Eval>,
    domain: Option<([f64; 3], [f64; 3])>,
}

impl std::fmt::Debug for FieldFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldFn").field("domain", &self.domain).finish()
    }
}

impl FieldFn {
    pub fn new(f: impl Fn(&[f64; 3]) -> Result<Mv> + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(f),
            domain: None,
        }
    }

    pub fn scalar(f: impl Fn(&[f64; 3]) -> f64 + Send + Sync + 'static) -> Self {
        Self::new(move |x| Ok(Mv::scalar(3, f(x))))
    }

    /// Restrict to the closed box `lo <= x <= hi`.
    pub fn with_domain(mut self, lo: [f64; 3], hi: [f64; 3]) -> Self {
        self.domain = Some((lo, hi));
        self
    }

    pub fn contains(&self, x: &[f64; 3]) -> bool {
        match &self.domain {
            None => true,
            Some((lo, hi)) => (0..3).all(|k| lo[k] <= x[k] && x[k] <= hi[k]),
        }
    }

    pub fn eval(&self, x: &[f64; 3]) -> Result<Mv> {
        if !self.contains(x) {
            return Err(Error::StencilOutsideDomain(x.to_vec()));
        }
        (self.eval)(x)
    }

    pub fn at(&self, x: &CartesianPoint) -> Result<Mv> {
        self.eval(&x.0)
    }
}

/// Stencil accuracy order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FdOrder {
    Second,
    Fourth,
}

fn shifted(x: &[f64; 3], k: usize, d: f64) -> [f64; 3] {
    let mut y = *x;
    y[k] += d;
    y
}

fn check_step(h: f64) -> Result<()> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidArgument(format!("fd step {h} must be > 0")));
    }
    Ok(())
}

/// `d_k f` by central differences.
pub fn fd_partial(f: &FieldFn, x: &[f64; 3], k: usize, h: f64, order: FdOrder) -> Result<Mv> {
    check_step(h)?;
    let p1 = f.eval(&shifted(x, k, h))?;
    let m1 = f.eval(&shifted(x, k, -h))?;
    match order {
        FdOrder::Second => Ok(&(&p1 - &m1) / (2.0 * h)),
        FdOrder::Fourth => {
            let p2 = f.eval(&shifted(x, k, 2.0 * h))?;
            let m2 = f.eval(&shifted(x, k, -2.0 * h))?;
            let num = &(&(&(&p1 - &m1) * 8.0) - &p2) + &m2;
            Ok(&num / (12.0 * h))
        }
    }
}

/// `d_k^2 f` by central differences.
pub fn fd_second(f: &FieldFn, x: &[f64; 3], k: usize, h: f64, order: FdOrder) -> Result<Mv> {
    check_step(h)?;
    let c = f.eval(x)?;
    let p1 = f.eval(&shifted(x, k, h))?;
    let m1 = f.eval(&shifted(x, k, -h))?;
    match order {
        FdOrder::Second => Ok(&(&(&p1 + &m1) - &(&c * 2.0)) / (h * h)),
        FdOrder::Fourth => {
            let p2 = f.eval(&shifted(x, k, 2.0 * h))?;
            let m2 = f.eval(&shifted(x, k, -2.0 * h))?;
            let num = &(&(&(&p1 + &m1) * 16.0) - &(&p2 + &m2)) - &(&c * 30.0);
            Ok(&num / (12.0 * h * h))
        }
    }
}

/// `sum_k e_k (f(x + h e_k) - f(x - h e_k)) / 2h`, with `e_k` multiplying
/// from the left.
pub fn fd_gradient(f: &FieldFn, x: &CartesianPoint, h: f64) -> Result<Mv> {
    fd_gradient_order(f, x, h, FdOrder::Second)
}

pub fn fd_gradient_order(f: &FieldFn, x: &CartesianPoint, h: f64, order: FdOrder) -> Result<Mv> {
    let mut out = Mv::zero(3);
    for k in 0..3 {
        out += &(&e(k) * &fd_partial(f, &x.0, k, h, order)?);
    }
    Ok(out)
}

/// `sum_k d_k^2 f` with the 7-point stencil.
pub fn fd_laplacian(f: &FieldFn, x: &CartesianPoint, h: f64) -> Result<Mv> {
    fd_laplacian_order(f, x, h, FdOrder::Second)
}

pub fn fd_laplacian_order(f: &FieldFn, x: &CartesianPoint, h: f64, order: FdOrder) -> Result<Mv> {
    let mut out = Mv::zero(3);
    for k in 0..3 {
        out += &fd_second(f, &x.0, k, h, order)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ga::vec3;

    #[test]
    fn gradient_of_radius_squared() {
        let f = FieldFn::scalar(|x| x.iter().map(|c| c * c).sum());
        let x = CartesianPoint::new(0.3, -1.2, 2.0);
        let g = fd_gradient(&f, &x, H_FIRST).unwrap();
        assert!(g.approx_eq(&vec3(0.6, -2.4, 4.0), 1e-8), "{g}");
    }

    #[test]
    fn gradient_of_vector_field_is_left_product() {
        // grad (x0 e0) = e0 e0 = 1
        let f = FieldFn::new(|x| Ok(&e(0) * x[0]));
        let g = fd_gradient(&f, &CartesianPoint::new(0.4, 0.1, 0.2), H_FIRST).unwrap();
        assert!(g.approx_eq(&Mv::scalar(3, 1.0), 1e-9), "{g}");
        // grad (x1 e0) = e1 e0
        let f = FieldFn::new(|x| Ok(&e(0) * x[1]));
        let g = fd_gradient(&f, &CartesianPoint::new(0.4, 0.1, 0.2), H_FIRST).unwrap();
        assert!(g.approx_eq(&(&e(1) * &e(0)), 1e-9), "{g}");
    }

    #[test]
    fn laplacian_orders() {
        let f = FieldFn::scalar(|x| (x[0] * 0.7).exp() * (x[1] * 0.3).sin() + x[2].powi(4));
        let x = CartesianPoint::new(0.2, 0.5, 0.6);
        let exact = (0.49 - 0.09) * (0.14f64).exp() * (0.15f64).sin() + 12.0 * 0.36;
        let l2 = fd_laplacian(&f, &x, H_SECOND).unwrap().scalar_part();
        let l4 = fd_laplacian_order(&f, &x, 1e-3, FdOrder::Fourth).unwrap().scalar_part();
        assert!((l2 - exact).abs() < 1e-6);
        assert!((l4 - exact).abs() < 1e-9);
    }

    #[test]
    fn domain_is_enforced() {
        let f = FieldFn::scalar(|x| x[0]).with_domain([0.0; 3], [1.0; 3]);
        let err = fd_gradient(&f, &CartesianPoint::new(0.0, 0.5, 0.5), 1e-3).unwrap_err();
        assert!(matches!(err, Error::StencilOutsideDomain(_)));
        assert!(fd_gradient(&f, &CartesianPoint::new(0.5, 0.5, 0.5), 0.0).is_err());
    }
}

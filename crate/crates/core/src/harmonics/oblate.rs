//! Numerical radial factor for oblate modes.
//!
//! Solves `N'' + tanh(eta) N' + (-m^2 tanh^2 eta + c) N = 0` with the
//! separation constant `c = m^2 - n(n+1)` by classical RK4 on a uniform
//! grid. Between nodes the solution is produced by one RK4 step from the
//! nearest node, so the interpolant is smooth to integration accuracy.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonics::Kind;

/// Integration step.
pub const OBLATE_STEP: f64 = 5e-4;
/// Extra tabulated range so stencils at `eta_max` stay inside.
const MARGIN: f64 = 0.01;
/// Distance past the requested range where the decaying solution is
/// started from its asymptotic form.
const EXTERIOR_RUNWAY: f64 = 20.0;

/// Separation constant shared by the radial and angular equations.
pub fn separation_constant(n: u32, m: u32) -> f64 {
    f64::from(m * m) - f64::from(n) * f64::from(n + 1)
}

fn rhs(m: u32, c: f64, eta: f64, y: [f64; 2]) -> [f64; 2] {
    let t = eta.tanh();
    let m2 = f64::from(m * m);
    [y[1], -t * y[1] - (c - m2 * t * t) * y[0]]
}

fn rk4(m: u32, c: f64, eta: f64, y: [f64; 2], h: f64) -> [f64; 2] {
    let k1 = rhs(m, c, eta, y);
    let y2 = [y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]];
    let k2 = rhs(m, c, eta + 0.5 * h, y2);
    let y3 = [y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]];
    let k3 = rhs(m, c, eta + 0.5 * h, y3);
    let y4 = [y[0] + h * k3[0], y[1] + h * k3[1]];
    let k4 = rhs(m, c, eta + h, y4);
    [
        y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ]
}

/// Tabulated solution of the oblate radial equation on `[0, eta_max]`.
///
/// * Interior: the solution with the `eta -> -eta` parity of `(-1)^{n+m}`,
///   i.e. `N(0) = 1, N'(0) = 0` for even `n + m` and `N(0) = 0, N'(0) = 1`
///   for odd. With this parity the mode is smooth across the focal disk.
/// * Exterior: the solution decaying like `e^{-(n+1) eta}`, integrated
///   inward from its asymptotic form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OblateRadial {
    pub n: u32,
    pub m: u32,
    pub kind: Kind,
    pub separation_constant: f64,
    eta_max: f64,
    step: f64,
    below: usize,
    nodes: Vec<[f64; 2]>,
}

impl OblateRadial {
    pub fn new(n: u32, m: u32, kind: Kind, eta_max: f64) -> Result<Self> {
        if m > n {
            return Err(Error::InvalidArgument(format!("order m = {m} exceeds degree n = {n}")));
        }
        if !(eta_max > 0.0) || !eta_max.is_finite() {
            return Err(Error::InvalidArgument(format!("eta_max = {eta_max} must be > 0")));
        }
        let c = separation_constant(n, m);
        let h = OBLATE_STEP;
        let below = (MARGIN / h).ceil() as usize;
        let above = ((eta_max + MARGIN) / h).ceil() as usize;
        // node i sits at eta = (i - below) h
        let mut nodes = Vec::with_capacity(below + above + 1);
        match kind {
            Kind::Interior => {
                let y0 = if (n + m) % 2 == 0 { [1.0, 0.0] } else { [0.0, 1.0] };
                let mut y = y0;
                for i in 0..below {
                    y = rk4(m, c, -(i as f64) * h, y, -h);
                    nodes.push(y);
                }
                nodes.reverse();
                nodes.push(y0);
                y = y0;
                for i in 0..above {
                    y = rk4(m, c, i as f64 * h, y, h);
                    nodes.push(y);
                }
            }
            Kind::Exterior => {
                let far = above + (EXTERIOR_RUNWAY / h).ceil() as usize;
                let a = -f64::from(n + 1);
                let v = (a * far as f64 * h).exp();
                let mut y = [v, a * v];
                let mut skip = far - above;
                for i in (-(below as i64) + 1..=far as i64).rev() {
                    if skip == 0 {
                        nodes.push(y);
                    } else {
                        skip -= 1;
                    }
                    y = rk4(m, c, i as f64 * h, y, -h);
                }
                nodes.push(y);
                nodes.reverse();
            }
        }
        Ok(Self {
            n,
            m,
            kind,
            separation_constant: c,
            eta_max,
            step: h,
            below,
            nodes: nodes_checked(nodes)?,
        })
    }

    pub fn eta_max(&self) -> f64 {
        self.eta_max
    }

    fn raw_state(&self, eta: f64) -> Result<[f64; 2]> {
        let lo = -(self.below as f64) * self.step;
        let hi = (self.nodes.len() - 1 - self.below) as f64 * self.step;
        if !(lo..=hi).contains(&eta) {
            return Err(Error::OutOfDomain(format!(
                "eta = {eta} outside the tabulated range [0, {}]",
                self.eta_max
            )));
        }
        let k = ((eta / self.step).round() as i64 + self.below as i64)
            .clamp(0, self.nodes.len() as i64 - 1) as usize;
        let eta_k = (k as f64 - self.below as f64) * self.step;
        let d = eta - eta_k;
        if d == 0.0 {
            return Ok(self.nodes[k]);
        }
        Ok(rk4(self.m, self.separation_constant, eta_k, self.nodes[k], d))
    }

    /// `(N, N')` at `eta` in `[0, eta_max]`.
    pub fn state(&self, eta: f64) -> Result<[f64; 2]> {
        if !(0.0..=self.eta_max).contains(&eta) {
            return Err(Error::OutOfDomain(format!(
                "eta = {eta} outside the tabulated range [0, {}]",
                self.eta_max
            )));
        }
        self.raw_state(eta)
    }

    pub fn value(&self, eta: f64) -> Result<f64> {
        Ok(self.state(eta)?[0])
    }

    pub fn derivative(&self, eta: f64) -> Result<f64> {
        Ok(self.state(eta)?[1])
    }

    /// Relative residual of the radial equation at `eta`, with `N''` and
    /// `N'` taken by fourth-order central differences of the interpolant.
    pub fn residual(&self, eta: f64) -> Result<f64> {
        self.state(eta)?;
        let h = 1e-3;
        let v = |e: f64| Ok(self.raw_state(e)?[0]);
        let n2 = fourth_order_second(&v, eta, h)?;
        let n1 = fourth_order_first(&v, eta, h)?;
        let t = eta.tanh();
        let q = self.separation_constant - f64::from(self.m * self.m) * t * t;
        let nv = v(eta)?;
        let res = n2 + t * n1 + q * nv;
        let scale = n2.abs() + (t * n1).abs() + (q * nv).abs();
        Ok(if scale == 0.0 { res.abs() } else { res.abs() / scale })
    }
}

fn nodes_checked(nodes: Vec<[f64; 2]>) -> Result<Vec<[f64; 2]>> {
    if nodes.iter().all(|y| y[0].is_finite() && y[1].is_finite()) {
        Ok(nodes)
    } else {
        Err(Error::Integration("non-finite state in the radial solution".into()))
    }
}

pub(crate) fn fourth_order_first(f: &dyn Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<f64> {
    Ok((8.0 * (f(x + h)? - f(x - h)?) - f(x + 2.0 * h)? + f(x - 2.0 * h)?) / (12.0 * h))
}

/// Sixth-order central second difference.
pub(crate) fn sixth_order_second(f: &dyn Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<f64> {
    const C: [f64; 4] = [-49.0 / 18.0, 1.5, -0.15, 1.0 / 90.0];
    let mut acc = C[0] * f(x)?;
    for (k, c) in C.iter().enumerate().skip(1) {
        let d = k as f64 * h;
        acc += c * (f(x + d)? + f(x - d)?);
    }
    Ok(acc / (h * h))
}

pub(crate) fn fourth_order_second(f: &dyn Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<f64> {
    Ok((16.0 * (f(x + h)? + f(x - h)?) - f(x + 2.0 * h)? - f(x - 2.0 * h)? - 30.0 * f(x)?)
        / (12.0 * h * h))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_solution() {
        let r = OblateRadial::new(0, 0, Kind::Interior, 2.0).unwrap();
        for eta in [0.0, 0.3, 1.7] {
            assert_eq!(r.value(eta).unwrap(), 1.0);
            assert_eq!(r.residual(eta).unwrap(), 0.0);
        }
    }

    #[test]
    fn interior_matches_imaginary_argument_legendre() {
        // P_1(i sinh eta) / i = sinh eta, P_2(i sinh eta) = -(3 sinh^2 eta + 1)/2
        let r1 = OblateRadial::new(1, 0, Kind::Interior, 2.0).unwrap();
        let r2 = OblateRadial::new(2, 0, Kind::Interior, 2.0).unwrap();
        // P_1^1(i sinh eta) ~ cosh eta
        let r11 = OblateRadial::new(1, 1, Kind::Interior, 2.0).unwrap();
        for eta in [0.0, 0.25, 1.0, 1.9] {
            let s: f64 = f64::sinh(eta);
            assert!((r1.value(eta).unwrap() - s).abs() < 1e-11);
            assert!((r2.value(eta).unwrap() - (3.0 * s * s + 1.0)).abs() < 1e-10);
            assert!((r11.value(eta).unwrap() - f64::cosh(eta)).abs() < 1e-11);
        }
        assert_eq!(r2.derivative(0.0).unwrap(), 0.0);
    }

    #[test]
    fn exterior_matches_arccot() {
        // Q_0(i sinh eta) is proportional to arccot(sinh eta), which
        // behaves like 2 e^{-eta} at infinity.
        let r = OblateRadial::new(0, 0, Kind::Exterior, 3.0).unwrap();
        for eta in [0.1, 1.0, 2.5] {
            let exact = 0.5 * (1.0 / f64::sinh(eta)).atan();
            assert!((r.value(eta).unwrap() - exact).abs() < 1e-11, "{eta}");
        }
    }

    #[test]
    fn residual_is_small() {
        for kind in [Kind::Interior, Kind::Exterior] {
            for n in 0..=4 {
                for m in 0..=n {
                    let r = OblateRadial::new(n, m, kind, 2.0).unwrap();
                    for i in 0..=20 {
                        let eta = 0.1 * i as f64;
                        let res = r.residual(eta).unwrap();
                        assert!(res < 1e-8, "{kind:?} n={n} m={m} eta={eta}: {res}");
                    }
                }
            }
        }
    }

    #[test]
    fn range_is_enforced() {
        let r = OblateRadial::new(2, 1, Kind::Interior, 1.0).unwrap();
        assert!(r.value(-0.1).is_err());
        assert!(r.value(1.005).is_err());
        assert!(r.residual(1.0).unwrap() < 1e-8);
        assert!(OblateRadial::new(1, 2, Kind::Interior, 1.0).is_err());
    }
}

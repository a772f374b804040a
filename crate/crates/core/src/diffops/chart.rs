//! Operators written in the spheroidal chart `(eta, theta, phi)`.
//!
//! Prolate Laplacian:
//! `1/(mu^2 z_eta zbar_eta) (f_ee + f_tt + (cot^2 theta + coth^2 eta) f_pp
//!   + coth eta f_e + cot theta f_t)`;
//! oblate: `z zbar` in the prefactor, `tanh` in place of `coth`.
//!
//! Quaternion gradients:
//! `grad_z f = z_eta^{-1} (f_eta - I_p f_theta) + z_phi^{-1} f_phi` and
//! `grad_{z_eta} f = z^{-1} (f_eta - I_p f_theta) + z_phieta^{-1} f_phi`,
//! with `grad_x = (e0/mu) grad_z` and `grad_y = (e0/mu) grad_{z_eta}`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::frames::Zeta;
use crate::ga::{e, Mv};
use crate::spheroidal::{Case, SpheroidalPoint};

/// A multivector field given on the chart.
pub type ChartFn<'a> = dyn Fn(f64, f64, f64) -> Result<Mv> + 'a;

/// Central-difference partials of a chart field.
#[derive(Clone, Debug)]
pub struct ChartDerivs {
    pub f: Mv,
    pub f_eta: Mv,
    pub f_theta: Mv,
    pub f_phi: Mv,
    pub f_etaeta: Mv,
    pub f_thetatheta: Mv,
    pub f_phiphi: Mv,
}

fn first(f: &ChartFn, at: [f64; 3], k: usize, h: f64) -> Result<Mv> {
    let (mut p, mut m) = (at, at);
    p[k] += h;
    m[k] -= h;
    Ok(&(&f(p[0], p[1], p[2])? - &f(m[0], m[1], m[2])?) / (2.0 * h))
}

fn second(f: &ChartFn, at: [f64; 3], centre: &Mv, k: usize, h: f64) -> Result<Mv> {
    let (mut p, mut m) = (at, at);
    p[k] += h;
    m[k] -= h;
    let sum = &f(p[0], p[1], p[2])? + &f(m[0], m[1], m[2])?;
    Ok(&(&sum - &(centre * 2.0)) / (h * h))
}

pub fn chart_derivs(f: &ChartFn, eta: f64, theta: f64, phi: f64, h: f64) -> Result<ChartDerivs> {
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!("fd step {h} must be > 0")));
    }
    let at = [eta, theta, phi];
    let c = f(eta, theta, phi)?;
    Ok(ChartDerivs {
        f_eta: first(f, at, 0, h)?,
        f_theta: first(f, at, 1, h)?,
        f_phi: first(f, at, 2, h)?,
        f_etaeta: second(f, at, &c, 0, h)?,
        f_thetatheta: second(f, at, &c, 1, h)?,
        f_phiphi: second(f, at, &c, 2, h)?,
        f: c,
    })
}

fn require_regular(p: &SpheroidalPoint) -> Result<()> {
    if p.eta <= 0.0 || p.theta <= 0.0 || p.theta >= PI {
        return Err(Error::DegenerateFrame(match p.case {
            Case::Prolate => "x_phi",
            Case::Oblate => "y_phi",
        }));
    }
    Ok(())
}

/// `(prefactor metric g, coefficient of f_pp, coefficient of f_eta)`.
pub fn laplacian_coefficients(p: &SpheroidalPoint) -> (f64, f64, f64) {
    let (sh, st) = (p.eta.sinh(), p.theta.sin());
    let cot2 = (p.theta.cos() / st).powi(2);
    match p.case {
        Case::Prolate => {
            let coth = 1.0 / p.eta.tanh();
            (sh * sh + st * st, cot2 + coth * coth, coth)
        }
        Case::Oblate => {
            let ct = p.theta.cos();
            let th = p.eta.tanh();
            (sh * sh + ct * ct, cot2 + th * th, th)
        }
    }
}

/// The analytic spheroidal Laplacian of a scalar chart field, with the chart
/// partials taken by central differences of step `h`.
pub fn spheroidal_laplacian(f: &ChartFn, p: &SpheroidalPoint, h: f64) -> Result<f64> {
    require_regular(p)?;
    let d = chart_derivs(f, p.eta, p.theta, p.phi, h)?;
    let (g, c_phi, c_eta) = laplacian_coefficients(p);
    let cot = p.theta.cos() / p.theta.sin();
    let bracket = d.f_etaeta.scalar_part()
        + d.f_thetatheta.scalar_part()
        + c_phi * d.f_phiphi.scalar_part()
        + c_eta * d.f_eta.scalar_part()
        + cot * d.f_theta.scalar_part();
    Ok(bracket / (p.mu * p.mu * g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuaternionVar {
    /// `grad_z`, prolate.
    Z,
    /// `grad_{z_eta}`, oblate.
    ZEta,
}

impl QuaternionVar {
    pub fn for_case(case: Case) -> Self {
        match case {
            Case::Prolate => Self::Z,
            Case::Oblate => Self::ZEta,
        }
    }
}

/// The constant-in-`f` factors `(a, b)` of `a (f_eta - I_p f_theta) + b f_phi`.
pub fn quaternion_factors(z: &Zeta, which: QuaternionVar) -> Result<(Mv, Mv)> {
    let p = z.partials();
    match which {
        QuaternionVar::Z => Ok((p.z_eta.inverse()?, p.z_phi.inverse()?)),
        QuaternionVar::ZEta => Ok((z.value().inverse()?, p.z_phieta.inverse()?)),
    }
}

pub fn quaternion_gradient(
    f: &ChartFn,
    eta: f64,
    theta: f64,
    phi: f64,
    which: QuaternionVar,
    h: f64,
) -> Result<Mv> {
    let z = Zeta::new(eta, theta, phi)?;
    let (a, b) = quaternion_factors(&z, which)?;
    let at = [eta, theta, phi];
    let f_eta = first(f, at, 0, h)?;
    let f_theta = first(f, at, 1, h)?;
    let f_phi = first(f, at, 2, h)?;
    let inner = &f_eta - &(&z.phase.i_p * &f_theta);
    Ok(&(&a * &inner) + &(&b * &f_phi))
}

/// `e0 grad (e0 f)`.
pub fn quaternion_gradient_bar(
    f: &ChartFn,
    eta: f64,
    theta: f64,
    phi: f64,
    which: QuaternionVar,
    h: f64,
) -> Result<Mv> {
    let e0 = e(0);
    let g = |a: f64, b: f64, c: f64| Ok(&e0 * &f(a, b, c)?);
    Ok(&e0 * &quaternion_gradient(&g, eta, theta, phi, which, h)?)
}

/// Order of the two factors in the quaternion Laplacian.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaplacianOrder {
    /// `grad_bar (grad f)`
    BarOuter,
    /// `grad (grad_bar f)`
    BarInner,
}

/// Quaternion Laplacian by nested differences, equal to `mu^2 lap_x f`
/// (prolate) or `mu^2 lap_y f` (oblate).
pub fn quaternion_laplacian(
    f: &ChartFn,
    eta: f64,
    theta: f64,
    phi: f64,
    which: QuaternionVar,
    order: LaplacianOrder,
    h: f64,
) -> Result<Mv> {
    match order {
        LaplacianOrder::BarOuter => {
            let inner = |a: f64, b: f64, c: f64| quaternion_gradient(f, a, b, c, which, h);
            quaternion_gradient_bar(&inner, eta, theta, phi, which, h)
        }
        LaplacianOrder::BarInner => {
            let inner = |a: f64, b: f64, c: f64| quaternion_gradient_bar(f, a, b, c, which, h);
            quaternion_gradient(&inner, eta, theta, phi, which, h)
        }
    }
}

/// `grad_x f = (e0/mu) grad_z f` (prolate) or `grad_y f = (e0/mu) grad_{z_eta} f`.
pub fn cartesian_gradient(f: &ChartFn, p: &SpheroidalPoint, h: f64) -> Result<Mv> {
    let q = quaternion_gradient(f, p.eta, p.theta, p.phi, QuaternionVar::for_case(p.case), h)?;
    Ok(&(&e(0) * &q) / p.mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffops::fd::{fd_gradient, fd_laplacian, FieldFn, H_FIRST, H_SECOND};
    use crate::ga::scalar3;
    use crate::spheroidal::position;

    fn zeta_field(a: f64, b: f64, c: f64) -> Result<Mv> {
        Ok(Zeta::new(a, b, c)?.value())
    }

    #[test]
    fn quaternion_gradient_of_z_and_zbar() {
        for &(eta, theta, phi) in &[(0.5, 1.0, 0.3), (1.4, 2.5, 4.0)] {
            let g = quaternion_gradient(&zeta_field, eta, theta, phi, QuaternionVar::Z, H_FIRST)
                .unwrap();
            assert!(g.approx_eq(&scalar3(3.0), 1e-8), "{g}");
            let bar = |a: f64, b: f64, c: f64| Ok(Zeta::new(a, b, c)?.conj());
            let g = quaternion_gradient(&bar, eta, theta, phi, QuaternionVar::Z, H_FIRST).unwrap();
            assert!(g.approx_eq(&scalar3(-1.0), 1e-8), "{g}");
        }
    }

    #[test]
    fn oblate_gradient_of_z_eta() {
        // y = mu z_eta e0, so grad_y (z_eta e0) = 3/mu and grad_{z_eta} z_eta = 3
        let f = |a: f64, b: f64, c: f64| Ok(Zeta::new(a, b, c)?.z_eta());
        let g = quaternion_gradient(&f, 0.8, 1.2, 2.0, QuaternionVar::ZEta, H_FIRST).unwrap();
        assert!(g.approx_eq(&scalar3(3.0), 1e-8), "{g}");
    }

    #[test]
    fn linear_coordinate_is_harmonic() {
        let mu = 1.3;
        let f = move |eta: f64, theta: f64, _phi: f64| Ok(scalar3(mu * eta.cosh() * theta.cos()));
        let p = SpheroidalPoint::prolate(mu, 0.7, 1.1, 0.4).unwrap();
        let l = spheroidal_laplacian(&f, &p, H_SECOND).unwrap();
        assert!(l.abs() < 1e-6, "{l}");
        let c = |_: f64, _: f64, _: f64| Ok(scalar3(2.0));
        assert_eq!(spheroidal_laplacian(&c, &p, H_SECOND).unwrap(), 0.0);
    }

    #[test]
    fn agrees_with_cartesian_operators() {
        for case in [Case::Prolate, Case::Oblate] {
            let mu = 0.9;
            let field = |x: &[f64; 3]| (0.4 * x[0]).exp() * (0.7 * x[1] - 0.2 * x[2]).cos();
            let chart = move |a: f64, b: f64, c: f64| {
                let x = position(&SpheroidalPoint::new(case, mu, a, b, c)?);
                Ok(scalar3(field(&x.0)))
            };
            let p = SpheroidalPoint::new(case, mu, 0.9, 1.3, 0.6).unwrap();
            let x = position(&p);
            let cart = FieldFn::scalar(field);
            let want = fd_laplacian(&cart, &x, H_SECOND).unwrap().scalar_part();
            let got = spheroidal_laplacian(&chart, &p, H_SECOND).unwrap();
            assert!((got - want).abs() < 1e-5 * want.abs().max(1.0), "{case}: {got} vs {want}");

            let g_chart = cartesian_gradient(&chart, &p, H_FIRST).unwrap();
            let g_cart = fd_gradient(&cart, &x, H_FIRST).unwrap();
            assert!(g_chart.approx_eq(&g_cart, 1e-7), "{g_chart} vs {g_cart}");

            let which = QuaternionVar::for_case(case);
            for order in [LaplacianOrder::BarOuter, LaplacianOrder::BarInner] {
                let q = quaternion_laplacian(&chart, p.eta, p.theta, p.phi, which, order, H_SECOND)
                    .unwrap();
                let want = scalar3(mu * mu * want);
                assert!(q.approx_eq(&want, 1e-5), "{case} {order:?}: {q} vs {want}");
            }
        }
    }

    #[test]
    fn degenerate_chart_points_rejected() {
        let c = |_: f64, _: f64, _: f64| Ok(scalar3(1.0));
        let p = SpheroidalPoint::prolate(1.0, 0.0, 1.0, 0.0).unwrap();
        assert!(spheroidal_laplacian(&c, &p, 1e-4).is_err());
    }
}

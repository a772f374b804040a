//! Central projection from the south pole `-e0` of a unit spheroid onto the
//! equatorial plane, and the stereographic limit.
//!
//! Only the two spheroids with unit polar semi-axis are projected: the
//! prolate case 3 (`tanh eta = e^{-nu}`, `mu cosh eta = 1`) and the oblate
//! case 1 (`mu sinh eta = 1`). Writing `E = e^{-2nu}` for case 3 and
//! `E = e^{2nu}` for case 1, both surfaces are `x0^2 + x_p^2 / E = 1`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::PhaseState;
use crate::ga::{e, Mv};
use crate::spheroidal::{BoundingSpheroid, CartesianPoint};

/// Surface-membership tolerance applied before projecting.
pub const SURFACE_TOL: f64 = 1e-9;

/// `t e_p` in the `e12` plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanePoint {
    pub t: f64,
    pub phi: f64,
}

impl PlanePoint {
    pub fn new(t: f64, phi: f64) -> Self {
        Self { t, phi }
    }

    pub fn mv(&self) -> Mv {
        &PhaseState::new(self.phi).e_p * self.t
    }

    /// Planar Cartesian components `(t cos phi, t sin phi)`.
    pub fn xy(&self) -> (f64, f64) {
        let (s, c) = self.phi.sin_cos();
        (self.t * c, self.t * s)
    }

    pub fn distance(&self, other: &Self) -> f64 {
        let (a, b) = self.xy();
        let (c, d) = other.xy();
        (a - c).hypot(b - d)
    }
}

/// Which unit spheroid is projected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProjectionCase {
    /// Oblate, `e^{2nu} - mu^2 = 1`.
    Case1,
    /// Prolate, `e^{-2nu} + mu^2 = 1`.
    Case3,
}

impl ProjectionCase {
    pub fn from_id(id: u8) -> Result<Self> {
        match id {
            1 => Ok(Self::Case1),
            3 => Ok(Self::Case3),
            other => Err(Error::InvalidArgument(format!(
                "projection is defined for cases 1 and 3, got {other}"
            ))),
        }
    }

    pub fn id(self) -> u8 {
        match self {
            Self::Case1 => 1,
            Self::Case3 => 3,
        }
    }

    /// `+1` for case 1, `-1` for case 3: the sign in `e^{+-2nu}`.
    pub fn sign(self) -> f64 {
        match self {
            Self::Case1 => 1.0,
            Self::Case3 => -1.0,
        }
    }

    /// `E = e^{+-2nu}`, the squared equatorial semi-axis.
    pub fn e2(self, nu: f64) -> f64 {
        (2.0 * self.sign() * nu).exp()
    }

    /// Radius of the projected disk, `e^{+-nu}`.
    pub fn disk_radius(self, nu: f64) -> f64 {
        (self.sign() * nu).exp()
    }

    pub fn spheroid(self, nu: f64) -> Result<BoundingSpheroid> {
        BoundingSpheroid::new(self.id(), nu)
    }
}

/// `mu` for a bounding case and `nu`: `sqrt(1 - e^{-2nu})` (cases 3, 4) or
/// `sqrt(e^{2nu} - 1)` (cases 1, 2).
pub fn mu_from_nu(case_id: u8, nu: f64) -> Result<f64> {
    Ok(BoundingSpheroid::new(case_id, nu)?.mu)
}

pub fn nu_from_mu(case_id: u8, mu: f64) -> Result<f64> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::OutOfDomain(format!("mu = {mu} must be > 0")));
    }
    match case_id {
        1 | 2 => Ok(0.5 * (mu * mu).ln_1p()),
        3 | 4 if mu < 1.0 => Ok(-0.5 * (-mu * mu).ln_1p()),
        3 | 4 => Err(Error::OutOfDomain(format!(
            "case {case_id} needs mu < 1, got {mu}"
        ))),
        other => Err(Error::InvalidArgument(format!(
            "bounding case {other} not in 1..=4"
        ))),
    }
}

/// `x0^2 + x_p^2 / E - 1`.
pub fn surface_residual(x: &CartesianPoint, nu: f64, case: ProjectionCase) -> f64 {
    let xp = x.xp();
    x.x0() * x.x0() + xp * xp / case.e2(nu) - 1.0
}

fn azimuth(x: &CartesianPoint) -> f64 {
    let phi = x.0[2].atan2(x.0[1]).rem_euclid(2.0 * PI);
    if phi >= 2.0 * PI {
        0.0
    } else {
        phi
    }
}

fn check_pole(x0: f64) -> Result<()> {
    if (x0 + 1.0).abs() <= 1e-15 {
        return Err(Error::Pole(format!("x0 = {x0} is the projection point -e0")));
    }
    Ok(())
}

/// Similar-triangles scale `s = 1/(x0 + 1)` taking `x_p` to `t`.
pub fn similar_triangle_scale(x: &CartesianPoint) -> Result<f64> {
    check_pole(x.x0())?;
    Ok(1.0 / (x.x0() + 1.0))
}

/// Project a surface point: `t e_p = (x - x0 e0)/(x0 + 1)`.
pub fn project(x: &CartesianPoint, nu: f64, case: ProjectionCase) -> Result<PlanePoint> {
    let res = surface_residual(x, nu, case);
    if !(res.abs() <= SURFACE_TOL) {
        return Err(Error::OutOfDomain(format!(
            "point {:?} is off the case {} spheroid (residual {res:e})",
            x.0,
            case.id()
        )));
    }
    let s = similar_triangle_scale(x)?;
    Ok(PlanePoint::new(x.xp() * s, azimuth(x)))
}

/// The radical form `t = e^{+-nu} sqrt((1 - x0)/(1 + x0))`.
pub fn project_radical(x0: f64, nu: f64, case: ProjectionCase) -> Result<f64> {
    check_pole(x0)?;
    if !(-1.0..=1.0).contains(&x0) {
        return Err(Error::OutOfDomain(format!("x0 = {x0} outside [-1, 1]")));
    }
    Ok(case.disk_radius(nu) * ((1.0 - x0) / (1.0 + x0)).sqrt())
}

/// The coordinate form: `tanh eta tan(theta/2)` (case 3) or
/// `coth eta tan(theta/2)` (case 1), with `tan(theta/2)` written as
/// `sqrt((1 - cos theta)/(1 + cos theta))`.
pub fn project_coordinates(theta: f64, nu: f64, case: ProjectionCase) -> Result<f64> {
    let c = theta.cos();
    check_pole(c)?;
    let tanh_eta = (-nu).exp();
    let factor = match case {
        ProjectionCase::Case3 => tanh_eta,
        ProjectionCase::Case1 => 1.0 / tanh_eta,
    };
    Ok(factor * ((1.0 - c) / (1.0 + c)).sqrt())
}

/// `x = (2E t e_p + (E - t^2) e0)/(E + t^2)`.
pub fn unproject(t: &PlanePoint, nu: f64, case: ProjectionCase) -> CartesianPoint {
    let e2 = case.e2(nu);
    let t2 = t.t * t.t;
    let d = e2 + t2;
    let radial = 2.0 * e2 * t.t / d;
    let (s, c) = t.phi.sin_cos();
    CartesianPoint::new((e2 - t2) / d, radial * c, radial * s)
}

/// `x0 = (E - t^2)/(E + t^2)`.
pub fn x0_from_t(t: f64, nu: f64, case: ProjectionCase) -> f64 {
    let e2 = case.e2(nu);
    (e2 - t * t) / (e2 + t * t)
}

/// `(1 - x^2)/(1 - x0^2)`, which equals `mu^2` on the prolate case 3 and
/// `-mu^2` on the oblate case 1.
pub fn mu_sq_relation(x: &CartesianPoint) -> Result<f64> {
    let d = 1.0 - x.x0() * x.x0();
    if d.abs() <= 1e-15 {
        return Err(Error::Pole("relation undefined at the poles".into()));
    }
    Ok((1.0 - x.norm_sq()) / d)
}

/// `(x^2 - x0^2)/(1 - x0^2) = e^{+-2nu}`.
pub fn e2_relation(x: &CartesianPoint) -> Result<f64> {
    let d = 1.0 - x.x0() * x.x0();
    if d.abs() <= 1e-15 {
        return Err(Error::Pole("relation undefined at the poles".into()));
    }
    let xp = x.xp();
    Ok(xp * xp / d)
}

/// Stereographic projection of the unit sphere from `-e0`:
/// `t e_p + e0 = 2/(x + e0)`, evaluated by multivector inversion.
pub fn stereographic(x: &CartesianPoint) -> Result<PlanePoint> {
    let r = x.norm();
    if (r - 1.0).abs() > SURFACE_TOL {
        return Err(Error::OutOfDomain(format!("|x| = {r} is not 1")));
    }
    check_pole(x.x0())?;
    let e0 = e(0);
    let w = &x.mv() + &e0;
    let q = &(&w.inverse()? * 2.0) - &e0;
    let c = q.vector_part();
    let t = c[1].hypot(c[2]);
    Ok(PlanePoint::new(t, azimuth(x)))
}

/// `x = (2 t e_p + (1 - t^2) e0)/(1 + t^2)`.
pub fn stereographic_inverse(t: &PlanePoint) -> CartesianPoint {
    unproject(t, 0.0, ProjectionCase::Case3)
}

/// Planar distance between the case-`case` projection at `nu` and the
/// stereographic projection of the unit-sphere point with the same
/// `(theta, phi)`.
pub fn limit_error(nu: f64, case: ProjectionCase, theta: f64, phi: f64) -> Result<f64> {
    let x = case.spheroid(nu)?.point(theta, phi)?;
    let p = project(&x, nu, case)?;
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let sphere = CartesianPoint::new(ct, st * cp, st * sp);
    let q = stereographic(&sphere)?;
    Ok(p.distance(&q))
}

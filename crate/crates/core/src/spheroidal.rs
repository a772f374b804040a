//! Prolate and oblate spheroidal coordinates.
//!
//! Prolate: `x = mu z e0` with foci at `+-mu e0`.
//! Oblate:  `y = mu z_eta e0` with focal ring of radius `mu` in the `e12` plane.
//!
//! The focal-distance sums `omega` (constant on `eta` surfaces) and
//! differences `omega_bar` (constant on `theta` surfaces) drive the inverse
//! map.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{PhaseState, Zeta};
use crate::ga::{e, vec3, Mv};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Prolate,
    Oblate,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Prolate => "prolate",
            Case::Oblate => "oblate",
        })
    }
}

impl std::str::FromStr for Case {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "prolate" => Ok(Case::Prolate),
            "oblate" => Ok(Case::Oblate),
            other => Err(Error::InvalidArgument(format!("unknown case `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpheroidalPoint {
    pub mu: f64,
    pub eta: f64,
    pub theta: f64,
    pub phi: f64,
    pub case: Case,
}

impl SpheroidalPoint {
    pub fn new(case: Case, mu: f64, eta: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::OutOfDomain(format!("mu = {mu} must be > 0")));
        }
        if !(eta >= 0.0) || !eta.is_finite() {
            return Err(Error::OutOfDomain(format!("eta = {eta} must be >= 0")));
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::OutOfDomain(format!("theta = {theta} outside [0, pi]")));
        }
        if !phi.is_finite() {
            return Err(Error::OutOfDomain(format!("phi = {phi}")));
        }
        Ok(Self {
            mu,
            eta,
            theta,
            phi,
            case,
        })
    }

    pub fn prolate(mu: f64, eta: f64, theta: f64, phi: f64) -> Result<Self> {
        Self::new(Case::Prolate, mu, eta, theta, phi)
    }

    pub fn oblate(mu: f64, eta: f64, theta: f64, phi: f64) -> Result<Self> {
        Self::new(Case::Oblate, mu, eta, theta, phi)
    }

    pub fn zeta(&self) -> Zeta {
        Zeta::new(self.eta, self.theta, self.phi).expect("validated point")
    }
}

/// Grade-1 element of `G_3`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CartesianPoint(pub [f64; 3]);

impl CartesianPoint {
    pub fn new(x0: f64, x1: f64, x2: f64) -> Self {
        Self([x0, x1, x2])
    }

    pub fn from_mv(v: &Mv) -> Result<Self> {
        if v.dim() != 3 || !v.is_grade(1) {
            return Err(Error::InvalidArgument(format!("{v} is not a G3 vector")));
        }
        let c = v.vector_part();
        Ok(Self([c[0], c[1], c[2]]))
    }

    pub fn mv(&self) -> Mv {
        vec3(self.0[0], self.0[1], self.0[2])
    }

    pub fn x0(&self) -> f64 {
        self.0[0]
    }

    /// Distance from the `e0` axis.
    pub fn xp(&self) -> f64 {
        self.0[1].hypot(self.0[2])
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self([
            self.0[0] - other.0[0],
            self.0[1] - other.0[1],
            self.0[2] - other.0[2],
        ])
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let d = self.sub(other);
        d.0.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// Unit vector `e_p` towards the point's azimuth (`e1` on the axis).
    pub fn azimuth_dir(&self) -> [f64; 3] {
        let xp = self.xp();
        if xp == 0.0 {
            [0.0, 1.0, 0.0]
        } else {
            [0.0, self.0[1] / xp, self.0[2] / xp]
        }
    }
}

/// Closed-form Cartesian position.
pub fn position(p: &SpheroidalPoint) -> CartesianPoint {
    let SpheroidalPoint {
        mu, eta, theta, phi, ..
    } = *p;
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let (axial, radial) = match p.case {
        Case::Prolate => (eta.cosh() * ct, eta.sinh() * st),
        Case::Oblate => (eta.sinh() * ct, eta.cosh() * st),
    };
    CartesianPoint::new(mu * axial, mu * cp * radial, mu * sp * radial)
}

/// Position through the multivector products `mu z e0` (prolate) and
/// `mu z_eta e0` (oblate).
pub fn position_product(p: &SpheroidalPoint) -> Mv {
    let z = p.zeta();
    let even = match p.case {
        Case::Prolate => z.value(),
        Case::Oblate => z.z_eta(),
    };
    &(&even * &e(0)) * p.mu
}

/// `(omega, omega_bar)` from coordinates: `(2 mu cosh eta, 2 mu cos theta)`
/// prolate, `(2 mu cosh eta, 2 mu sin theta)` oblate.
pub fn omega(p: &SpheroidalPoint) -> (f64, f64) {
    let w = 2.0 * p.mu * p.eta.cosh();
    let wb = match p.case {
        Case::Prolate => 2.0 * p.mu * p.theta.cos(),
        Case::Oblate => 2.0 * p.mu * p.theta.sin(),
    };
    (w, wb)
}

/// Distances from `x` to the two focal points of its meridian plane:
/// `x +- mu e0` (prolate) or `y +- mu e_p` (oblate).
fn focal_distances(x: &CartesianPoint, mu: f64, case: Case) -> (f64, f64) {
    let axial = x.x0();
    let radial = x.xp();
    match case {
        Case::Prolate => ((axial + mu).hypot(radial), (axial - mu).hypot(radial)),
        Case::Oblate => ((radial + mu).hypot(axial), (radial - mu).hypot(axial)),
    }
}

/// `(omega, omega_bar)` as sum and difference of focal distances.
pub fn omega_cartesian(x: &CartesianPoint, mu: f64, case: Case) -> (f64, f64) {
    let (plus, minus) = focal_distances(x, mu, case);
    (plus + minus, plus - minus)
}

/// The radical forms `sqrt(2) ((x^2 + mu^2) +- sqrt((x^2+mu^2)^2 - 4 mu^2 c^2))^(1/2)`
/// with `c = x0` (prolate) or `c = y_p` (oblate). The second value is
/// `|omega_bar|`; the sign is not recoverable from the radicals.
pub fn omega_radical(x: &CartesianPoint, mu: f64, case: Case) -> (f64, f64) {
    let s = x.norm_sq() + mu * mu;
    let c = match case {
        Case::Prolate => x.x0(),
        Case::Oblate => x.xp(),
    };
    let disc = (s * s - 4.0 * mu * mu * c * c).max(0.0).sqrt();
    (
        2f64.sqrt() * (s + disc).sqrt(),
        2f64.sqrt() * (s - disc).max(0.0).sqrt(),
    )
}

fn wrap_phi(phi: f64) -> f64 {
    let p = phi.rem_euclid(2.0 * PI);
    if p >= 2.0 * PI {
        0.0
    } else {
        p
    }
}

/// Recover `(eta, theta, phi)` from a Cartesian point for focal scale `mu`.
///
/// With `r+-` the focal distances and `R = r+ r-`:
///
/// * prolate: `sinh^2 eta = (x^2 - mu^2 + R)/(2mu^2)`,
///   `sin^2 theta = (mu^2 - x^2 + R)/(2 mu^2)`, product `x_p^2/mu^2`;
/// * oblate: `sinh^2 eta = (y^2 - mu^2 + R)/(2 mu^2)`,
///   `cos^2 theta = (mu^2 - y^2 + R)/(2 mu^2)`, product `y0^2/mu^2`.
///
/// The larger factor is formed directly and the smaller from the product,
/// which keeps full relative accuracy near the focal set. This is the same
/// as `eta = arccosh(omega/2mu)` with `theta` from `omega_bar`.
pub fn invert(x: &CartesianPoint, mu: f64, case: Case) -> Result<SpheroidalPoint> {
    if !(mu > 0.0) {
        return Err(Error::OutOfDomain(format!("mu = {mu} must be > 0")));
    }
    let mu2 = mu * mu;
    let (plus, minus) = focal_distances(x, mu, case);
    let r = plus * minus;
    let x2 = x.norm_sq();
    let axial = x.x0();
    let radial = x.xp();
    let focal_tol = 1e-15 * mu;
    let phi = wrap_phi(x.0[2].atan2(x.0[1]));

    // a = sinh^2 eta, b = sin^2 theta (prolate) or cos^2 theta (oblate)
    let (a, b) = match case {
        Case::Prolate => {
            if radial <= focal_tol && axial.abs() <= mu {
                return Err(Error::DegenerateCoordinates {
                    reason: "point on the prolate focal segment",
                    eta: 0.0,
                    theta: (axial / mu).clamp(-1.0, 1.0).acos(),
                });
            }
            split_product(x2 - mu2 + r, mu2 - x2 + r, mu2, radial * radial / mu2)
        }
        Case::Oblate => {
            if axial.abs() <= focal_tol && radial <= mu {
                return Err(Error::DegenerateCoordinates {
                    reason: "point on the oblate focal disk",
                    eta: 0.0,
                    theta: (radial / mu).clamp(-1.0, 1.0).asin(),
                });
            }
            split_product(x2 - mu2 + r, mu2 - x2 + r, mu2, axial * axial / mu2)
        }
    };
    let eta = a.sqrt().asinh();
    let cosh_eta = (1.0 + a).sqrt();
    let theta = match case {
        Case::Prolate => b.sqrt().atan2(axial / (mu * cosh_eta)),
        Case::Oblate => {
            let c = b.sqrt().copysign(axial);
            // sign(y0) picks the branch of arcsin(omega_bar / 2 mu)
            let c = if axial == 0.0 { 0.0 } else { c };
            (radial / (mu * cosh_eta)).atan2(c)
        }
    };
    SpheroidalPoint::new(case, mu, eta, theta.clamp(0.0, PI), phi)
}

/// Given `2 mu^2 a = num_a`, `2 mu^2 b = num_b` and `a b = product`, form
/// the larger one directly and the smaller through the product.
fn split_product(num_a: f64, num_b: f64, mu2: f64, product: f64) -> (f64, f64) {
    if num_a >= num_b {
        let a = (num_a / (2.0 * mu2)).max(0.0);
        let b = if a > 0.0 { product / a } else { 0.0 };
        (a, b.max(0.0))
    } else {
        let b = (num_b / (2.0 * mu2)).max(0.0);
        let a = if b > 0.0 { product / b } else { 0.0 };
        (a.max(0.0), b)
    }
}

/// Tangent vectors `(x_eta, x_theta, x_phi)` and the reciprocal frame
/// `(x^eta, x^theta, x^phi)` with `x^i . x_j = delta^i_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Frames {
    pub tangent: [Mv; 3],
    pub reciprocal: [Mv; 3],
}

pub fn frames(p: &SpheroidalPoint) -> Result<Frames> {
    if p.theta <= 0.0 || p.theta >= PI {
        return Err(Error::DegenerateFrame(match p.case {
            Case::Prolate => "x_phi",
            Case::Oblate => "y_phi",
        }));
    }
    if p.eta <= 0.0 {
        return Err(Error::DegenerateFrame(match p.case {
            Case::Prolate => "x_phi",
            Case::Oblate => "y_eta",
        }));
    }
    let z = p.zeta();
    let q = &z.phase;
    let e0 = e(0);
    let mu = p.mu;
    let inv = |m: &Mv| m.inverse().expect("off-axis frame elements are invertible");
    match p.case {
        Case::Prolate => {
            let part = z.partials();
            let x_eta = &(&part.z_eta * &e0) * mu;
            let x_theta = &(&part.z_theta * &e0) * mu;
            let x_phi = &q.e_p_dot * (mu * p.eta.sinh() * p.theta.sin());
            let zz_eta = (&part.z_eta * &crate::frames::e0_conjugate(&part.z_eta)).scalar_part();
            let zz_theta =
                (&part.z_theta * &crate::frames::e0_conjugate(&part.z_theta)).scalar_part();
            let r_eta = &(&part.z_eta * &e0) / (mu * zz_eta);
            let r_theta = &(&part.z_theta * &e0) / (mu * zz_theta);
            let r_phi = inv(&(&(&part.z_phi * &e0) * mu));
            Ok(Frames {
                tangent: [x_eta, x_theta, x_phi],
                reciprocal: [r_eta, r_theta, r_phi],
            })
        }
        Case::Oblate => {
            let zv = z.value();
            let y_eta = &(&zv * &e0) * mu;
            let y_theta = &(&(&q.i_p * &zv) * &e0) * mu;
            let y_phi = &q.e_p_dot * (mu * p.eta.cosh() * p.theta.sin());
            let zbar_inv = inv(&(&z.conj() * mu));
            let r_eta = &zbar_inv * &e0;
            let r_theta = &(&q.i_p * &zbar_inv) * &e0;
            let zbar_phieta = crate::frames::e0_conjugate(&z.z_phieta());
            let r_phi = &inv(&(&zbar_phieta * mu)) * &e0;
            Ok(Frames {
                tangent: [y_eta, y_theta, y_phi],
                reciprocal: [r_eta, r_theta, r_phi],
            })
        }
    }
}

/// Scalar `a . b` of two vectors.
pub fn dot(a: &Mv, b: &Mv) -> f64 {
    a.dot_wedge(b).expect("same dimension").0.scalar_part()
}

/// One of the four unit bounding spheroids, labelled as in the itemised
/// list: 1 and 4 oblate, 2 and 3 prolate.
///
/// All four share `tanh(eta) = e^{-nu}`. Cases 3, 4 have
/// `mu cosh eta = 1` (`e^{-2nu} + mu^2 = 1`), cases 1, 2 have
/// `mu sinh eta = 1` (`e^{2nu} - mu^2 = 1`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundingSpheroid {
    pub case_id: u8,
    pub nu: f64,
    pub eta: f64,
    pub mu: f64,
    pub kind: Case,
}

impl BoundingSpheroid {
    pub fn new(case_id: u8, nu: f64) -> Result<Self> {
        if !(nu >= 0.0) || !nu.is_finite() {
            return Err(Error::OutOfDomain(format!("nu = {nu} must be >= 0")));
        }
        let mu2 = match case_id {
            1 | 2 => nu.mul_add(2.0, 0.0).exp_m1(),
            3 | 4 => -(-2.0 * nu).exp_m1(),
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "bounding case {case_id} not in 1..=4"
                )))
            }
        };
        if !(mu2 > 0.0) {
            return Err(Error::OutOfDomain(format!(
                "case {case_id} with nu = {nu} gives mu^2 = {mu2} <= 0"
            )));
        }
        let kind = match case_id {
            2 | 3 => Case::Prolate,
            _ => Case::Oblate,
        };
        Ok(Self {
            case_id,
            nu,
            eta: (-nu).exp().atanh(),
            mu: mu2.sqrt(),
            kind,
        })
    }

    pub fn point(&self, theta: f64, phi: f64) -> Result<CartesianPoint> {
        let p = SpheroidalPoint::new(self.kind, self.mu, self.eta, theta, phi)?;
        Ok(position(&p))
    }

    /// `(axial, equatorial)` semi-axes.
    pub fn semi_axes(&self) -> (f64, f64) {
        let (ch, sh) = (self.eta.cosh(), self.eta.sinh());
        match self.kind {
            Case::Prolate => (self.mu * ch, self.mu * sh),
            Case::Oblate => (self.mu * sh, self.mu * ch),
        }
    }

    /// The listed closed form, e.g. case 3 `(cos theta + I_p tanh eta sin theta) e0`.
    pub fn listed_form(&self, theta: f64, phi: f64) -> Mv {
        let q = PhaseState::new(phi);
        let (st, ct) = theta.sin_cos();
        let (t, c) = (self.eta.tanh(), 1.0 / self.eta.tanh());
        let (a, b) = match self.case_id {
            3 => (ct, t * st),
            2 => (c * ct, st),
            4 => (t * ct, st),
            _ => (ct, c * st),
        };
        let even = &crate::ga::scalar3(a) + &(&q.i_p * b);
        &even * &e(0)
    }
}

pub fn bounding_point(case_id: u8, nu: f64, theta: f64, phi: f64) -> Result<CartesianPoint> {
    BoundingSpheroid::new(case_id, nu)?.point(theta, phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(x: &CartesianPoint, expect: [f64; 3], tol: f64) {
        assert!(
            x.max_abs_diff(&CartesianPoint(expect)) <= tol,
            "{:?} != {:?}",
            x.0,
            expect
        );
    }

    #[test]
    fn position_examples() {
        let p = SpheroidalPoint::prolate(1.0, 0.0, 0.0, 0.0).unwrap();
        cp(&position(&p), [1.0, 0.0, 0.0], 0.0);
        let p = SpheroidalPoint::oblate(1.0, 0.0, PI / 2.0, 0.0).unwrap();
        cp(&position(&p), [0.0, 1.0, 0.0], 1e-16);
        let p = SpheroidalPoint::prolate(2.0, 1.0, PI / 4.0, PI / 2.0).unwrap();
        let r = 2f64.sqrt() / 2.0;
        cp(
            &position(&p),
            [2.0 * 1f64.cosh() * r, 0.0, 2.0 * 1f64.sinh() * r],
            1e-15,
        );
    }

    #[test]
    fn product_path_matches_closed_form() {
        for case in [Case::Prolate, Case::Oblate] {
            for &(mu, eta, theta, phi) in &[(1.0, 0.4, 1.0, 0.3), (2.5, 1.7, 2.9, 5.9)] {
                let p = SpheroidalPoint::new(case, mu, eta, theta, phi).unwrap();
                let a = position(&p).mv();
                let b = position_product(&p);
                assert!(a.approx_eq(&b, 1e-14 * (1.0 + a.max_abs())), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn omega_examples() {
        let p = SpheroidalPoint::prolate(1.0, 0.0, 0.3, 0.0).unwrap();
        assert_eq!(omega(&p).0, 2.0);
        let p = SpheroidalPoint::prolate(1.0, 1.0, PI / 3.0, 0.0).unwrap();
        assert!((omega(&p).1 - 1.0).abs() < 1e-15);
        let x = position(&p);
        let (w, wb) = omega_cartesian(&x, 1.0, Case::Prolate);
        assert!((w - 2.0 * 1f64.cosh()).abs() < 1e-14);
        assert!((wb - 1.0).abs() < 1e-14);
    }

    #[test]
    fn oblate_omega_dual_formula() {
        let p = SpheroidalPoint::oblate(1.0, 0.8, 2.2, 1.0).unwrap();
        let y = position(&p);
        let (w, wb) = omega_cartesian(&y, 1.0, Case::Oblate);
        assert!((w - 2.0 * 0.8f64.cosh()).abs() < 1e-12);
        assert!((wb - 2.0 * 2.2f64.sin()).abs() < 1e-12);
        let (wr, wbr) = omega_radical(&y, 1.0, Case::Oblate);
        assert!((wr - w).abs() < 1e-12);
        assert!((wbr - wb.abs()).abs() < 1e-12);
    }

    #[test]
    fn invert_examples() {
        let mu = 1.3;
        let x = CartesianPoint::new(mu * 1f64.cosh(), 0.0, 0.0);
        let p = invert(&x, mu, Case::Prolate).unwrap();
        assert!((p.eta - 1.0).abs() < 1e-15);
        assert_eq!(p.theta, 0.0);
        assert_eq!(p.phi, 0.0);

        let src = SpheroidalPoint::prolate(1.0, 0.5, 2.0, 4.0).unwrap();
        let back = invert(&position(&src), 1.0, Case::Prolate).unwrap();
        assert!((back.eta - 0.5).abs() < 1e-14);
        assert!((back.theta - 2.0).abs() < 1e-14);
        assert!((back.phi - 4.0).abs() < 1e-14);
    }

    #[test]
    fn invert_reports_focal_set() {
        let on_segment = CartesianPoint::new(0.3, 0.0, 0.0);
        match invert(&on_segment, 1.0, Case::Prolate) {
            Err(Error::DegenerateCoordinates { eta, theta, .. }) => {
                assert_eq!(eta, 0.0);
                assert!((theta - 0.3f64.acos()).abs() < 1e-15);
            }
            other => panic!("expected degenerate error, got {other:?}"),
        }
        let on_disk = CartesianPoint::new(0.0, 0.5, 0.0);
        assert!(matches!(
            invert(&on_disk, 1.0, Case::Oblate),
            Err(Error::DegenerateCoordinates { .. })
        ));
    }

    #[test]
    fn oblate_branch_follows_sign_of_y0() {
        for theta in [0.2, 1.2, 1.9, 2.95] {
            let p = SpheroidalPoint::oblate(0.7, 0.6, theta, 1.0).unwrap();
            let back = invert(&position(&p), 0.7, Case::Oblate).unwrap();
            assert!((back.theta - theta).abs() < 1e-13, "{theta} -> {}", back.theta);
        }
    }

    #[test]
    fn frame_reciprocity() {
        for case in [Case::Prolate, Case::Oblate] {
            let p = SpheroidalPoint::new(case, 1.4, 0.9, 1.1, 2.0).unwrap();
            let f = frames(&p).unwrap();
            for i in 0..3 {
                assert!(f.tangent[i].is_grade(1));
                assert!(f.reciprocal[i].is_grade(1));
                for j in 0..3 {
                    let d = dot(&f.reciprocal[i], &f.tangent[j]);
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((d - expect).abs() < 1e-12, "{case} {i}{j}: {d}");
                }
            }
        }
    }

    #[test]
    fn reciprocal_squares_match_tangent_inverse_squares() {
        let p = SpheroidalPoint::prolate(1.0, 0.7, 0.8, 0.2).unwrap();
        let f = frames(&p).unwrap();
        let sq = |m: &Mv| (m * m).scalar_part();
        let inv_t = 1.0 / sq(&f.tangent[0]);
        assert!((sq(&f.reciprocal[0]) - inv_t).abs() < 1e-14);
        assert!((sq(&f.reciprocal[1]) - inv_t).abs() < 1e-14);
        assert!((1.0 / sq(&f.tangent[1]) - inv_t).abs() < 1e-14);
    }

    #[test]
    fn frames_degenerate_on_axis() {
        let p = SpheroidalPoint::prolate(1.0, 0.5, 0.0, 0.0).unwrap();
        assert_eq!(frames(&p), Err(Error::DegenerateFrame("x_phi")));
        let p = SpheroidalPoint::oblate(1.0, 0.0, 1.0, 0.0).unwrap();
        assert!(frames(&p).is_err());
    }

    #[test]
    fn bounding_cases() {
        // pole of case 1
        cp(&bounding_point(1, 0.4, 0.0, 0.0).unwrap(), [1.0, 0.0, 0.0], 1e-15);
        // nu -> 0 sends case 3 to the unit sphere
        let x = bounding_point(3, 1e-9, 1.0, 2.0).unwrap();
        let expect = [1f64.cos(), 1f64.sin() * 2f64.cos(), 1f64.sin() * 2f64.sin()];
        cp(&x, expect, 1e-4);
        assert!(bounding_point(3, 0.0, 1.0, 0.0).is_err());
        assert!(bounding_point(1, 0.0, 1.0, 0.0).is_err());
        assert!(bounding_point(5, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn bounding_listed_forms_match_positions() {
        for case_id in 1..=4 {
            let s = BoundingSpheroid::new(case_id, 0.6).unwrap();
            for &(theta, phi) in &[(0.3, 0.1), (1.5, 2.0), (2.7, 4.0)] {
                let a = s.point(theta, phi).unwrap().mv();
                let b = s.listed_form(theta, phi);
                assert!(a.approx_eq(&b, 1e-14), "case {case_id}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn bounding_semi_axes_are_reciprocal_between_cases_2_and_3() {
        let nu = 0.45;
        let (a2, q2) = BoundingSpheroid::new(2, nu).unwrap().semi_axes();
        let (a3, q3) = BoundingSpheroid::new(3, nu).unwrap().semi_axes();
        let eta = (-nu).exp().atanh();
        assert!((a2 / q2 - 1.0 / eta.tanh()).abs() < 1e-13);
        assert!((q3 / a3 - eta.tanh()).abs() < 1e-13);
        assert!(((a2 / q2) * (q3 / a3) - 1.0).abs() < 1e-13);
        // unit axes: major 1 for cases 3/4, minor 1 for cases 1/2
        assert!((a3 - 1.0).abs() < 1e-14 && (q2 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn bounding_focal_sums() {
        for case_id in 1..=4 {
            let s = BoundingSpheroid::new(case_id, 0.8).unwrap();
            for theta in [0.2, 1.0, 2.5] {
                let x = s.point(theta, 0.7).unwrap();
                let (w, _) = omega_cartesian(&x, s.mu, s.kind);
                assert!((w - 2.0 * s.mu * s.eta.cosh()).abs() < 1e-13);
                let (ax, eq) = s.semi_axes();
                let lhs = (x.x0() / ax).powi(2) + (x.xp() / eq).powi(2);
                assert!((lhs - 1.0).abs() < 1e-13);
            }
        }
    }
}

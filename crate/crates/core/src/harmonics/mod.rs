//! Separated solutions of the spheroidal Laplace equations.
//!
//! A mode `U = N(eta) Theta(theta) Phi(phi)` pairs the angular factor
//! `P_n^m(cos theta)` with `cos(m phi)` or `sin(m phi)` and a radial factor:
//! `P_n^m(cosh eta)` or `Q_n^m(cosh eta)` for prolate modes, the numerical
//! [`OblateRadial`] for oblate ones. Both radial equations and the angular
//! one share the separation constant `m^2 - n(n+1)`.

mod legendre;
mod oblate;

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use legendre::{cos_poly, legendre_p, legendre_q};
pub use oblate::{separation_constant, OblateRadial, OBLATE_STEP};

use crate::diffops::fd::fd_second;
use crate::diffops::{fd_gradient_order, fd_laplacian_order, local_scale, FdOrder, FieldFn};
use crate::error::{Error, Result};
use crate::ga::scalar3;
use crate::report::{Entry, Report};
use crate::spheroidal::{invert, position, Case, CartesianPoint, SpheroidalPoint};
use oblate::{fourth_order_first, fourth_order_second, sixth_order_second};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Cos,
    Sin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Interior,
    Exterior,
}

macro_rules! text_enum {
    ($ty:ident { $($var:ident => $name:literal),* }) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($ty::$var => $name),* })
            }
        }
        impl std::str::FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s.trim().to_ascii_lowercase().as_str() {
                    $($name => Ok($ty::$var),)*
                    other => Err(Error::InvalidArgument(format!(
                        concat!("unknown ", stringify!($ty), " `{}`"), other
                    ))),
                }
            }
        }
    };
}

text_enum!(Parity { Cos => "cos", Sin => "sin" });
text_enum!(Kind { Interior => "interior", Exterior => "exterior" });

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HarmonicMode {
    pub n: u32,
    pub m: u32,
    pub parity: Parity,
    pub kind: Kind,
    pub case: Case,
}

impl HarmonicMode {
    pub fn new(n: u32, m: u32, parity: Parity, kind: Kind, case: Case) -> Result<Self> {
        if m > n {
            return Err(Error::InvalidArgument(format!("order m = {m} exceeds degree n = {n}")));
        }
        if m == 0 && parity == Parity::Sin {
            return Err(Error::InvalidArgument("sin parity needs m >= 1".into()));
        }
        Ok(Self {
            n,
            m,
            parity,
            kind,
            case,
        })
    }

    pub fn separation_constant(&self) -> f64 {
        separation_constant(self.n, self.m)
    }

    /// Every valid mode with `n <= n_max`.
    pub fn all(n_max: u32, kind: Kind, case: Case) -> Vec<Self> {
        let mut out = Vec::new();
        for n in 0..=n_max {
            for m in 0..=n {
                out.push(Self::new(n, m, Parity::Cos, kind, case).expect("valid"));
                if m > 0 {
                    out.push(Self::new(n, m, Parity::Sin, kind, case).expect("valid"));
                }
            }
        }
        out
    }
}

impl fmt::Display for HarmonicMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{})", self.n, self.m, self.parity, self.kind, self.case)
    }
}

#[derive(Clone, Debug)]
enum Radial {
    Legendre,
    Oblate(Arc<OblateRadial>),
}

/// A mode with its factors ready for evaluation.
#[derive(Clone, Debug)]
pub struct SeparatedSolution {
    pub mode: HarmonicMode,
    radial: Radial,
}

/// Default radial range tabulated for oblate modes.
pub const OBLATE_ETA_MAX: f64 = 4.0;

impl SeparatedSolution {
    /// `eta_max` bounds the radial range for oblate modes; prolate radial
    /// factors are closed-form and ignore it.
    pub fn new(mode: HarmonicMode, eta_max: f64) -> Result<Self> {
        let radial = match mode.case {
            Case::Prolate => Radial::Legendre,
            Case::Oblate => Radial::Oblate(Arc::new(OblateRadial::new(
                mode.n, mode.m, mode.kind, eta_max,
            )?)),
        };
        Ok(Self { mode, radial })
    }

    pub fn radial(&self, eta: f64) -> Result<f64> {
        let HarmonicMode { n, m, kind, .. } = self.mode;
        match &self.radial {
            Radial::Oblate(r) => r.value(eta),
            Radial::Legendre => {
                if !(eta > 0.0) && (kind == Kind::Exterior || m > 0) {
                    if kind == Kind::Interior && eta == 0.0 {
                        return Ok(0.0);
                    }
                    return Err(Error::DegenerateCoordinates {
                        reason: "radial factor on the focal segment",
                        eta,
                        theta: f64::NAN,
                    });
                }
                match kind {
                    Kind::Interior => legendre_p(n, m, eta.cosh()),
                    Kind::Exterior => legendre_q(n, m, eta.cosh()),
                }
            }
        }
    }

    pub fn angular(&self, theta: f64) -> Result<f64> {
        legendre_p(self.mode.n, self.mode.m, theta.cos())
    }

    pub fn azimuthal(&self, phi: f64) -> f64 {
        let a = f64::from(self.mode.m) * phi;
        match self.mode.parity {
            Parity::Cos => a.cos(),
            Parity::Sin => a.sin(),
        }
    }

    pub fn eval(&self, p: &SpheroidalPoint) -> Result<f64> {
        if p.case != self.mode.case {
            return Err(Error::InvalidArgument(format!(
                "{} mode evaluated at a {} point",
                self.mode.case, p.case
            )));
        }
        Ok(self.radial(p.eta)? * self.angular(p.theta)? * self.azimuthal(p.phi))
    }

    /// The mode as a Cartesian scalar field through [`invert`].
    pub fn field(&self, mu: f64) -> FieldFn {
        let sol = self.clone();
        let case = self.mode.case;
        FieldFn::new(move |x| {
            let p = invert(&CartesianPoint(*x), mu, case)?;
            Ok(scalar3(sol.eval(&p)?))
        })
    }
}

/// Product of the three separated factors at `p`.
pub fn eval_mode(mode: HarmonicMode, p: &SpheroidalPoint) -> Result<f64> {
    SeparatedSolution::new(mode, (p.eta + 1.0).max(OBLATE_ETA_MAX))?.eval(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Factor {
    Radial,
    Angular,
    Azimuthal,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OdeResidual {
    /// Residual divided by the sum of the magnitudes of the equation's terms.
    pub residual: f64,
    /// Separation constant used (fitted from the angular factor).
    pub constant: f64,
}

const ODE_STEP: f64 = 1e-3;

/// Separation constant fitted by least squares from the angular factor
/// `Theta = P_n^m(cos theta)` plugged into
/// `Theta'' + cot(theta) Theta' - (c + m^2 cot^2 theta) Theta = 0`.
pub fn fit_separation_constant(n: u32, m: u32) -> Result<f64> {
    let theta_f = |t: f64| legendre_p(n, m, t.cos());
    let m2 = f64::from(m * m);
    let (mut num, mut den) = (0.0, 0.0);
    for k in 1..20 {
        let t = PI * k as f64 / 20.0 + 0.013;
        let th = theta_f(t)?;
        let d1 = fourth_order_first(&theta_f, t, ODE_STEP)?;
        let d2 = fourth_order_second(&theta_f, t, ODE_STEP)?;
        let cot = 1.0 / t.tan();
        num += th * (d2 + cot * d1 - m2 * cot * cot * th);
        den += th * th;
    }
    Ok(num / den)
}

fn relative(res: f64, terms: &[f64]) -> f64 {
    let scale: f64 = terms.iter().map(|t| t.abs()).sum();
    if scale == 0.0 {
        res.abs()
    } else {
        res.abs() / scale
    }
}

/// Residual of one factor's ordinary differential equation at `sample`,
/// using the fitted separation constant and fourth-order differences.
pub fn ode_residual(mode: HarmonicMode, factor: Factor, sample: f64) -> Result<OdeResidual> {
    let constant = fit_separation_constant(mode.n, mode.m)?;
    ode_residual_with(mode, factor, sample, constant)
}

/// As [`ode_residual`] with an explicit separation constant.
pub fn ode_residual_with(
    mode: HarmonicMode,
    factor: Factor,
    sample: f64,
    constant: f64,
) -> Result<OdeResidual> {
    let sol = SeparatedSolution::new(mode, (sample + 1.0).max(OBLATE_ETA_MAX))?;
    let m2 = f64::from(mode.m * mode.m);
    let h = ODE_STEP;
    let residual = match factor {
        Factor::Azimuthal => {
            // amplitude-relative: Phi has unit amplitude
            let f = |p: f64| Ok(sol.azimuthal(p));
            let d2 = sixth_order_second(&f, sample, 0.03 / f64::from(mode.m.max(1)))?;
            let v = sol.azimuthal(sample);
            relative(d2 + m2 * v, &[m2.max(1.0)])
        }
        Factor::Angular => {
            if sample - 2.0 * h <= 0.0 || sample + 2.0 * h >= PI {
                return Err(Error::DegenerateCoordinates {
                    reason: "cot theta pole",
                    eta: f64::NAN,
                    theta: sample,
                });
            }
            let f = |t: f64| sol.angular(t);
            let (v, d1, d2) = (f(sample)?, fourth_order_first(&f, sample, h)?, fourth_order_second(&f, sample, h)?);
            let cot = 1.0 / sample.tan();
            let q = constant + m2 * cot * cot;
            relative(d2 + cot * d1 - q * v, &[d2, cot * d1, q * v])
        }
        Factor::Radial => {
            if mode.case == Case::Prolate && sample - 2.0 * h <= 0.0 {
                return Err(Error::DegenerateCoordinates {
                    reason: "coth eta pole",
                    eta: sample,
                    theta: f64::NAN,
                });
            }
            if mode.case == Case::Oblate && sample - 2.0 * h < 0.0 {
                return Err(Error::OutOfDomain(format!("eta = {sample} too close to the disk")));
            }
            let f = |e: f64| sol.radial(e);
            let (v, d1, d2) = (f(sample)?, fourth_order_first(&f, sample, h)?, fourth_order_second(&f, sample, h)?);
            let c = match mode.case {
                Case::Prolate => 1.0 / sample.tanh(),
                Case::Oblate => sample.tanh(),
            };
            let q = constant - m2 * c * c;
            relative(d2 + c * d1 + q * v, &[d2, c * d1, q * v])
        }
    };
    Ok(OdeResidual { residual, constant })
}

/// Sample grid in `(eta, theta, phi)` for Laplace residuals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeGrid {
    pub mu: f64,
    pub eta: (f64, f64),
    pub theta: (f64, f64),
    pub counts: [usize; 3],
}

impl Default for ModeGrid {
    fn default() -> Self {
        Self {
            mu: 1.0,
            eta: (0.3, 1.5),
            theta: (0.3, PI - 0.3),
            counts: [5, 5, 3],
        }
    }
}

fn lin(range: (f64, f64), count: usize, i: usize) -> f64 {
    if count <= 1 {
        0.5 * (range.0 + range.1)
    } else {
        range.0 + (range.1 - range.0) * i as f64 / (count - 1) as f64
    }
}

impl ModeGrid {
    pub fn points(&self, case: Case) -> Result<Vec<SpheroidalPoint>> {
        let [ne, nt, np] = self.counts;
        let mut out = Vec::with_capacity(ne * nt * np);
        for i in 0..ne {
            for j in 0..nt {
                for k in 0..np {
                    // phi offset keeps stencils off the coordinate planes
                    let phi = 0.37 + 2.0 * PI * k as f64 / np.max(1) as f64;
                    out.push(SpheroidalPoint::new(
                        case,
                        self.mu,
                        lin(self.eta, ne, i),
                        lin(self.theta, nt, j),
                        phi,
                    )?);
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LaplaceStats {
    pub max: f64,
    pub mean: f64,
    pub points: usize,
    /// `(eta, theta, phi)` of the largest residual.
    pub worst: Option<[f64; 3]>,
}

/// Step for mode stencils: well inside the distance to the coordinate
/// singularities and to the scale of a degree-`n` polynomial.
fn mode_step(p: &SpheroidalPoint, n: u32) -> f64 {
    (0.01 * local_scale(p) / f64::from(n.max(1))).min(1e-3 * p.mu)
}

/// Cartesian fourth-order Laplacian of the mode at one point, relative to
/// `sum_k |d_k^2 U| + |grad U|/mu + |U|/mu^2`.
pub fn laplace_residual_at(sol: &SeparatedSolution, p: &SpheroidalPoint) -> Result<f64> {
    let field = sol.field(p.mu);
    let x = position(p);
    let h = mode_step(p, sol.mode.n);
    let lap = fd_laplacian_order(&field, &x, h, FdOrder::Fourth)?.scalar_part();
    let grad = fd_gradient_order(&field, &x, h, FdOrder::Fourth)?.norm();
    let mut scale = sol.eval(p)?.abs() / (p.mu * p.mu) + grad / p.mu;
    for k in 0..3 {
        scale += fd_second(&field, &x.0, k, h, FdOrder::Fourth)?
            .scalar_part()
            .abs();
    }
    Ok(relative(lap, &[scale]))
}

/// Laplace residual statistics of a mode over a grid. Evaluation failures
/// count as infinite residuals.
pub fn laplace_residual(mode: HarmonicMode, grid: &ModeGrid) -> LaplaceStats {
    let pts = match grid.points(mode.case) {
        Ok(p) => p,
        Err(_) => {
            return LaplaceStats {
                max: f64::INFINITY,
                mean: f64::INFINITY,
                points: 0,
                worst: None,
            }
        }
    };
    let sol = SeparatedSolution::new(mode, grid.eta.1 + 1.0);
    let mut stats = LaplaceStats {
        max: 0.0,
        mean: 0.0,
        points: pts.len(),
        worst: None,
    };
    for p in &pts {
        let r = sol
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|s| laplace_residual_at(s, p))
            .unwrap_or(f64::INFINITY);
        let r = if r.is_nan() { f64::INFINITY } else { r };
        if stats.worst.is_none() || r > stats.max {
            stats.max = r;
            stats.worst = Some([p.eta, p.theta, p.phi]);
        }
        stats.mean += r;
    }
    if !pts.is_empty() {
        stats.mean /= pts.len() as f64;
    }
    stats
}

/// Tolerances and ranges for [`harmonics_suite`].
#[derive(Clone, Copy, Debug)]
pub struct HarmonicsConfig {
    pub laplace_tolerance: f64,
    pub ode_tolerance: f64,
    pub oblate_ode_tolerance: f64,
    pub cos_tolerance: f64,
    pub interior_n_max: u32,
    pub exterior_n_max: u32,
    pub oblate_n_max: u32,
    pub interior_grid: ModeGrid,
    pub exterior_grid: ModeGrid,
}

impl Default for HarmonicsConfig {
    fn default() -> Self {
        Self {
            laplace_tolerance: 1e-5,
            ode_tolerance: 1e-6,
            oblate_ode_tolerance: 1e-8,
            cos_tolerance: 1e-12,
            interior_n_max: 6,
            exterior_n_max: 4,
            oblate_n_max: 4,
            interior_grid: ModeGrid::default(),
            exterior_grid: ModeGrid {
                eta: (0.5, 2.0),
                ..ModeGrid::default()
            },
        }
    }
}

fn laplace_entry(name: &str, modes: &[HarmonicMode], grid: &ModeGrid, tol: f64) -> Entry {
    let mut entry = Entry::new(name, tol, true);
    for mode in modes {
        let s = laplace_residual(*mode, grid);
        let w = s.worst.unwrap_or([f64::NAN; 3]);
        entry.record(
            s.max,
            &[f64::from(mode.n), f64::from(mode.m), w[0], w[1], w[2]],
        );
    }
    entry.finish()
}

/// Legendre and oblate-radial checks, mode Laplace residuals and the
/// separation-constant fit.
pub fn harmonics_suite(cfg: &HarmonicsConfig) -> Report {
    let mut report = Report::new("harmonics");

    let mut cos = Entry::new("cos_poly(m, alpha) = cos(m arccos alpha), m <= 12", cfg.cos_tolerance, true);
    for m in 0..=12u32 {
        for i in 0..=200 {
            let a = -1.0 + 0.01 * i as f64;
            let exact = (f64::from(m) * a.acos()).cos();
            cos.record(cos_poly(m, a) - exact, &[f64::from(m), a]);
        }
    }
    report.push(cos.finish());

    let interior = HarmonicMode::all(cfg.interior_n_max, Kind::Interior, Case::Prolate);
    report.push(laplace_entry(
        &format!("prolate interior modes n <= {} are harmonic", cfg.interior_n_max),
        &interior,
        &cfg.interior_grid,
        cfg.laplace_tolerance,
    ));
    let exterior = HarmonicMode::all(cfg.exterior_n_max, Kind::Exterior, Case::Prolate);
    report.push(laplace_entry(
        &format!("prolate exterior modes n <= {} are harmonic", cfg.exterior_n_max),
        &exterior,
        &cfg.exterior_grid,
        cfg.laplace_tolerance,
    ));
    for kind in [Kind::Interior, Kind::Exterior] {
        let modes = HarmonicMode::all(cfg.oblate_n_max, kind, Case::Oblate);
        let grid = match kind {
            Kind::Interior => cfg.interior_grid,
            Kind::Exterior => cfg.exterior_grid,
        };
        report.push(laplace_entry(
            &format!("oblate {kind} modes n <= {} are harmonic", cfg.oblate_n_max),
            &modes,
            &grid,
            cfg.laplace_tolerance,
        ));
    }

    let mut ode = Entry::new("oblate radial ODE residual", cfg.oblate_ode_tolerance, true);
    for kind in [Kind::Interior, Kind::Exterior] {
        for n in 0..=cfg.oblate_n_max {
            for m in 0..=n {
                match OblateRadial::new(n, m, kind, 2.5) {
                    Ok(r) => {
                        for i in 0..=25 {
                            let eta = 0.1 * i as f64;
                            let e = r.residual(eta).unwrap_or(f64::INFINITY);
                            ode.record(e, &[f64::from(n), f64::from(m), eta]);
                        }
                    }
                    Err(_) => ode.record(f64::INFINITY, &[f64::from(n), f64::from(m)]),
                }
            }
        }
    }
    report.push(ode.finish());

    let n_max = cfg.interior_n_max;
    let mut fit = Entry::new("fitted separation constant = m^2 - n(n+1)", cfg.ode_tolerance, true);
    let mut literal = Entry::new("radial equation with constant n", cfg.ode_tolerance, false);
    let mut angular = Entry::new("angular ODE residual with fitted constant", cfg.ode_tolerance, true);
    let mut radial = Entry::new("prolate radial ODE residual with fitted constant", cfg.ode_tolerance, true);
    let mut azimuthal = Entry::new("azimuthal ODE residual", 1e-10, true);
    for n in 0..=n_max {
        for m in 0..=n {
            let mode = HarmonicMode::new(n, m, Parity::Cos, Kind::Interior, Case::Prolate).expect("valid");
            let c = fit_separation_constant(n, m).unwrap_or(f64::NAN);
            let exact = mode.separation_constant();
            fit.record((c - exact) / exact.abs().max(1.0), &[f64::from(n), f64::from(m), c]);
            for s in [0.4, 0.9, 1.3, 2.2] {
                let pt = [f64::from(n), f64::from(m), s];
                let ang = ode_residual_with(mode, Factor::Angular, s, c).map(|r| r.residual);
                angular.record(ang.unwrap_or(f64::INFINITY), &pt);
                let rad = ode_residual_with(mode, Factor::Radial, s, c).map(|r| r.residual);
                radial.record(rad.unwrap_or(f64::INFINITY), &pt);
                let az = ode_residual_with(mode, Factor::Azimuthal, s, c).map(|r| r.residual);
                azimuthal.record(az.unwrap_or(f64::INFINITY), &pt);
                let lit = ode_residual_with(mode, Factor::Radial, s, f64::from(n)).map(|r| r.residual);
                literal.record(lit.unwrap_or(f64::INFINITY), &pt);
            }
        }
    }
    report.push(fit.finish());
    report.push(angular.finish());
    report.push(radial.finish());
    report.push(azimuthal.finish());
    report.push(literal.finish().with_note(
        "informational: the bare degree n does not separate the equations; the fitted constant is m^2 - n(n+1)",
    ));

    let mut decay = Entry::new("exterior modes decrease in eta for eta >= 2", 0.0, true);
    for mode in HarmonicMode::all(cfg.exterior_n_max, Kind::Exterior, Case::Prolate)
        .into_iter()
        .chain(HarmonicMode::all(cfg.exterior_n_max, Kind::Exterior, Case::Oblate))
    {
        let sol = match SeparatedSolution::new(mode, 6.5) {
            Ok(s) => s,
            Err(_) => {
                decay.record(1.0, &[f64::from(mode.n), f64::from(mode.m)]);
                continue;
            }
        };
        let mut prev = f64::INFINITY;
        let mut violations = 0.0;
        for i in 0..=40 {
            let eta = 2.0 + 0.1 * i as f64;
            let v = sol.radial(eta).map(f64::abs).unwrap_or(f64::INFINITY);
            if !(v < prev) {
                violations += 1.0;
            }
            prev = v;
        }
        decay.record(violations, &[f64::from(mode.n), f64::from(mode.m)]);
    }
    report.push(decay.finish());
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prolate(n: u32, m: u32, parity: Parity, kind: Kind) -> HarmonicMode {
        HarmonicMode::new(n, m, parity, kind, Case::Prolate).unwrap()
    }

    #[test]
    fn simple_modes() {
        let p = SpheroidalPoint::prolate(1.3, 0.8, 1.1, 0.4).unwrap();
        let one = prolate(0, 0, Parity::Cos, Kind::Interior);
        assert_eq!(eval_mode(one, &p).unwrap(), 1.0);
        let lin = prolate(1, 0, Parity::Cos, Kind::Interior);
        let x0 = position(&p).x0();
        assert!((eval_mode(lin, &p).unwrap() - x0 / p.mu).abs() < 1e-14);

        let q = SpheroidalPoint::prolate(1.0, 1.0, 1.0, 0.5).unwrap();
        let mode = prolate(2, 1, Parity::Cos, Kind::Interior);
        let (c, s) = (1f64.cos(), 1f64.sin());
        let (ch, sh) = (1f64.cosh(), 1f64.sinh());
        let expected = (3.0 * c * s) * (3.0 * ch * sh) * 0.5f64.cos();
        assert!((eval_mode(mode, &q).unwrap() - expected).abs() < 1e-13);
    }

    #[test]
    fn mode_validation() {
        assert!(HarmonicMode::new(1, 2, Parity::Cos, Kind::Interior, Case::Prolate).is_err());
        assert!(HarmonicMode::new(1, 0, Parity::Sin, Kind::Interior, Case::Prolate).is_err());
        let sol = SeparatedSolution::new(prolate(1, 0, Parity::Cos, Kind::Interior), 1.0).unwrap();
        let p = SpheroidalPoint::oblate(1.0, 0.5, 0.5, 0.0).unwrap();
        assert!(sol.eval(&p).is_err());
    }

    #[test]
    fn constant_fit_and_residuals() {
        let c = fit_separation_constant(2, 1).unwrap();
        assert!((c - (1.0 - 6.0)).abs() < 1e-6, "{c}");
        let mode = prolate(2, 1, Parity::Cos, Kind::Interior);
        let a = ode_residual(mode, Factor::Angular, 1.0).unwrap();
        let r = ode_residual(mode, Factor::Radial, 1.0).unwrap();
        let z = ode_residual(mode, Factor::Azimuthal, 0.7).unwrap();
        assert!(a.residual < 1e-6 && r.residual < 1e-6 && z.residual < 1e-10);
        assert!(ode_residual(mode, Factor::Angular, 0.0).is_err());
        assert!(ode_residual(mode, Factor::Radial, 0.0).is_err());
    }

    #[test]
    fn laplace_examples() {
        let grid = ModeGrid::default();
        let s = laplace_residual(prolate(1, 0, Parity::Cos, Kind::Interior), &grid);
        assert!(s.max < 1e-8, "{s:?}");
        let s = laplace_residual(prolate(3, 2, Parity::Sin, Kind::Interior), &grid);
        assert!(s.max < 1e-5, "{s:?}");
        let ext = ModeGrid {
            eta: (0.5, 2.0),
            ..grid
        };
        let s = laplace_residual(prolate(2, 0, Parity::Cos, Kind::Exterior), &ext);
        assert!(s.max < 1e-5, "{s:?}");
    }

    #[test]
    fn suite_passes() {
        let r = harmonics_suite(&HarmonicsConfig::default());
        assert!(r.pass, "{:#?}", r.failures());
        assert!(!r.entry("radial equation with constant n").unwrap().holds);
    }
}

//! Named verification suites and the run configuration that drives them.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::diffops::{
    identity_suite_grad_with, laplacian_equivalence, GradTolerances, LaplacianEquivConfig,
};
use crate::diffops::symmetry::{bracket_suite, jx_squared_check};
use crate::error::{Error, Result};
use crate::frames::{identity_suite_with, IdentityTolerances, SampleBox};
use crate::harmonics::{harmonics_suite, HarmonicsConfig};
use crate::monogenic::{monogenic_suite, MonogenicConfig};
use crate::projection::{
    limit_error, project, project_coordinates, project_radical, unproject, PlanePoint,
    ProjectionCase,
};
use crate::report::{Entry, Report};
use crate::sampling::rng_from_seed;
use crate::spheroidal::{dot, frames, invert, position, Case, CartesianPoint, SpheroidalPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Identities,
    IdentitiesGrad,
    Brackets,
    Jx2,
    LaplacianEquiv,
    Monogenic,
    Harmonics,
    Coordinates,
    Projection,
    All,
}

impl Suite {
    /// Every concrete suite, in the order `all` runs them.
    pub const CONCRETE: [Suite; 9] = [
        Suite::Identities,
        Suite::IdentitiesGrad,
        Suite::Brackets,
        Suite::Jx2,
        Suite::LaplacianEquiv,
        Suite::Monogenic,
        Suite::Harmonics,
        Suite::Coordinates,
        Suite::Projection,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::IdentitiesGrad => "identities-grad",
            Suite::Brackets => "brackets",
            Suite::Jx2 => "jx2",
            Suite::LaplacianEquiv => "laplacian-equiv",
            Suite::Monogenic => "monogenic",
            Suite::Harmonics => "harmonics",
            Suite::Coordinates => "coordinates",
            Suite::Projection => "projection",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::CONCRETE
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|suite| suite.name() == s)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

/// Recognised `--tolerance` keys with their defaults.
pub const TOLERANCE_KEYS: [(&str, f64); 16] = [
    ("identities.closed_form", 1e-8),
    ("identities.fd", 1e-5),
    ("identities-grad.quaternion", 1e-6),
    ("identities-grad.fd", 1e-5),
    ("laplacian-equiv", 1e-5),
    ("harmonics.laplace", 1e-5),
    ("harmonics.ode", 1e-6),
    ("harmonics.oblate_ode", 1e-8),
    ("harmonics.cos", 1e-12),
    ("monogenic.kernel", 1e-6),
    ("monogenic.hypergeom", 1e-9),
    ("coordinates.round_trip", 1e-10),
    ("coordinates.reciprocity", 1e-12),
    ("coordinates.tangent", 1e-8),
    ("projection.agreement", 1e-12),
    ("projection.ratio", 0.1),
];

/// Settings shared by every suite.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    /// Overrides each sampled suite's own point count.
    pub samples: Option<usize>,
    /// Base step for Cartesian finite-difference checks.
    pub fd_step: Option<f64>,
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            samples: None,
            fd_step: None,
            tolerances: BTreeMap::new(),
        }
    }
}

impl RunConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    /// Set one tolerance override. Unknown keys and non-positive values are
    /// rejected.
    pub fn set_tolerance(&mut self, key: &str, value: f64) -> Result<()> {
        if !TOLERANCE_KEYS.iter().any(|(k, _)| *k == key) {
            let known: Vec<&str> = TOLERANCE_KEYS.iter().map(|(k, _)| *k).collect();
            return Err(Error::InvalidArgument(format!(
                "unknown tolerance key `{key}` (known: {})",
                known.join(", ")
            )));
        }
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::InvalidArgument(format!("tolerance {key} = {value} must be > 0")));
        }
        self.tolerances.insert(key.to_string(), value);
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(h) = self.fd_step {
            if !(h > 0.0) || !h.is_finite() {
                return Err(Error::InvalidArgument(format!("fd_step = {h} must be > 0")));
            }
        }
        if self.samples == Some(0) {
            return Err(Error::InvalidArgument("samples must be > 0".into()));
        }
        for (k, v) in &self.tolerances {
            let mut probe = Self::default();
            probe.set_tolerance(k, *v)?;
        }
        Ok(())
    }

    pub fn tolerance(&self, key: &str) -> f64 {
        self.tolerances.get(key).copied().unwrap_or_else(|| {
            TOLERANCE_KEYS
                .iter()
                .find(|(k, _)| *k == key)
                .map(|(_, v)| *v)
                .expect("known tolerance key")
        })
    }

    fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }
}

/// Run one suite, or every suite for [`Suite::All`].
pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    Ok(match suite {
        Suite::All => {
            let mut report = Report::new("all");
            for s in Suite::CONCRETE {
                report.extend(run_suite(s, cfg)?);
            }
            report
        }
        Suite::Identities => identity_suite_with(
            cfg.samples_or(1000),
            cfg.seed,
            SampleBox::default(),
            IdentityTolerances {
                closed_form: cfg.tolerance("identities.closed_form"),
                fd: cfg.tolerance("identities.fd"),
            },
        ),
        Suite::IdentitiesGrad => {
            let mut tol = GradTolerances {
                quaternion: cfg.tolerance("identities-grad.quaternion"),
                fd: cfg.tolerance("identities-grad.fd"),
                ..GradTolerances::default()
            };
            if let Some(h) = cfg.fd_step {
                tol.h_second = h;
            }
            identity_suite_grad_with(cfg.samples_or(1000), cfg.seed, SampleBox::default(), tol)
        }
        Suite::Brackets => bracket_suite(20, 4, cfg.seed),
        Suite::Jx2 => jx_squared_check(4),
        Suite::LaplacianEquiv => {
            let mut lc = LaplacianEquivConfig {
                tolerance: cfg.tolerance("laplacian-equiv"),
                ..LaplacianEquivConfig::default()
            };
            if let Some(h) = cfg.fd_step {
                lc.h = h;
            }
            if let Some(n) = cfg.samples {
                lc.points_per_field = n.div_ceil(lc.fields).max(1);
            }
            laplacian_equivalence(cfg.seed, lc)
        }
        Suite::Monogenic => {
            let mut mc = MonogenicConfig {
                kernel_tolerance: cfg.tolerance("monogenic.kernel"),
                hypergeom_tolerance: cfg.tolerance("monogenic.hypergeom"),
                kernel_points: cfg.samples_or(100),
                ..MonogenicConfig::default()
            };
            if let Some(h) = cfg.fd_step {
                mc.fd_step = h;
            }
            monogenic_suite(cfg.seed, &mc)
        }
        Suite::Harmonics => harmonics_suite(&HarmonicsConfig {
            laplace_tolerance: cfg.tolerance("harmonics.laplace"),
            ode_tolerance: cfg.tolerance("harmonics.ode"),
            oblate_ode_tolerance: cfg.tolerance("harmonics.oblate_ode"),
            cos_tolerance: cfg.tolerance("harmonics.cos"),
            ..HarmonicsConfig::default()
        }),
        Suite::Coordinates => coordinates_suite(cfg.samples_or(1000), cfg.seed, cfg),
        Suite::Projection => projection_suite(cfg.samples_or(1000), cfg.seed, cfg),
    })
}

fn angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Round trips of the position map, reciprocity of the frames and the
/// closed-form tangents against finite differences of the position map.
fn coordinates_suite(samples: usize, seed: u64, cfg: &RunConfig) -> Report {
    let mut rng = rng_from_seed(seed);
    let domain = SampleBox::default();
    let rt = cfg.tolerance("coordinates.round_trip");
    let recip = cfg.tolerance("coordinates.reciprocity");
    let tan = cfg.tolerance("coordinates.tangent");
    let mut report = Report::new("coordinates");
    for case in [Case::Prolate, Case::Oblate] {
        let mut forward = Entry::new(format!("{case}: invert(position(p)) = p"), rt, true);
        let mut backward = Entry::new(format!("{case}: position(invert(x)) = x"), rt, true);
        let mut reciprocal = Entry::new(format!("{case}: x^i . x_j = delta^i_j"), recip, true);
        let mut tangents = Entry::new(format!("{case}: tangents = FD of position"), tan, true);
        for k in 0..samples.max(1) {
            let mu = rng.gen_range(0.5..2.0);
            let (eta, theta, phi) = domain.sample(&mut rng);
            let point = [mu, eta, theta, phi];
            let p = SpheroidalPoint::new(case, mu, eta, theta, phi).expect("inside chart");
            let x = position(&p);
            forward.record(
                match invert(&x, mu, case) {
                    Ok(q) => (q.eta - eta)
                        .abs()
                        .max((q.theta - theta).abs())
                        .max(angle_diff(q.phi, phi)),
                    Err(_) => f64::NAN,
                },
                &point,
            );

            let c: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-3.0..3.0));
            let y = CartesianPoint(c);
            backward.record(
                match invert(&y, mu, case) {
                    Ok(q) => position(&q).max_abs_diff(&y) / y.norm(),
                    Err(_) => f64::NAN,
                },
                &c,
            );

            if k % 2 == 1 {
                continue;
            }
            let Ok(f) = frames(&p) else {
                reciprocal.record(f64::NAN, &point);
                continue;
            };
            let mut worst: f64 = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    let delta = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((dot(&f.reciprocal[i], &f.tangent[j]) - delta).abs());
                }
            }
            reciprocal.record(worst, &point);

            let h = 1e-6;
            let at = |d: [f64; 3]| {
                let q = SpheroidalPoint::new(case, mu, eta + d[0], theta + d[1], phi + d[2])
                    .expect("inside chart");
                position(&q).0
            };
            let mut worst: f64 = 0.0;
            for (i, t) in f.tangent.iter().enumerate() {
                let shift = |s: f64| {
                    let mut d = [0.0; 3];
                    d[i] = s * h;
                    at(d)
                };
                let (p1, m1) = (shift(1.0), shift(-1.0));
                let fd: Vec<f64> = (0..3).map(|c| (p1[c] - m1[c]) / (2.0 * h)).collect();
                let exact = t.vector_part();
                let err = (0..3).map(|c| (fd[c] - exact[c]).abs()).fold(0.0, f64::max);
                worst = worst.max(err / t.norm());
            }
            tangents.record(worst, &point);
        }
        report.push(forward.finish());
        report.push(backward.finish());
        report.push(reciprocal.finish());
        report.push(tangents.finish());
    }
    report
}

/// Agreement of the quotient, radical and coordinate forms of the
/// projection, inverse round trips, and the stereographic limit rate.
fn projection_suite(samples: usize, seed: u64, cfg: &RunConfig) -> Report {
    let mut rng = rng_from_seed(seed);
    let tol = cfg.tolerance("projection.agreement");
    let ratio_tol = cfg.tolerance("projection.ratio");
    let mut report = Report::new("projection");
    for case in [ProjectionCase::Case1, ProjectionCase::Case3] {
        let id = case.id();
        let mut radical = Entry::new(format!("case {id}: quotient form = radical form"), tol, true);
        let mut coords =
            Entry::new(format!("case {id}: quotient form = coordinate form"), tol, true);
        let mut there = Entry::new(format!("case {id}: unproject(project(x)) = x"), tol, true);
        let mut back = Entry::new(format!("case {id}: project(unproject(t)) = t"), tol, true);
        for _ in 0..samples.max(1) {
            let nu = rng.gen_range(0.05..1.5);
            let theta = rng.gen_range(0.0..PI - 0.1);
            let phi = rng.gen_range(0.0..2.0 * PI);
            let point = [nu, theta, phi];
            let x = case
                .spheroid(nu)
                .and_then(|s| s.point(theta, phi))
                .expect("valid bounding spheroid");
            match project(&x, nu, case) {
                Ok(p) => {
                    let scale = p.t.max(1.0);
                    radical.record(
                        project_radical(x.x0(), nu, case).map_or(f64::NAN, |t| (t - p.t).abs() / scale),
                        &point,
                    );
                    coords.record(
                        project_coordinates(theta, nu, case)
                            .map_or(f64::NAN, |t| (t - p.t).abs() / scale),
                        &point,
                    );
                    there.record(unproject(&p, nu, case).max_abs_diff(&x), &point);
                }
                Err(_) => {
                    radical.record(f64::NAN, &point);
                    coords.record(f64::NAN, &point);
                    there.record(f64::NAN, &point);
                }
            }

            let t = PlanePoint::new(rng.gen_range(0.0..3.0), rng.gen_range(0.0..2.0 * PI));
            let y = unproject(&t, nu, case);
            back.record(
                match project(&y, nu, case) {
                    Ok(q) => (q.t - t.t).abs().max(t.t * angle_diff(q.phi, t.phi)) / t.t.max(1.0),
                    Err(_) => f64::NAN,
                },
                &[nu, t.t, t.phi],
            );
        }
        report.push(radical.finish());
        report.push(coords.finish());
        report.push(there.finish());
        report.push(back.finish());

        let nus = [1e-3, 5e-4, 2.5e-4];
        let errors: Vec<f64> = nus
            .iter()
            .map(|&nu| {
                let mut worst: f64 = 0.0;
                for i in 1..=16 {
                    let theta = (PI - 0.5) * i as f64 / 16.0;
                    let e = limit_error(nu, case, theta, 0.3).unwrap_or(f64::NAN);
                    worst = if e.is_nan() { f64::NAN } else { worst.max(e) };
                }
                worst
            })
            .collect();
        let ratios = [errors[0] / errors[1], errors[1] / errors[2]];
        let dev = ratios.iter().map(|r| (r - 2.0).abs()).fold(0.0, f64::max);
        report.push(
            Entry::measured(
                format!("case {id}: stereographic limit error halves with nu"),
                dev,
                ratio_tol,
                true,
            )
            .with_note(format!(
                "max errors {:.3e}, {:.3e}, {:.3e}; ratios {:.4}, {:.4}",
                errors[0], errors[1], errors[2], ratios[0], ratios[1]
            )),
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::CONCRETE {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn tolerance_overrides() {
        let mut cfg = RunConfig::default();
        assert_eq!(cfg.tolerance("harmonics.cos"), 1e-12);
        cfg.set_tolerance("harmonics.cos", 1e-10).unwrap();
        assert_eq!(cfg.tolerance("harmonics.cos"), 1e-10);
        assert!(cfg.set_tolerance("nope", 1.0).is_err());
        assert!(cfg.set_tolerance("harmonics.cos", -1.0).is_err());
        cfg.fd_step = Some(0.0);
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn coordinates_and_projection_pass() {
        let cfg = RunConfig::default();
        for suite in [Suite::Coordinates, Suite::Projection] {
            let r = run_suite(suite, &cfg).unwrap();
            assert!(r.pass, "{:#?}", r.failures());
        }
    }
}

//! Azimuth-dependent quaternion frame and the even element
//! `z = cosh(eta + I_p theta)`.
//!
//! `I_p = e_p e_0`, `J_p = dI_p/dphi = e_p' e_0` and `K_p = I_p J_p = e_p' e_p`
//! obey Hamilton's rules, so `z` lives in the commutative plane spanned by
//! `1` and `I_p` and behaves like a complex number there.

use std::f64::consts::PI;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ga::{e, scalar3, Mv};
use crate::report::{Entry, Report};
use crate::sampling::rng_from_seed;

/// The frame `{e_p, e_p', I_p, J_p, K_p}` at azimuth `phi`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseState {
    pub phi: f64,
    pub e_p: Mv,
    pub e_p_dot: Mv,
    pub i_p: Mv,
    pub j_p: Mv,
    pub k_p: Mv,
}

impl PhaseState {
    pub fn new(phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        let e_p = &(e(1) * c) + &(e(2) * s);
        let e_p_dot = &(e(1) * -s) + &(e(2) * c);
        let i_p = &e_p * &e(0);
        let j_p = &e_p_dot * &e(0);
        let k_p = &e_p_dot * &e_p;
        Self {
            phi,
            e_p,
            e_p_dot,
            i_p,
            j_p,
            k_p,
        }
    }
}

/// `e_0 A e_0`, which flips the sign of the `I_p` component of an even
/// element of the `{1, I_p}` plane.
pub fn e0_conjugate(a: &Mv) -> Mv {
    &(&e(0) * a) * &e(0)
}

/// `z = cosh(eta + I_p theta)` stored by its arguments.
#[derive(Clone, Debug, PartialEq)]
pub struct Zeta {
    pub eta: f64,
    pub theta: f64,
    pub phase: PhaseState,
}

/// All first and second partials of `z` that the coordinate formulas use.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaPartials {
    pub z_eta: Mv,
    pub z_theta: Mv,
    pub z_phi: Mv,
    pub z_etaeta: Mv,
    pub z_thetatheta: Mv,
    pub z_etatheta: Mv,
    pub z_phiphi: Mv,
    pub z_phieta: Mv,
}

impl Zeta {
    /// Requires `eta >= 0` and `theta` in `[0, pi]`.
    pub fn new(eta: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(eta >= 0.0) || !eta.is_finite() {
            return Err(Error::OutOfDomain(format!("eta = {eta} must be >= 0")));
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::OutOfDomain(format!("theta = {theta} outside [0, pi]")));
        }
        Ok(Self {
            eta,
            theta,
            phase: PhaseState::new(phi),
        })
    }

    pub fn phi(&self) -> f64 {
        self.phase.phi
    }

    fn plane(&self, scalar: f64, ip: f64) -> Mv {
        &scalar3(scalar) + &(&self.phase.i_p * ip)
    }

    /// `cosh(eta) cos(theta) + I_p sinh(eta) sin(theta)`.
    pub fn value(&self) -> Mv {
        let (st, ct) = self.theta.sin_cos();
        self.plane(self.eta.cosh() * ct, self.eta.sinh() * st)
    }

    /// `e_0 z e_0`.
    pub fn conj(&self) -> Mv {
        let (st, ct) = self.theta.sin_cos();
        self.plane(self.eta.cosh() * ct, -self.eta.sinh() * st)
    }

    /// `z_eta = sinh(eta + I_p theta)`.
    pub fn z_eta(&self) -> Mv {
        let (st, ct) = self.theta.sin_cos();
        self.plane(self.eta.sinh() * ct, self.eta.cosh() * st)
    }

    /// `z_phi eta = J_p cosh(eta) sin(theta)`.
    pub fn z_phieta(&self) -> Mv {
        &self.phase.j_p * (self.eta.cosh() * self.theta.sin())
    }

    pub fn partials(&self) -> ZetaPartials {
        let z = self.value();
        let z_eta = self.z_eta();
        let i_p = &self.phase.i_p;
        let j_p = &self.phase.j_p;
        let sh_s = self.eta.sinh() * self.theta.sin();
        ZetaPartials {
            z_theta: i_p * &z_eta,
            z_eta,
            z_phi: j_p * sh_s,
            z_etaeta: z.clone(),
            z_thetatheta: -&z,
            z_etatheta: i_p * &z,
            z_phiphi: i_p * -sh_s,
            z_phieta: self.z_phieta(),
        }
    }
}

pub fn zeta(eta: f64, theta: f64, phi: f64) -> Result<Zeta> {
    Zeta::new(eta, theta, phi)
}

pub fn zeta_partials(z: &Zeta) -> ZetaPartials {
    z.partials()
}

/// Sample ranges for the identity suites.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SampleBox {
    pub eta: (f64, f64),
    pub theta: (f64, f64),
    pub phi: (f64, f64),
}

impl Default for SampleBox {
    fn default() -> Self {
        Self {
            eta: (0.1, 2.0),
            // keep away from theta = pi/2 where (z - z~)/(z + z~) has a pole
            theta: (0.05, PI - 0.05),
            phi: (0.0, 2.0 * PI),
        }
    }
}

impl SampleBox {
    pub fn sample(&self, rng: &mut impl Rng) -> (f64, f64, f64) {
        (
            rng.gen_range(self.eta.0..self.eta.1),
            rng.gen_range(self.theta.0..self.theta.1),
            rng.gen_range(self.phi.0..self.phi.1),
        )
    }
}

struct Check {
    name: &'static str,
    asserted: bool,
    note: Option<&'static str>,
    /// Deviation from the identity at one sample.
    eval: Box<dyn Fn(&Zeta) -> f64>,
}

fn check(name: &'static str, eval: impl Fn(&Zeta) -> f64 + 'static) -> Check {
    Check {
        name,
        asserted: true,
        note: None,
        eval: Box::new(eval),
    }
}

fn informational(
    name: &'static str,
    note: &'static str,
    eval: impl Fn(&Zeta) -> f64 + 'static,
) -> Check {
    Check {
        name,
        asserted: false,
        note: Some(note),
        eval: Box::new(eval),
    }
}

/// An asserted identity taken verbatim from the table although it does not
/// hold; the note says what the correct relation is.
fn printed(name: &'static str, note: &'static str, eval: impl Fn(&Zeta) -> f64 + 'static) -> Check {
    Check {
        name,
        asserted: true,
        note: Some(note),
        eval: Box::new(eval),
    }
}

fn dev(a: &Mv, b: &Mv) -> f64 {
    a.max_abs_diff(b)
}

fn quaternion_fd_derivative(phi: f64, pick: fn(&PhaseState) -> Mv) -> Mv {
    let h = 1e-5;
    (&pick(&PhaseState::new(phi + h)) - &pick(&PhaseState::new(phi - h))) / (2.0 * h)
}

fn closed_form_checks() -> Vec<Check> {
    vec![
        check("z zbar = (cosh 2eta + cos 2theta)/2", |z| {
            let lhs = &z.value() * &z.conj();
            let rhs = scalar3(0.5 * ((2.0 * z.eta).cosh() + (2.0 * z.theta).cos()));
            dev(&lhs, &rhs)
        }),
        informational(
            "z zbar = cosh 2eta + cos 2theta (table form, no 1/2)",
            "the factor 1/2 is missing from the identity table; the half form is asserted",
            |z| {
                let lhs = &z.value() * &z.conj();
                dev(&lhs, &scalar3((2.0 * z.eta).cosh() + (2.0 * z.theta).cos()))
            },
        ),
        check("z_eta zbar_eta = (cosh 2eta - cos 2theta)/2", |z| {
            let ze = z.z_eta();
            let lhs = &ze * &e0_conjugate(&ze);
            dev(&lhs, &scalar3(0.5 * ((2.0 * z.eta).cosh() - (2.0 * z.theta).cos())))
        }),
        check("z_theta zbar_theta = z_eta zbar_eta", |z| {
            let p = z.partials();
            let lhs = &p.z_theta * &e0_conjugate(&p.z_theta);
            let rhs = &p.z_eta * &e0_conjugate(&p.z_eta);
            dev(&lhs, &rhs)
        }),
        check("z_phi zbar_phi = sinh^2 eta sin^2 theta", |z| {
            let p = z.partials();
            let lhs = &p.z_phi * &e0_conjugate(&p.z_phi);
            let v = z.eta.sinh() * z.theta.sin();
            dev(&lhs, &scalar3(v * v))
        }),
        check("z zbar + z_eta zbar_eta = cosh 2eta", |z| {
            let ze = z.z_eta();
            let lhs = &(&z.value() * &z.conj()) + &(&ze * &e0_conjugate(&ze));
            dev(&lhs, &scalar3((2.0 * z.eta).cosh()))
        }),
        check("z_eta zbar + z zbar_eta = sinh 2eta", |z| {
            let ze = z.z_eta();
            let lhs = &(&ze * &z.conj()) + &(&z.value() * &e0_conjugate(&ze));
            dev(&lhs, &scalar3((2.0 * z.eta).sinh()))
        }),
        check("-I_p (z_theta zbar - z zbar_theta) = sinh 2eta", |z| {
            let p = z.partials();
            let diff = &(&p.z_theta * &z.conj()) - &(&z.value() * &e0_conjugate(&p.z_theta));
            let lhs = -(&z.phase.i_p * &diff);
            dev(&lhs, &scalar3((2.0 * z.eta).sinh()))
        }),
        check("z_theta zbar + z zbar_theta = -sin 2theta", |z| {
            let p = z.partials();
            let lhs = &(&p.z_theta * &z.conj()) + &(&z.value() * &e0_conjugate(&p.z_theta));
            dev(&lhs, &scalar3(-(2.0 * z.theta).sin()))
        }),
        printed(
            "z_theta zbar - z zbar_theta = -sin 2theta",
            "false as printed: the difference equals I_p sinh 2eta; the sum carries -sin 2theta",
            |z| {
                let p = z.partials();
                let lhs =
                    &(&p.z_theta * &z.conj()) - &(&z.value() * &e0_conjugate(&p.z_theta));
                dev(&lhs, &scalar3(-(2.0 * z.theta).sin()))
            },
        ),
        check("I_p (z_eta zbar - z zbar_eta) = -sin 2theta", |z| {
            let ze = z.z_eta();
            let diff = &(&ze * &z.conj()) - &(&z.value() * &e0_conjugate(&ze));
            let lhs = &z.phase.i_p * &diff;
            dev(&lhs, &scalar3(-(2.0 * z.theta).sin()))
        }),
        check("(z - zbar)/(z + zbar) = I_p tanh eta tan theta", |z| {
            let num = &z.value() - &z.conj();
            let den = &z.value() + &z.conj();
            let lhs = &num * &den.inverse().expect("z + zbar is a nonzero scalar");
            let rhs = &z.phase.i_p * (z.eta.tanh() * z.theta.tan());
            dev(&lhs, &rhs) / (1.0 + rhs.max_abs())
        }),
        check("(z_eta - zbar_eta)/(z_eta + zbar_eta) = I_p coth eta tan theta", |z| {
            let ze = z.z_eta();
            let zeb = e0_conjugate(&ze);
            let lhs = &(&ze - &zeb) * &(&ze + &zeb).inverse().expect("nonzero scalar");
            let rhs = &z.phase.i_p * (z.theta.tan() / z.eta.tanh());
            dev(&lhs, &rhs) / (1.0 + rhs.max_abs())
        }),
        check("z_phi / z_phieta = tanh eta", |z| {
            let p = z.partials();
            let lhs = &p.z_phi * &p.z_phieta.inverse().expect("off-axis");
            dev(&lhs, &scalar3(z.eta.tanh()))
        }),
        informational(
            "z_phi / z_phieta = tan theta (table form)",
            "same right-hand side as the tanh eta identity; holds only where tan theta = tanh eta",
            |z| {
                let p = z.partials();
                let lhs = &p.z_phi * &p.z_phieta.inverse().expect("off-axis");
                dev(&lhs, &scalar3(z.theta.tan())) / (1.0 + z.theta.tan().abs())
            },
        ),
        check("z_thetatheta + z = 0", |z| {
            let p = z.partials();
            (&p.z_thetatheta + &z.value()).max_abs()
        }),
        check("e0 z e0 = conj(z)", |z| dev(&e0_conjugate(&z.value()), &z.conj())),
        check("z zbar >= 0 is scalar", |z| {
            let zz = &z.value() * &z.conj();
            let neg = (-zz.scalar_part()).max(0.0);
            (&zz - &scalar3(zz.scalar_part())).max_abs() + neg
        }),
    ]
}

fn quaternion_checks() -> Vec<Check> {
    let minus_one = scalar3(-1.0);
    let m1 = minus_one.clone();
    let m2 = minus_one.clone();
    let m3 = minus_one.clone();
    let m4 = minus_one;
    vec![
        check("I_p^2 = -1", move |z| dev(&(&z.phase.i_p * &z.phase.i_p), &m1)),
        check("J_p^2 = -1", move |z| dev(&(&z.phase.j_p * &z.phase.j_p), &m2)),
        check("K_p^2 = -1", move |z| dev(&(&z.phase.k_p * &z.phase.k_p), &m3)),
        check("I_p J_p K_p = -1", move |z| {
            let q = &z.phase;
            dev(&(&(&q.i_p * &q.j_p) * &q.k_p), &m4)
        }),
        check("I_p J_p = K_p, J_p K_p = I_p, K_p I_p = J_p", |z| {
            let q = &z.phase;
            dev(&(&q.i_p * &q.j_p), &q.k_p)
                .max(dev(&(&q.j_p * &q.k_p), &q.i_p))
                .max(dev(&(&q.k_p * &q.i_p), &q.j_p))
        }),
        check("d/dphi I_p = J_p", |z| {
            dev(&quaternion_fd_derivative(z.phi(), |q| q.i_p.clone()), &z.phase.j_p)
        }),
        check("d/dphi J_p = -I_p", |z| {
            dev(&quaternion_fd_derivative(z.phi(), |q| q.j_p.clone()), &-&z.phase.i_p)
        }),
        check("d/dphi K_p = 0", |z| {
            quaternion_fd_derivative(z.phi(), |q| q.k_p.clone()).max_abs()
        }),
    ]
}

/// Tolerances for [`identity_suite`]: closed-form identities and the
/// finite-difference derivatives of the quaternion frame.
#[derive(Clone, Copy, Debug)]
pub struct IdentityTolerances {
    pub closed_form: f64,
    pub fd: f64,
}

impl Default for IdentityTolerances {
    fn default() -> Self {
        Self {
            closed_form: 1e-8,
            fd: 1e-5,
        }
    }
}

/// Evaluates the gradient-free identities of the `z` table and the
/// quaternion frame at `samples` random points.
pub fn identity_suite(samples: usize, seed: u64) -> Report {
    identity_suite_with(samples, seed, SampleBox::default(), IdentityTolerances::default())
}

pub fn identity_suite_with(
    samples: usize,
    seed: u64,
    domain: SampleBox,
    tol: IdentityTolerances,
) -> Report {
    let mut rng = rng_from_seed(seed);
    let points: Vec<Zeta> = (0..samples.max(1))
        .map(|_| {
            let (eta, theta, phi) = domain.sample(&mut rng);
            Zeta::new(eta, theta, phi).expect("sample box inside the chart")
        })
        .collect();

    let mut report = Report::new("identities");
    let closed = closed_form_checks();
    let quats = quaternion_checks();
    for (checks, tolerance) in [(closed, tol.closed_form), (quats, tol.closed_form)] {
        for c in checks {
            let tolerance = if c.name.starts_with("d/dphi") {
                tol.fd
            } else {
                tolerance
            };
            let mut entry = Entry::new(c.name, tolerance, c.asserted);
            for z in &points {
                entry.record((c.eval)(z), &[z.eta, z.theta, z.phi()]);
            }
            if let Some(note) = c.note {
                entry = entry.with_note(note);
            }
            report.push(entry.finish());
        }
    }
    report
}

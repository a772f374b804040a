//! Differential operators: finite differences on black-box fields, the
//! chart Laplacians and quaternion gradients, exact polynomial fields and
//! the symmetry-operator algebra.

pub mod chart;
pub mod fd;
pub mod poly;
pub mod symmetry;

use std::f64::consts::PI;

use rand::Rng;

pub use chart::{
    cartesian_gradient, quaternion_gradient, quaternion_gradient_bar, quaternion_laplacian,
    spheroidal_laplacian, ChartFn, LaplacianOrder, QuaternionVar,
};
pub use fd::{
    fd_gradient, fd_gradient_order, fd_laplacian, fd_laplacian_order, FdOrder, FieldFn, H_FIRST,
    H_SECOND,
};
pub use poly::MvPolynomial;
pub use symmetry::{apply_symmetry, bracket_suite, jx_squared_check, SymmetryOp};

use crate::error::Result;
use crate::frames::{e0_conjugate, SampleBox, Zeta};
use crate::ga::{scalar3, Mv};
use crate::report::{Entry, Report};
use crate::sampling::rng_from_seed;
use crate::spheroidal::{invert, position, Case, CartesianPoint, SpheroidalPoint};

/// Tolerances for [`identity_suite_grad`].
#[derive(Clone, Copy, Debug)]
pub struct GradTolerances {
    /// `grad_z z = 3`, `grad_z zbar = -1` and their relatives.
    pub quaternion: f64,
    /// Checks through Cartesian finite differences.
    pub fd: f64,
    /// Step for first-order chart differences.
    pub h_first: f64,
    /// Step for nested and second-order chart differences.
    pub h_second: f64,
}

impl Default for GradTolerances {
    fn default() -> Self {
        Self {
            quaternion: 1e-6,
            fd: 1e-5,
            h_first: H_FIRST,
            h_second: H_SECOND,
        }
    }
}

fn zeta_value(a: f64, b: f64, c: f64) -> Result<Mv> {
    Ok(Zeta::new(a, b, c)?.value())
}

fn zeta_conj(a: f64, b: f64, c: f64) -> Result<Mv> {
    Ok(Zeta::new(a, b, c)?.conj())
}

fn z_eta_norm(a: f64, b: f64, c: f64) -> Result<Mv> {
    let ze = Zeta::new(a, b, c)?.z_eta();
    Ok(&ze * &e0_conjugate(&ze))
}

fn wrap_pi(d: f64) -> f64 {
    (d + PI).rem_euclid(2.0 * PI) - PI
}

/// Component `k` (0 eta, 1 theta, 2 phi) of [`invert`] as a Cartesian
/// scalar field; `phi` is unwrapped around `phi0`.
pub fn coordinate_field(mu: f64, case: Case, k: usize, phi0: f64) -> FieldFn {
    FieldFn::new(move |x| {
        let p = invert(&CartesianPoint(*x), mu, case)?;
        let v = match k {
            0 => p.eta,
            1 => p.theta,
            _ => phi0 + wrap_pi(p.phi - phi0),
        };
        Ok(scalar3(v))
    })
}

/// Distance scale to the nearest coordinate singularity. Near the focal
/// points (prolate) or focal ring (oblate) the distance is quadratic in
/// `|z_eta|` (resp. `|z|`).
pub(crate) fn local_scale(p: &SpheroidalPoint) -> f64 {
    let z = p.zeta();
    let zz = (&z.value() * &z.conj()).scalar_part();
    let ze = z.z_eta();
    let zeze = (&ze * &e0_conjugate(&ze)).scalar_part();
    let focal = match p.case {
        Case::Prolate => zeze,
        Case::Oblate => zz,
    };
    let rho = position(p).xp();
    rho.min(p.mu * p.eta.sinh()).min(0.5 * p.mu * focal)
}

/// Step for fourth-order stencils on `invert`-based fields.
pub(crate) fn local_step(p: &SpheroidalPoint) -> f64 {
    (0.02 * local_scale(p)).min(1e-3 * p.mu)
}

fn rel(err: f64, scale: f64) -> f64 {
    err / scale.abs().max(f64::MIN_POSITIVE)
}

struct GradSample {
    mu: f64,
    eta: f64,
    theta: f64,
    phi: f64,
}

/// Gradient-dependent identities of the `z` table and of the spheroidal
/// gradients and Laplacians.
pub fn identity_suite_grad(samples: usize, seed: u64) -> Report {
    identity_suite_grad_with(samples, seed, SampleBox::default(), GradTolerances::default())
}

pub fn identity_suite_grad_with(
    samples: usize,
    seed: u64,
    domain: SampleBox,
    tol: GradTolerances,
) -> Report {
    let mut rng = rng_from_seed(seed);
    let pts: Vec<GradSample> = (0..samples.max(1))
        .map(|_| {
            let (eta, theta, phi) = domain.sample(&mut rng);
            GradSample {
                mu: rng.gen_range(0.5..2.0),
                eta,
                theta,
                phi,
            }
        })
        .collect();

    let mut report = Report::new("identities-grad");
    let h1 = tol.h_first;
    let h2 = tol.h_second;

    // quaternion derivatives on the chart
    let mut grad_z = Entry::new("grad_z z = 3", tol.quaternion, true);
    let mut grad_zbar = Entry::new("grad_z zbar = -1", tol.quaternion, true);
    let mut printed_z = Entry::new("grad_z (z_eta zbar_eta) = 0", tol.quaternion, true);
    let mut printed_zbar = Entry::new("grad_zbar (z_eta zbar_eta) = 0", tol.quaternion, true);
    let mut fixed_z = Entry::new(
        "grad_z (z_eta zbar_eta) = z_eta^-1 (sinh 2eta - I_p sin 2theta)",
        tol.quaternion,
        true,
    );
    let mut fixed_zbar = Entry::new(
        "grad_zbar (z_eta zbar_eta) = zbar_eta^-1 (sinh 2eta + I_p sin 2theta)",
        tol.quaternion,
        true,
    );
    let mut grad_x_zz = Entry::new("grad_x (z zbar) = 2x/mu^2", tol.fd, true);

    // prolate coordinate Laplacians
    let mut lap_x_eta = Entry::new("lap_x eta = coth eta/(mu^2 z_eta zbar_eta)", tol.fd, true);
    let mut lap_x_theta =
        Entry::new("lap_x theta = cot theta/(mu^2 z_theta zbar_theta)", tol.fd, true);
    let mut sq_x_eta = Entry::new("(grad_x eta)^2 = 1/(mu^2 z_eta zbar_eta)", tol.fd, true);
    let mut sq_x_theta = Entry::new("(grad_x theta)^2 = 1/(mu^2 z_theta zbar_theta)", tol.fd, true);
    let mut lap_x_phi = Entry::new("lap_x phi = 0", tol.fd, true);

    // oblate coordinate Laplacians
    let mut lap_y_eta = Entry::new("lap_y eta = tanh eta/(mu^2 z zbar)", tol.fd, true);
    let mut lap_y_theta = Entry::new("lap_y theta = cot theta/(mu^2 z zbar)", tol.fd, true);
    let mut sq_y_eta = Entry::new("(grad_y eta)^2 = 1/(mu^2 z zbar)", tol.fd, true);
    let mut sq_y_theta = Entry::new("(grad_y theta)^2 = 1/(mu^2 z zbar)", tol.fd, true);
    let mut ratio_y = Entry::new("lap_y eta/(grad_y eta)^2 = tanh eta", tol.fd, true);
    let mut lap_y_phi = Entry::new("lap_y phi = 0", tol.fd, true);

    // azimuthal gradients
    let mut phi_ratio = Entry::new("|grad_y phi|^2/|grad_x phi|^2 = tanh^2 eta", tol.fd, true);

    // quaternion gradient and Laplacian against Cartesian operators
    let mut grad_x_q = Entry::new("grad_x f = (e0/mu) grad_z f", tol.fd, true);
    let mut grad_y_q = Entry::new("grad_y f = (e0/mu) grad_{z_eta} f", tol.fd, true);
    let mut lap_x_outer = Entry::new("mu^2 lap_x f = grad_zbar grad_z f", tol.fd, true);
    let mut lap_x_inner = Entry::new("mu^2 lap_x f = grad_z grad_zbar f", tol.fd, true);
    let mut lap_y_outer =
        Entry::new("mu^2 lap_y f = grad_{zbar_eta} grad_{z_eta} f", tol.fd, true);
    let mut lap_y_inner =
        Entry::new("mu^2 lap_y f = grad_{z_eta} grad_{zbar_eta} f", tol.fd, true);

    let test_field = SmoothField::fixed();

    for s in &pts {
        let (mu, eta, theta, phi) = (s.mu, s.eta, s.theta, s.phi);
        let at = [mu, eta, theta, phi];
        let z = Zeta::new(eta, theta, phi).expect("sample inside chart");
        let ip = &z.phase.i_p;

        let g = quaternion_gradient(&zeta_value, eta, theta, phi, QuaternionVar::Z, h1);
        grad_z.record(dev(g.map(|g| g.max_abs_diff(&scalar3(3.0)))), &at);
        let g = quaternion_gradient(&zeta_conj, eta, theta, phi, QuaternionVar::Z, h1);
        grad_zbar.record(dev(g.map(|g| g.max_abs_diff(&scalar3(-1.0)))), &at);

        let ze = z.z_eta();
        let (s2e, s2t) = ((2.0 * eta).sinh(), (2.0 * theta).sin());
        let want_z = &ze.inverse().expect("off-axis") * &(&scalar3(s2e) - &(ip * s2t));
        let want_zbar =
            &e0_conjugate(&ze).inverse().expect("off-axis") * &(&scalar3(s2e) + &(ip * s2t));
        let scale = 1.0 + want_z.max_abs();
        match quaternion_gradient(&z_eta_norm, eta, theta, phi, QuaternionVar::Z, h1) {
            Ok(g) => {
                printed_z.record(g.max_abs() / scale, &at);
                fixed_z.record(g.max_abs_diff(&want_z) / scale, &at);
            }
            Err(_) => {
                printed_z.record(f64::NAN, &at);
                fixed_z.record(f64::NAN, &at);
            }
        }
        match quaternion_gradient_bar(&z_eta_norm, eta, theta, phi, QuaternionVar::Z, h1) {
            Ok(g) => {
                printed_zbar.record(g.max_abs() / scale, &at);
                fixed_zbar.record(g.max_abs_diff(&want_zbar) / scale, &at);
            }
            Err(_) => {
                printed_zbar.record(f64::NAN, &at);
                fixed_zbar.record(f64::NAN, &at);
            }
        }

        let pp = SpheroidalPoint::prolate(mu, eta, theta, phi).expect("sample inside chart");
        let po = SpheroidalPoint::oblate(mu, eta, theta, phi).expect("sample inside chart");
        let xp = position(&pp);
        let yo = position(&po);

        // grad_x (z zbar) through invert
        let zz_field = FieldFn::new(move |x| {
            let q = invert(&CartesianPoint(*x), mu, Case::Prolate)?;
            let z = q.zeta();
            Ok(&z.value() * &z.conj())
        });
        let want = &xp.mv() * (2.0 / (mu * mu));
        let got = fd_gradient_order(&zz_field, &xp, local_step(&pp), FdOrder::Fourth);
        grad_x_zz.record(dev(got.map(|g| g.max_abs_diff(&want) / (1.0 + want.max_abs()))), &at);

        // prolate coordinate functions
        let hp = local_step(&pp);
        let g_pro = (sinh2(eta) + sin2(theta)) * mu * mu;
        let base = 1.0 / g_pro;
        let eta_f = coordinate_field(mu, Case::Prolate, 0, phi);
        let theta_f = coordinate_field(mu, Case::Prolate, 1, phi);
        let phi_f = coordinate_field(mu, Case::Prolate, 2, phi);
        let lap = |f: &FieldFn, x: &CartesianPoint, h: f64| {
            fd_laplacian_order(f, x, h, FdOrder::Fourth).map(|m| m.scalar_part())
        };
        let grad_sq = |f: &FieldFn, x: &CartesianPoint, h: f64| {
            fd_gradient_order(f, x, h, FdOrder::Fourth).map(|g| (&g * &g).scalar_part())
        };
        let coth = 1.0 / eta.tanh();
        let cot = theta.cos() / theta.sin();
        let rho_x = xp.xp();
        lap_x_eta.record(
            dev(lap(&eta_f, &xp, hp).map(|v| rel(v - coth * base, base * (1.0 + coth)))),
            &at,
        );
        lap_x_theta.record(
            dev(lap(&theta_f, &xp, hp).map(|v| rel(v - cot * base, base * (1.0 + cot.abs())))),
            &at,
        );
        sq_x_eta.record(dev(grad_sq(&eta_f, &xp, hp).map(|v| rel(v - base, base))), &at);
        sq_x_theta.record(dev(grad_sq(&theta_f, &xp, hp).map(|v| rel(v - base, base))), &at);
        lap_x_phi.record(dev(lap(&phi_f, &xp, hp).map(|v| v * rho_x * rho_x)), &at);
        let phi_x_sq = grad_sq(&phi_f, &xp, hp);

        // oblate coordinate functions
        let ho = local_step(&po);
        let g_obl = (sinh2(eta) + cos2(theta)) * mu * mu;
        let base_o = 1.0 / g_obl;
        let eta_o = coordinate_field(mu, Case::Oblate, 0, phi);
        let theta_o = coordinate_field(mu, Case::Oblate, 1, phi);
        let phi_o = coordinate_field(mu, Case::Oblate, 2, phi);
        let tanh = eta.tanh();
        let rho_y = yo.xp();
        let lap_eta = lap(&eta_o, &yo, ho);
        let sq_eta = grad_sq(&eta_o, &yo, ho);
        lap_y_eta.record(
            dev(lap_eta.clone().map(|v| rel(v - tanh * base_o, base_o * (1.0 + tanh)))),
            &at,
        );
        lap_y_theta.record(
            dev(lap(&theta_o, &yo, ho).map(|v| rel(v - cot * base_o, base_o * (1.0 + cot.abs())))),
            &at,
        );
        sq_y_eta.record(dev(sq_eta.clone().map(|v| rel(v - base_o, base_o))), &at);
        sq_y_theta.record(dev(grad_sq(&theta_o, &yo, ho).map(|v| rel(v - base_o, base_o))), &at);
        ratio_y.record(
            dev(lap_eta.and_then(|l| sq_eta.map(|q| (l / q - tanh).abs()))),
            &at,
        );
        lap_y_phi.record(dev(lap(&phi_o, &yo, ho).map(|v| v * rho_y * rho_y)), &at);
        let phi_y_sq = grad_sq(&phi_o, &yo, ho);
        phi_ratio.record(
            dev(phi_y_sq.and_then(|a| phi_x_sq.map(|b| rel(a / b - tanh * tanh, tanh * tanh)))),
            &at,
        );

        // quaternion operators on a smooth test field
        for (case, p, grad_entry, outer, inner) in [
            (Case::Prolate, &pp, &mut grad_x_q, &mut lap_x_outer, &mut lap_x_inner),
            (Case::Oblate, &po, &mut grad_y_q, &mut lap_y_outer, &mut lap_y_inner),
        ] {
            let field = test_field.clone();
            let chart = move |a: f64, b: f64, c: f64| -> Result<Mv> {
                let x = position(&SpheroidalPoint::new(case, mu, a, b, c)?);
                Ok(scalar3(field.value(&x.0)))
            };
            let x = position(p);
            let cart = test_field.field();
            let ell = local_scale(p);
            let grad_scale = test_field.gradient_scale(&x.0) + test_field.value(&x.0).abs() / ell;
            let got = cartesian_gradient(&chart, p, h1);
            let want = fd_gradient(&cart, &x, h1);
            grad_entry.record(
                dev(got.and_then(|g| want.map(|w| g.max_abs_diff(&w) / grad_scale))),
                &at,
            );
            let lap_scale = mu * mu * (test_field.laplacian_scale(&x.0) + grad_scale / ell);
            let want = fd_laplacian(&cart, &x, h2).map(|m| m.scalar_part() * mu * mu);
            let which = QuaternionVar::for_case(case);
            for (order, entry) in [
                (LaplacianOrder::BarOuter, &mut *outer),
                (LaplacianOrder::BarInner, &mut *inner),
            ] {
                let got = quaternion_laplacian(&chart, p.eta, p.theta, p.phi, which, order, h2);
                let err = match (&got, &want) {
                    (Ok(q), Ok(w)) => q.max_abs_diff(&scalar3(*w)) / lap_scale,
                    _ => f64::NAN,
                };
                entry.record(err, &at);
            }
        }
    }

    for entry in [grad_z, grad_zbar] {
        report.push(entry.finish());
    }
    let note = "false as printed: the scalar z_eta zbar_eta = sinh^2 eta + sin^2 theta has a nonzero gradient";
    report.push(printed_z.finish().with_note(note));
    report.push(printed_zbar.finish().with_note(note));
    for entry in [
        fixed_z, fixed_zbar, grad_x_zz, lap_x_eta, lap_x_theta, sq_x_eta, sq_x_theta, lap_x_phi,
        lap_y_eta, lap_y_theta, sq_y_eta, sq_y_theta, ratio_y, lap_y_phi, phi_ratio, grad_x_q,
        grad_y_q, lap_x_outer, lap_x_inner, lap_y_outer, lap_y_inner,
    ] {
        report.push(entry.finish());
    }
    report
}

fn sinh2(v: f64) -> f64 {
    v.sinh().powi(2)
}

fn sin2(v: f64) -> f64 {
    v.sin().powi(2)
}

fn cos2(v: f64) -> f64 {
    v.cos().powi(2)
}

/// `Err` becomes an infinite deviation.
fn dev(r: Result<f64>) -> f64 {
    r.unwrap_or(f64::NAN)
}

/// `A exp(a.x) + B sin(c.x + d) + C (q.x)^2`, a smooth test field with a
/// closed-form Laplacian `A|a|^2 exp(a.x) - B|c|^2 sin(c.x + d) + 2C|q|^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothField {
    pub amp: [f64; 3],
    pub a: [f64; 3],
    pub c: [f64; 3],
    pub d: f64,
    pub q: [f64; 3],
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

impl SmoothField {
    pub fn random(rng: &mut impl Rng) -> Self {
        let mut v = || [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let amp = v();
        let a = v();
        let c = v();
        let q = v();
        Self {
            amp,
            a,
            c,
            d: rng.gen_range(0.0..2.0 * PI),
            q,
        }
    }

    pub fn fixed() -> Self {
        Self {
            amp: [0.8, -0.6, 0.3],
            a: [0.4, -0.2, 0.3],
            c: [0.5, 0.7, -0.4],
            d: 0.3,
            q: [0.2, 0.5, -0.1],
        }
    }

    pub fn value(&self, x: &[f64; 3]) -> f64 {
        self.amp[0] * dot3(&self.a, x).exp()
            + self.amp[1] * (dot3(&self.c, x) + self.d).sin()
            + self.amp[2] * dot3(&self.q, x).powi(2)
    }

    pub fn laplacian(&self, x: &[f64; 3]) -> f64 {
        self.amp[0] * dot3(&self.a, &self.a) * dot3(&self.a, x).exp()
            - self.amp[1] * dot3(&self.c, &self.c) * (dot3(&self.c, x) + self.d).sin()
            + 2.0 * self.amp[2] * dot3(&self.q, &self.q)
    }

    /// Sum of the magnitudes of the Laplacian's terms.
    pub fn laplacian_scale(&self, x: &[f64; 3]) -> f64 {
        (self.amp[0] * dot3(&self.a, &self.a) * dot3(&self.a, x).exp()).abs()
            + (self.amp[1] * dot3(&self.c, &self.c)).abs()
            + (2.0 * self.amp[2] * dot3(&self.q, &self.q)).abs()
    }

    pub fn gradient_scale(&self, x: &[f64; 3]) -> f64 {
        let n = |v: &[f64; 3]| dot3(v, v).sqrt();
        (self.amp[0] * n(&self.a) * dot3(&self.a, x).exp()).abs()
            + (self.amp[1] * n(&self.c)).abs()
            + (2.0 * self.amp[2] * n(&self.q) * dot3(&self.q, x)).abs()
    }

    pub fn field(&self) -> FieldFn {
        let f = self.clone();
        FieldFn::scalar(move |x| f.value(x))
    }
}

/// Settings for [`laplacian_equivalence`].
#[derive(Clone, Copy, Debug)]
pub struct LaplacianEquivConfig {
    pub fields: usize,
    pub points_per_field: usize,
    pub tolerance: f64,
    pub h: f64,
    pub domain: SampleBox,
}

impl Default for LaplacianEquivConfig {
    fn default() -> Self {
        Self {
            fields: 20,
            points_per_field: 10,
            tolerance: 1e-5,
            h: H_SECOND,
            domain: SampleBox {
                eta: (0.3, 1.5),
                theta: (0.3, 2.8),
                phi: (0.0, 2.0 * PI),
            },
        }
    }
}

/// The chart Laplacians of `f o position` against the Cartesian
/// finite-difference Laplacian of `(f o position) o invert`, relative to the
/// magnitude of the field's second derivatives.
pub fn laplacian_equivalence(seed: u64, cfg: LaplacianEquivConfig) -> Report {
    let mut rng = rng_from_seed(seed);
    let mut report = Report::new("laplacian-equiv");
    let mut entries = [
        Entry::new("prolate Laplacian = Cartesian FD Laplacian", cfg.tolerance, true),
        Entry::new("oblate Laplacian = Cartesian FD Laplacian", cfg.tolerance, true),
    ];
    let mut exact = [
        Entry::new("prolate Laplacian = closed-form Laplacian", cfg.tolerance, false),
        Entry::new("oblate Laplacian = closed-form Laplacian", cfg.tolerance, false),
    ];
    for _ in 0..cfg.fields.max(1) {
        let field = SmoothField::random(&mut rng);
        let mu = rng.gen_range(0.5..2.0);
        for _ in 0..cfg.points_per_field.max(1) {
            let (eta, theta, phi) = cfg.domain.sample(&mut rng);
            for (i, case) in [Case::Prolate, Case::Oblate].into_iter().enumerate() {
                let p = SpheroidalPoint::new(case, mu, eta, theta, phi).expect("inside chart");
                let f1 = field.clone();
                let chart = move |a: f64, b: f64, c: f64| -> Result<Mv> {
                    let x = position(&SpheroidalPoint::new(case, mu, a, b, c)?);
                    Ok(scalar3(f1.value(&x.0)))
                };
                let f2 = field.clone();
                let composed = FieldFn::new(move |x| {
                    let q = invert(&CartesianPoint(*x), mu, case)?;
                    Ok(scalar3(f2.value(&position(&q).0)))
                });
                let x = position(&p);
                let scale = field.laplacian_scale(&x.0);
                let point = [mu, eta, theta, phi];
                let analytic = spheroidal_laplacian(&chart, &p, cfg.h);
                let cartesian = fd_laplacian(&composed, &x, cfg.h).map(|m| m.scalar_part());
                entries[i].record(
                    match (&analytic, &cartesian) {
                        (Ok(a), Ok(c)) => (a - c).abs() / scale,
                        _ => f64::NAN,
                    },
                    &point,
                );
                exact[i].record(
                    analytic
                        .map(|a| (a - field.laplacian(&x.0)).abs() / scale)
                        .unwrap_or(f64::NAN),
                    &point,
                );
            }
        }
    }
    for e in entries.into_iter().chain(exact) {
        report.push(e.finish());
    }
    report
}

/// Direct check of `grad_x = (e0/mu) grad_z` on the position field:
/// `grad_x x = 3`.
pub fn gradient_of_position(p: &SpheroidalPoint, h: f64) -> Result<Mv> {
    let case = p.case;
    let mu = p.mu;
    let chart = move |a: f64, b: f64, c: f64| -> Result<Mv> {
        Ok(position(&SpheroidalPoint::new(case, mu, a, b, c)?).mv())
    };
    cartesian_gradient(&chart, p, h)
}

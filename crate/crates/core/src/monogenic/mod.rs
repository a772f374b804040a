//! Clifford-analysis constructions in `G_{n+1}`: the paravector picture,
//! the Cauchy kernel, Cauchy-Kovalevska extensions, the quasi-monogenic
//! family and the geometric-series form of the kernel.

mod linsolve;
mod qm;

use rand::Rng;
use serde::Serialize;

pub use linsolve::{solve as solve_exact, LinearSolution};
pub use qm::{
    azimuthal_derivation, ck_extension, coefficient_sequence, cylindrical_gradient,
    cylindrical_gradient_scaled, divide_by_xp, listed_correction, qm, qm_correction_search,
    qm_divergence_binomial, qm_gradient, render_cylindrical, CorrectionSearch,
};

use crate::diffops::poly::{MvPolynomial, RMv};
use crate::error::{Error, Result};
use crate::ga::{Multivector, Mv, Rational, Scalar};
use crate::report::{Entry, Report};
use crate::sampling::rng_from_seed;

/// `X = x e0`: scalar part `x0` plus the bivector `sum_k x_k e_{k0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Paravector<T: Scalar = f64>(pub Multivector<T>);

impl<T: Scalar> Paravector<T> {
    pub fn from_vector(x: &Multivector<T>) -> Result<Self> {
        if !x.is_grade(1) && !x.is_zero() {
            return Err(Error::InvalidArgument(format!("expected a vector, got grades {:?}", x.grades())));
        }
        Ok(Self(x * &Multivector::basis(x.dim(), 0)))
    }

    /// `x = X e0`.
    pub fn to_vector(&self) -> Multivector<T> {
        &self.0 * &Multivector::basis(self.0.dim(), 0)
    }

    /// `conj X = e0 X e0 = x0 - sum_k x_k e_{k0}`.
    pub fn conj(&self) -> Self {
        let e0 = Multivector::basis(self.0.dim(), 0);
        Self(&(&e0 * &self.0) * &e0)
    }

    pub fn scalar(&self) -> T {
        self.0.scalar_part()
    }

    /// The bivector part `sum_k x_k e_{k0}`.
    pub fn underline(&self) -> Multivector<T> {
        self.0.grade_project(2)
    }

    /// `X conj X`, a scalar equal to `x^2`.
    pub fn norm_sq(&self) -> T {
        (&self.0 * &self.conj().0).scalar_part()
    }
}

/// `a . b = (A conj B + B conj A)/2` through paravectors.
pub fn paravector_dot<T: Scalar>(a: &Multivector<T>, b: &Multivector<T>) -> Result<Multivector<T>> {
    let (pa, pb) = (Paravector::from_vector(a)?, Paravector::from_vector(b)?);
    let s = &(&pa.0 * &pb.conj().0) + &(&pb.0 * &pa.conj().0);
    Ok(s.scale(&T::half()))
}

/// `a ^ b = (A conj B - B conj A)/2` through paravectors.
pub fn paravector_wedge<T: Scalar>(a: &Multivector<T>, b: &Multivector<T>) -> Result<Multivector<T>> {
    let (pa, pb) = (Paravector::from_vector(a)?, Paravector::from_vector(b)?);
    let s = &(&pa.0 * &pb.conj().0) - &(&pb.0 * &pa.conj().0);
    Ok(s.scale(&T::half()))
}

fn check_vector(x: &Mv) -> Result<()> {
    if !x.is_grade(1) && !x.is_zero() {
        return Err(Error::InvalidArgument(format!("expected a vector, got grades {:?}", x.grades())));
    }
    Ok(())
}

/// `g(x) = (x - y)/|x - y|^{n+1}` in `G_{n+1}`.
pub fn cauchy_kernel(x: &Mv, y: &Mv) -> Result<Mv> {
    check_vector(x)?;
    check_vector(y)?;
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    let d = x - y;
    let r = d.norm();
    if r == 0.0 {
        return Err(Error::Singular("cauchy kernel at its pole x = y".into()));
    }
    Ok(&d / r.powi(x.dim() as i32))
}

/// `G(X) = ((X - Y)/|X - Y|^{n+1}) e0`, the paravector route to `g`.
pub fn cauchy_kernel_paravector(x: &Mv, y: &Mv) -> Result<Mv> {
    let (px, py) = (Paravector::from_vector(x)?, Paravector::from_vector(y)?);
    let d = Paravector(&px.0 - &py.0);
    let r2 = d.norm_sq();
    if r2 == 0.0 {
        return Err(Error::Singular("cauchy kernel at its pole x = y".into()));
    }
    let scaled = &d.0 / r2.sqrt().powi(x.dim() as i32);
    Ok(&scaled * &Mv::basis(x.dim(), 0))
}

/// Real power of `a + b J` with `J^2 = -1`, principal branch.
fn plane_power(a: f64, b: f64, p: f64) -> (f64, f64) {
    let r = a.hypot(b);
    let t = b.atan2(a);
    let rp = r.powf(p);
    (rp * (p * t).cos(), rp * (p * t).sin())
}

/// `e0 (1 - conj X)^{-(n-1)/2} (1 - X)^{-(n+1)/2}` with the powers taken in
/// polar form in the plane of `1` and the unit bivector of `X`. Equals
/// `(e0 - x)/|e0 - x|^{n+1}` for `|x| < 1`.
pub fn hypergeom_kernel(x: &Mv) -> Result<Mv> {
    check_vector(x)?;
    let dim = x.dim();
    if x.norm() >= 1.0 {
        return Err(Error::OutOfDomain(format!("|x| = {} must be < 1", x.norm())));
    }
    let n = (dim - 1) as f64;
    let xp = Paravector::from_vector(x)?;
    let under = xp.underline();
    let b = under.norm();
    let a = 1.0 - xp.scalar();
    // 1 - X = a + b J with J = -under/|under|
    let j = if b > 0.0 { &under / (-b) } else { Mv::zero(dim) };
    let (c1, s1) = plane_power(a, -b, -(n - 1.0) / 2.0);
    let (c2, s2) = plane_power(a, b, -(n + 1.0) / 2.0);
    let one = Mv::scalar(dim, 1.0);
    let f1 = &(&one * c1) + &(&j * s1);
    let f2 = &(&one * c2) + &(&j * s2);
    let f = &f1 * &f2;
    if !f.coeffs().iter().all(|v| v.is_finite()) {
        return Err(Error::Singular("1 - X has zero norm".into()));
    }
    Ok(&Mv::basis(dim, 0) * &f)
}

/// Fourth-order left gradient `sum_k e_k d_k f` in any dimension.
pub fn fd_gradient_nd(f: &dyn Fn(&[f64]) -> Result<Mv>, x: &[f64], h: f64) -> Result<Mv> {
    let dim = x.len();
    let mut out = Mv::zero(dim);
    for k in 0..dim {
        let at = |d: f64| -> Result<Mv> {
            let mut y = x.to_vec();
            y[k] += d;
            f(&y)
        };
        let num = &(&(&(&at(h)? - &at(-h)?) * 8.0) - &at(2.0 * h)?) + &at(-2.0 * h)?;
        out += &(&Mv::basis(dim, k) * &(&num / (12.0 * h)));
    }
    Ok(out)
}

/// Tolerances and sizes for [`monogenic_suite`].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MonogenicConfig {
    pub kernel_points: usize,
    pub kernel_tolerance: f64,
    pub hypergeom_tolerance: f64,
    pub fd_step: f64,
    pub qm_k_max: u32,
    pub ck_max_exponent: u32,
    pub scan_k_max: u32,
}

impl Default for MonogenicConfig {
    fn default() -> Self {
        Self {
            kernel_points: 100,
            kernel_tolerance: 1e-6,
            hypergeom_tolerance: 1e-9,
            fd_step: 1e-3,
            qm_k_max: 15,
            ck_max_exponent: 4,
            scan_k_max: 8,
        }
    }
}

fn random_vector(rng: &mut impl Rng, dim: usize, radius: f64) -> Mv {
    let c: Vec<f64> = (0..dim).map(|_| rng.gen_range(-radius..radius)).collect();
    Mv::vector(dim, &c)
}

fn random_rational_vector(rng: &mut impl Rng, dim: usize) -> RMv {
    let c: Vec<Rational> = (0..dim)
        .map(|_| Rational::new(rng.gen_range(-40i64..=40).into(), rng.gen_range(1i64..=9).into()))
        .collect();
    RMv::vector(dim, &c)
}

fn exact_error(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

fn bridge_entries(report: &mut Report, seed: u64) {
    let mut rng = rng_from_seed(seed);
    let mut round = Entry::new("x = (x e0) e0", 0.0, true);
    let mut conj = Entry::new("conj X = e0 X e0 = e0 x", 0.0, true);
    let mut norm = Entry::new("X conj X = x^2", 0.0, true);
    let mut dot = Entry::new("a.b = (A conj B + B conj A)/2", 0.0, true);
    let mut wedge = Entry::new("a^b = (A conj B - B conj A)/2", 0.0, true);
    for dim in [3usize, 4] {
        let e0 = RMv::basis(dim, 0);
        for _ in 0..20 {
            let a = random_rational_vector(&mut rng, dim);
            let b = random_rational_vector(&mut rng, dim);
            let pa = Paravector::from_vector(&a).expect("vector");
            round.record(exact_error(pa.to_vector() == a), &[]);
            let c = pa.conj();
            conj.record(exact_error(c.0 == &e0 * &a && c.0 == &(&e0 * &pa.0) * &e0), &[]);
            let x2 = (&a * &a).scalar_part();
            norm.record(exact_error(pa.norm_sq() == x2 && (&pa.0 * &c.0).is_grade(0)), &[]);
            let (d, w) = a.dot_wedge(&b).expect("same dim");
            dot.record(exact_error(paravector_dot(&a, &b).expect("vectors") == d), &[]);
            wedge.record(exact_error(paravector_wedge(&a, &b).expect("vectors") == w), &[]);
        }
    }
    for e in [round, conj, norm, dot, wedge] {
        report.push(e.finish());
    }

    // grad = d_X e0 = e0 d_Xbar and lap = d_X d_Xbar, compared as
    // operator symbols: coefficient k multiplies d_k.
    let mut ops = Entry::new("grad = d_X e0 = e0 d_Xbar, lap = d_X d_Xbar", 0.0, true);
    for dim in [3usize, 4] {
        let e0 = RMv::basis(dim, 0);
        let one = RMv::one(dim);
        let dx: Vec<RMv> = (0..dim)
            .map(|k| if k == 0 { one.clone() } else { &RMv::basis(dim, k) * &e0 })
            .collect();
        let dxbar: Vec<RMv> = dx.iter().enumerate().map(|(k, c)| if k == 0 { c.clone() } else { -c }).collect();
        let mut ok = true;
        for k in 0..dim {
            let ek = RMv::basis(dim, k);
            ok &= &dx[k] * &e0 == ek;
            ok &= &e0 * &dxbar[k] == ek;
        }
        for j in 0..dim {
            for k in 0..dim {
                let sym = &(&dx[j] * &dxbar[k]) + &(&dx[k] * &dxbar[j]);
                let expected = if j == k {
                    RMv::scalar(dim, Rational::from_i64(2))
                } else {
                    RMv::zero(dim)
                };
                ok &= sym == expected;
            }
        }
        ops.record(exact_error(ok), &[dim as f64]);
    }
    report.push(ops.finish());
}

fn kernel_entries(report: &mut Report, cfg: &MonogenicConfig, seed: u64) {
    let mut rng = rng_from_seed(seed ^ 0x6b65726e);
    for n in [2usize, 3] {
        let dim = n + 1;
        let mut div = Entry::new(format!("grad . g = 0, n = {n}"), cfg.kernel_tolerance, true);
        let mut curl = Entry::new(format!("grad ^ g = 0, n = {n}"), cfg.kernel_tolerance, true);
        let mut para = Entry::new(format!("g = ((X - Y)/|X - Y|^(n+1)) e0, n = {n}"), 1e-14, true);
        let mut anti = Entry::new(format!("g(x, y) = -g(y, x), n = {n}"), 0.0, true);
        for _ in 0..cfg.kernel_points {
            let y = random_vector(&mut rng, dim, 1.0);
            let (x, r) = loop {
                let x = random_vector(&mut rng, dim, 2.0);
                let r = (&x - &y).norm();
                if r > 0.25 {
                    break (x, r);
                }
            };
            let yc = y.clone();
            let f = move |p: &[f64]| cauchy_kernel(&Mv::vector(p.len(), p), &yc);
            let g = cauchy_kernel(&x, &y).expect("off the pole");
            // monogenicity measured against |g|/|x - y|
            let scale = g.norm() / r;
            let point: Vec<f64> = x.vector_part();
            match fd_gradient_nd(&f, &point, cfg.fd_step * r) {
                Ok(grad) => {
                    div.record(grad.grade_project(0).norm() / scale, &point);
                    curl.record(grad.grade_project(2).norm() / scale, &point);
                }
                Err(_) => {
                    div.record(f64::INFINITY, &point);
                    curl.record(f64::INFINITY, &point);
                }
            }
            let gp = cauchy_kernel_paravector(&x, &y).expect("off the pole");
            para.record(gp.max_abs_diff(&g) / g.max_abs(), &point);
            let back = cauchy_kernel(&y, &x).expect("off the pole");
            anti.record((&back + &g).max_abs(), &point);
        }
        for e in [div, curl, para, anti] {
            report.push(e.finish());
        }
    }

    let mut hyper = Entry::new("geometric-series kernel = (e0 - x)/|e0 - x|^(n+1), |x| <= 0.5", cfg.hypergeom_tolerance, true);
    for n in [2usize, 3] {
        let dim = n + 1;
        let e0 = Mv::basis(dim, 0);
        for _ in 0..cfg.kernel_points {
            let x = loop {
                let x = random_vector(&mut rng, dim, 0.5);
                if x.norm() <= 0.5 {
                    break x;
                }
            };
            let direct = cauchy_kernel(&e0, &x).expect("|x| < 1");
            let err = hypergeom_kernel(&x)
                .map(|h| h.max_abs_diff(&direct) / direct.max_abs())
                .unwrap_or(f64::INFINITY);
            hyper.record(err, &x.vector_part());
        }
    }
    report.push(hyper.finish());
}

fn ck_entries(report: &mut Report, cfg: &MonogenicConfig) {
    let kmax = cfg.ck_max_exponent;
    let mut all = Entry::new(format!("CK extensions are monogenic, exponents up to ({kmax},{kmax},{kmax})"), 0.0, true);
    for n in [2usize, 3] {
        let mut exps = vec![0u32; n];
        loop {
            let ok = ck_extension(&exps).map(|f| f.gradient().is_zero()).unwrap_or(false);
            all.record(exact_error(ok), &exps.iter().map(|&v| f64::from(v)).collect::<Vec<_>>());
            // odometer over {0..=kmax}^n
            let mut i = 0;
            while i < n && exps[i] == kmax {
                exps[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            exps[i] += 1;
        }
    }
    report.push(all.finish());

    // n = 2 worked example with x_1 playing x_p: (x_p + x0 e_{p0})^2
    let f = ck_extension(&[2]).expect("valid");
    let ep0 = &RMv::basis(2, 1) * &RMv::basis(2, 0);
    let exact = &(&MvPolynomial::monomial(vec![0, 2], RMv::one(2)) - &MvPolynomial::monomial(vec![2, 0], RMv::one(2)))
        + &MvPolynomial::monomial(vec![1, 1], ep0.scale(&Rational::from_i64(2)));
    report.push(Entry::exact(
        "CK[(x_p e0)^2] = xp^2 - x0^2 + 2 x0 xp e_p0, monogenic",
        exact_error(f == exact && f.gradient().is_zero()),
        true,
    ));
    let printed = &(&MvPolynomial::monomial(vec![2, 0], RMv::scalar(2, Rational::from_i64(2)))
        - &MvPolynomial::monomial(vec![0, 2], RMv::one(2)))
        - &MvPolynomial::monomial(vec![1, 1], ep0.scale(&Rational::from_i64(2)));
    let residual = printed.gradient();
    report.push(
        Entry::exact("printed 2 x0^2 - xp^2 - 2 x0 xp e_p0 is monogenic", exact_error(residual.is_zero()), false)
            .with_note(format!("informational: gradient of the printed form is {}", residual.render(&["x0", "xp"]))),
    );
}

fn qm_entries(report: &mut Report, cfg: &MonogenicConfig) {
    let kmax = cfg.qm_k_max;
    let mut curl = Entry::new(format!("grad ^ QM[k] = 0, k <= {kmax}"), 0.0, true);
    let mut div = Entry::new(format!("grad . QM[k] = -Im((x0 + i xp)^k)/xp, k <= {kmax}"), 0.0, true);
    let mut not_mono = Entry::new(format!("grad . QM[k] != 0, k <= {kmax}"), 0.0, true);
    for k in 1..=kmax {
        let g = qm_gradient(k);
        curl.record(exact_error(g.grade_project(2).is_zero() && g.grade_project(1).is_zero()), &[f64::from(k)]);
        div.record(exact_error(g.grade_project(0) == qm_divergence_binomial(k)), &[f64::from(k)]);
        not_mono.record(exact_error(!g.is_zero()), &[f64::from(k)]);
    }
    for e in [curl, div, not_mono] {
        report.push(e.finish());
    }

    let g11 = qm_gradient(11);
    let seq = coefficient_sequence(&g11);
    let expected: Vec<Rational> = [11i64, 165, 462, 330, 55, 1].iter().map(|&v| Rational::from_i64(v)).collect();
    report.push(
        Entry::exact("grad QM[11] coefficients = (11,165,462,330,55,1)", exact_error(seq == expected), true)
            .with_note(render_cylindrical(&g11)),
    );
    let caption_exponents: [(u32, u32); 6] = [(10, 0), (8, 8), (6, 4), (4, 6), (2, 8), (0, 10)];
    let caption_ok = caption_exponents
        .iter()
        .all(|&(i, j)| g11.coeff(&[i, j]).is_some());
    report.push(
        Entry::exact("printed grad QM[11] exponent pattern", exact_error(caption_ok), false)
            .with_note("informational: the printed x0^8 xp^8 term has degree 16; the exact term is x0^8 xp^2"),
    );
    let near = g11.eval(&[0.1, 0.1]).scalar_part().abs();
    let far = g11.eval(&[0.9, 0.1]).scalar_part().abs();
    report.push(Entry::measured(
        "|grad QM[11]| at (0.1, 0.1) < 1e-3 |grad QM[11]| at (0.9, 0.1)",
        near / far,
        1e-3,
        true,
    ));

    let mut listed = Entry::new("QM(1) + x0 e0, QM(2) + x0^2 e0, QM(3) + x0^3 e0 - xp^3/4 e_p are monogenic", 0.0, true);
    let mut found = Entry::new("correction search recovers the k = 1, 2, 3 corrections", 0.0, true);
    for k in 1..=3u32 {
        let c = listed_correction(k).expect("listed");
        listed.record(exact_error(cylindrical_gradient_scaled(&(&qm(k) + &c)).is_zero()), &[f64::from(k)]);
        let ok = qm_correction_search(k, k)
            .map(|s| {
                s.found
                    && s.admits(&c)
                    && s.correction
                        .as_ref()
                        .is_some_and(|c| cylindrical_gradient_scaled(&(&qm(k) + c)).is_zero())
            })
            .unwrap_or(false);
        found.record(exact_error(ok), &[f64::from(k)]);
    }
    report.push(listed.finish());
    report.push(found.finish());

    let mut notes = Vec::new();
    let mut scan = Entry::new(format!("correction search k = 4..{}", cfg.scan_k_max), 0.0, false);
    for k in 4..=cfg.scan_k_max {
        match qm_correction_search(k, k) {
            Ok(s) => {
                scan.record(exact_error(s.found), &[f64::from(k)]);
                notes.push(format!("k={k}: {}", if s.found { s.correction_text() } else { "none".into() }));
            }
            Err(_) => scan.record(1.0, &[f64::from(k)]),
        }
    }
    report.push(scan.finish().with_note(format!("informational: {}", notes.join("; "))));
}

/// Paravector bridge, Cauchy kernel, CK extensions, the QM family and the
/// geometric-series kernel.
pub fn monogenic_suite(seed: u64, cfg: &MonogenicConfig) -> Report {
    let mut report = Report::new("monogenic");
    bridge_entries(&mut report, seed);
    kernel_entries(&mut report, cfg, seed);
    ck_entries(&mut report, cfg);
    qm_entries(&mut report, cfg);
    report
}

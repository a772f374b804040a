//! Euclidean symmetry operators acting exactly on polynomial fields in
//! `G_3`.
//!
//! `P_a = a . grad` and `J_b = b ^ x ^ grad`. Since `b ^ x ^ e_k` is a
//! multiple of the central pseudoscalar `i = e012`, every `J_b` is `i`
//! times the rotation field `(b x x) . grad`.

use num_traits::{One, Zero};
use rand::Rng;

use super::poly::{monomial_exponents, MvPolynomial, RMv};
use crate::error::{Error, Result};
use crate::ga::{Rational, Scalar};
use crate::report::{Entry, Report};
use crate::sampling::rng_from_seed;

pub type Vec3 = [Rational; 3];

const NVARS: usize = 3;
const DIM: usize = 3;

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

pub fn vec_mv(v: &Vec3) -> RMv {
    RMv::vector(DIM, v)
}

/// The pseudoscalar `i = e012` with rational coefficients.
pub fn pseudoscalar() -> RMv {
    RMv::blade(DIM, 0b111, Rational::one())
}

/// The position field `x = x0 e0 + x1 e1 + x2 e2`.
pub fn position_poly() -> MvPolynomial {
    (0..NVARS).fold(MvPolynomial::zero(NVARS, DIM), |acc, k| {
        &acc + &MvPolynomial::var(NVARS, DIM, k).left_mul(&RMv::basis(DIM, k))
    })
}

/// `x^2` as a scalar polynomial.
pub fn radius_sq_poly() -> MvPolynomial {
    (0..NVARS).fold(MvPolynomial::zero(NVARS, DIM), |acc, k| {
        let v = MvPolynomial::var(NVARS, DIM, k);
        &acc + &(&v * &v)
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum SymmetryOp {
    /// `a . grad`
    P(Vec3),
    /// `b ^ x ^ grad`
    J(Vec3),
    /// `i x ^ grad`
    Jx,
    /// `x . grad`
    Euler,
    Laplacian,
    /// Multiplication by `x^2`.
    RadiusSq,
    /// `c (A f)` with a constant multivector `c`.
    Scaled(RMv, Box<SymmetryOp>),
    Sum(Box<SymmetryOp>, Box<SymmetryOp>),
    /// `A (B f)`.
    Compose(Box<SymmetryOp>, Box<SymmetryOp>),
    /// `A (B f) - B (A f)`.
    Bracket(Box<SymmetryOp>, Box<SymmetryOp>),
}

impl SymmetryOp {
    /// `S_{a,b} = P_a + J_b`.
    pub fn s(a: Vec3, b: Vec3) -> Self {
        Self::P(a) + Self::J(b)
    }

    pub fn scaled(self, c: RMv) -> Self {
        Self::Scaled(c, Box::new(self))
    }

    pub fn then(self, inner: Self) -> Self {
        Self::Compose(Box::new(self), Box::new(inner))
    }

    pub fn bracket(a: Self, b: Self) -> Self {
        Self::Bracket(Box::new(a), Box::new(b))
    }
}

impl std::ops::Add for SymmetryOp {
    type Output = SymmetryOp;
    fn add(self, rhs: SymmetryOp) -> SymmetryOp {
        SymmetryOp::Sum(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Sub for SymmetryOp {
    type Output = SymmetryOp;
    fn sub(self, rhs: SymmetryOp) -> SymmetryOp {
        self + rhs.scaled(RMv::scalar(DIM, -Rational::one()))
    }
}

/// `sum_k W_k d_k f` with polynomial weights on the left.
fn first_order(weights: &[MvPolynomial], f: &MvPolynomial) -> MvPolynomial {
    weights
        .iter()
        .enumerate()
        .fold(MvPolynomial::zero(NVARS, DIM), |acc, (k, w)| {
            &acc + &(w * &f.partial(k))
        })
}

fn j_weights(b: &Vec3) -> Vec<MvPolynomial> {
    let x = position_poly();
    let b = MvPolynomial::constant(NVARS, vec_mv(b));
    (0..NVARS)
        .map(|k| {
            let ek = MvPolynomial::constant(NVARS, RMv::basis(DIM, k));
            wedge_poly(&wedge_poly(&b, &x), &ek)
        })
        .collect()
}

/// Outer product of polynomials, termwise on coefficients.
fn wedge_poly(a: &MvPolynomial, b: &MvPolynomial) -> MvPolynomial {
    let mut out = MvPolynomial::zero(a.nvars(), a.dim());
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            let exps = ea.iter().zip(eb).map(|(p, q)| p + q).collect();
            out.add_term(exps, ca.wedge(cb).expect("same dimension"));
        }
    }
    out
}

fn jx_weights() -> Vec<MvPolynomial> {
    let i = pseudoscalar();
    let x = position_poly();
    (0..NVARS)
        .map(|k| {
            let ek = MvPolynomial::constant(NVARS, RMv::basis(DIM, k));
            wedge_poly(&x, &ek).left_mul(&i)
        })
        .collect()
}

pub fn apply_symmetry(op: &SymmetryOp, f: &MvPolynomial) -> Result<MvPolynomial> {
    if f.dim() != DIM {
        return Err(Error::DimensionMismatch {
            left: DIM,
            right: f.dim(),
        });
    }
    if f.nvars() != NVARS {
        return Err(Error::InvalidArgument(format!(
            "symmetry operators act on 3-variable fields, got {}",
            f.nvars()
        )));
    }
    Ok(apply(op, f))
}

fn apply(op: &SymmetryOp, f: &MvPolynomial) -> MvPolynomial {
    use SymmetryOp::*;
    match op {
        P(a) => (0..NVARS).fold(MvPolynomial::zero(NVARS, DIM), |acc, k| {
            &acc + &f.partial(k).scale(&a[k])
        }),
        J(b) => first_order(&j_weights(b), f),
        Jx => first_order(&jx_weights(), f),
        Euler => (0..NVARS).fold(MvPolynomial::zero(NVARS, DIM), |acc, k| {
            &acc + &f.partial(k).shift(k)
        }),
        Laplacian => f.laplacian(),
        RadiusSq => &radius_sq_poly() * f,
        Scaled(c, inner) => apply(inner, f).left_mul(c),
        Sum(a, b) => &apply(a, f) + &apply(b, f),
        Compose(a, b) => apply(a, &apply(b, f)),
        Bracket(a, b) => &apply(a, &apply(b, f)) - &apply(b, &apply(a, f)),
    }
}

/// Size of a polynomial for exact comparisons: the largest coefficient in
/// absolute value, never zero unless the polynomial is.
pub fn poly_size(p: &MvPolynomial) -> f64 {
    let m = p
        .terms()
        .map(|(_, c)| c.max_abs())
        .fold(0.0f64, f64::max);
    if m == 0.0 && !p.is_zero() {
        f64::MIN_POSITIVE
    } else {
        m
    }
}

/// Scalar monomials `x^alpha` of total degree `<= degree`.
pub fn monomial_basis(degree: u32) -> Vec<MvPolynomial> {
    monomial_exponents(NVARS, degree)
        .into_iter()
        .map(|e| MvPolynomial::monomial(e, RMv::one(DIM)))
        .collect()
}

/// Largest deviation of `lhs f - rhs f` over the basis.
pub fn operator_difference(lhs: &SymmetryOp, rhs: &SymmetryOp, basis: &[MvPolynomial]) -> f64 {
    basis
        .iter()
        .map(|f| poly_size(&(&apply(lhs, f) - &apply(rhs, f))))
        .fold(0.0, f64::max)
}

/// Harmonic part of a homogeneous degree-`n` polynomial:
/// `h = sum_j c_j r^{2j} lap^j p`, `c_0 = 1`,
/// `c_{j+1} = -c_j / (2 (j+1) (2n - 2j - 1))`.
pub fn harmonic_projection(p: &MvPolynomial, n: u32) -> MvPolynomial {
    let r2 = radius_sq_poly();
    let mut c = Rational::one();
    let mut lap = p.clone();
    let mut weight = MvPolynomial::one(NVARS, DIM);
    let mut h = MvPolynomial::zero(NVARS, DIM);
    let mut j: i64 = 0;
    while !lap.is_zero() {
        h = &h + &(&weight * &lap).scale(&c);
        let denom = 2 * (j + 1) * (2 * n as i64 - 2 * j - 1);
        c = -c / Rational::from_i64(denom);
        lap = lap.laplacian();
        weight = &weight * &r2;
        j += 1;
    }
    h
}

/// A spanning set of harmonic polynomials of degree `1..=degree`.
pub fn harmonic_basis(degree: u32) -> Vec<MvPolynomial> {
    let mut out = Vec::new();
    for n in 1..=degree {
        for e in monomial_exponents(NVARS, n) {
            if e.iter().sum::<u32>() != n {
                continue;
            }
            let h = harmonic_projection(&MvPolynomial::monomial(e, RMv::one(DIM)), n);
            if !h.is_zero() {
                out.push(h);
            }
        }
    }
    out
}

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=5).into())
}

pub fn random_vec3(rng: &mut impl Rng) -> Vec3 {
    [random_rational(rng), random_rational(rng), random_rational(rng)]
}

fn render_vec(v: &Vec3) -> String {
    format!("({}, {}, {})", v[0], v[1], v[2])
}

/// Exact first-order fit `R = sum_k R(x_k) d_k`, valid when `R` kills
/// constants and the fit reproduces `R` on the whole basis.
pub fn fit_first_order(op: &SymmetryOp, basis: &[MvPolynomial]) -> Option<[RMv; 3]> {
    let one = MvPolynomial::one(NVARS, DIM);
    if !apply(op, &one).is_zero() {
        return None;
    }
    let coeffs: Vec<MvPolynomial> = (0..NVARS)
        .map(|k| apply(op, &MvPolynomial::var(NVARS, DIM, k)))
        .collect();
    if coeffs.iter().any(|c| c.degree().unwrap_or(0) > 0) {
        return None;
    }
    let consts: Vec<RMv> = coeffs
        .iter()
        .map(|c| {
            c.coeff(&[0, 0, 0])
                .cloned()
                .unwrap_or_else(|| RMv::zero(DIM))
        })
        .collect();
    let fitted = |f: &MvPolynomial| {
        (0..NVARS).fold(MvPolynomial::zero(NVARS, DIM), |acc, k| {
            &acc + &f.partial(k).left_mul(&consts[k])
        })
    };
    for f in basis {
        if apply(op, f) != fitted(f) {
            return None;
        }
    }
    Some([consts[0].clone(), consts[1].clone(), consts[2].clone()])
}

/// Closed form of `[J_a, P_b]` from [`fit_first_order`], written as
/// `c P_v` when every coefficient is a pseudoscalar multiple of one vector.
pub fn describe_mixed_bracket(a: &Vec3, b: &Vec3, basis: &[MvPolynomial]) -> Option<String> {
    let op = SymmetryOp::bracket(SymmetryOp::J(a.clone()), SymmetryOp::P(b.clone()));
    let coeffs = fit_first_order(&op, basis)?;
    let axb = cross(a, b);
    let mut v: Vec3 = [Rational::zero(), Rational::zero(), Rational::zero()];
    for k in 0..3 {
        let c = &coeffs[k];
        if c != &RMv::blade(DIM, 0b111, c.coeff(0b111).clone()) {
            return None;
        }
        v[k] = c.coeff(0b111).clone();
    }
    let neg: Vec3 = [-axb[0].clone(), -axb[1].clone(), -axb[2].clone()];
    Some(if v == axb {
        "[J_a, P_b] = i P_{a x b}".into()
    } else if v == neg {
        "[J_a, P_b] = -i P_{a x b}".into()
    } else {
        format!("[J_a, P_b] = i P_v with v = {}", render_vec(&v))
    })
}

/// Exact bracket relations over `pairs` random rational `(a, b)`, acting
/// on all monomials of degree `<= degree`.
pub fn bracket_suite(pairs: usize, degree: u32, seed: u64) -> Report {
    let mut rng = rng_from_seed(seed);
    let basis = monomial_basis(degree);
    let harmonic = harmonic_basis(degree);
    let i = pseudoscalar();
    let minus_i = -&i;
    let sample: Vec<(Vec3, Vec3)> = (0..pairs.max(1))
        .map(|_| (random_vec3(&mut rng), random_vec3(&mut rng)))
        .collect();

    let mut report = Report::new("brackets");
    let mut pp = Entry::new("[P_a, P_b] = 0", 0.0, true);
    let mut jj_printed = Entry::new("[J_a, J_b] = i J_{a x b}", 0.0, true);
    let mut jj_oracle = Entry::new("[J_a, J_b] = -i J_{a x b}", 0.0, true);
    let mut jp_printed = Entry::new("[J_a, P_a] = -i P_{a x b} (printed, read as [J_a, P_b])", 0.0, false);
    let mut jp_fit = Entry::new("[J_a, P_b] closed form", 0.0, true);
    let mut jacobi = Entry::new("Jacobi identity on {P_a, J_b, J_a}", 0.0, true);
    let mut harm = Entry::new("S_{a,b} preserves harmonicity", 0.0, true);
    let mut central = Entry::new("S_{a,b} commutes with constant multivectors", 0.0, true);
    let mut forms = std::collections::BTreeSet::new();

    for (a, b) in &sample {
        use SymmetryOp::*;
        let point: Vec<f64> = a.iter().chain(b.iter()).map(Scalar::to_f64).collect();
        let axb = cross(a, b);

        let zero = Scaled(RMv::zero(DIM), Box::new(Laplacian));
        pp.record(
            operator_difference(&SymmetryOp::bracket(P(a.clone()), P(b.clone())), &zero, &basis),
            &point,
        );

        let jj = SymmetryOp::bracket(J(a.clone()), J(b.clone()));
        jj_printed.record(
            operator_difference(&jj, &J(axb.clone()).scaled(i.clone()), &basis),
            &point,
        );
        jj_oracle.record(
            operator_difference(&jj, &J(axb.clone()).scaled(minus_i.clone()), &basis),
            &point,
        );

        let jp = SymmetryOp::bracket(J(a.clone()), P(b.clone()));
        jp_printed.record(
            operator_difference(&jp, &P(axb.clone()).scaled(minus_i.clone()), &basis),
            &point,
        );
        match describe_mixed_bracket(a, b, &basis) {
            Some(form) => {
                forms.insert(form);
                jp_fit.record(0.0, &point);
            }
            None => jp_fit.record(f64::INFINITY, &point),
        }

        let (x, y, z) = (P(a.clone()), J(b.clone()), J(a.clone()));
        let jac = SymmetryOp::bracket(x.clone(), SymmetryOp::bracket(y.clone(), z.clone()))
            + SymmetryOp::bracket(y.clone(), SymmetryOp::bracket(z.clone(), x.clone()))
            + SymmetryOp::bracket(z, SymmetryOp::bracket(x, y));
        jacobi.record(
            basis.iter().map(|f| poly_size(&apply(&jac, f))).fold(0.0, f64::max),
            &point,
        );

        let s = SymmetryOp::s(a.clone(), b.clone());
        harm.record(
            harmonic
                .iter()
                .map(|h| poly_size(&apply(&s, h).laplacian()))
                .fold(0.0, f64::max),
            &point,
        );

        let c = {
            let mut c = RMv::zero(DIM);
            for mask in 0..8 {
                c.set_coeff(mask, random_rational(&mut rng));
            }
            c
        };
        central.record(
            basis
                .iter()
                .map(|f| {
                    let lhs = apply(&s, &f.left_mul(&c));
                    let rhs = apply(&s, f).left_mul(&c);
                    poly_size(&(&lhs - &rhs))
                })
                .fold(0.0, f64::max),
            &point,
        );
    }

    let note = forms.into_iter().collect::<Vec<_>>().join("; ");
    report.push(pp.finish());
    report.push(
        jj_printed
            .finish()
            .with_note("printed sign; with J_b = i (b x x).grad the bracket is -i J_{a x b}"),
    );
    report.push(jj_oracle.finish());
    report.push(jp_printed.finish().with_note(format!("oracle: {note}")));
    report.push(jp_fit.finish().with_note(note));
    report.push(jacobi.finish());
    report.push(harm.finish());
    report.push(central.finish());
    report
}

/// Compare `J_x^2 f` with candidate right-hand sides on every monomial of
/// degree `<= degree`.
pub fn jx_squared_check(degree: u32) -> Report {
    use SymmetryOp::*;
    let basis = monomial_basis(degree);
    let jx2 = Jx.then(Jx);
    let minus = |op: SymmetryOp| op.scaled(RMv::scalar(DIM, -Rational::one()));
    let tail = minus(Euler) + minus(Euler.then(Euler));
    let with_laplacian = RadiusSq.then(Laplacian) + tail.clone();
    let printed = RadiusSq + tail;
    let with_jx = with_laplacian.clone() + Jx.scaled(pseudoscalar());

    let mut report = Report::new("jx2");
    let scalar_diff = |rhs: &SymmetryOp| {
        basis
            .iter()
            .map(|f| poly_size(&(&apply(&jx2, f) - &apply(rhs, f)).grade_project(0)))
            .fold(0.0, f64::max)
    };
    report.push(
        Entry::exact(
            "J_x^2 = x^2 lap - x.grad - (x.grad)^2",
            operator_difference(&jx2, &with_laplacian, &basis),
            false,
        )
        .with_note("full multivector comparison"),
    );
    report.push(
        Entry::exact(
            "<J_x^2>_0 = x^2 lap - x.grad - (x.grad)^2",
            scalar_diff(&with_laplacian),
            true,
        )
        .with_note("scalar part"),
    );
    report.push(
        Entry::exact(
            "J_x^2 = x^2 - x.grad - (x.grad)^2",
            operator_difference(&jx2, &printed, &basis),
            false,
        )
        .with_note("printed form, x^2 as multiplication"),
    );
    report.push(Entry::exact(
        "J_x^2 = x^2 lap - x.grad - (x.grad)^2 + i J_x",
        operator_difference(&jx2, &with_jx, &basis),
        true,
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ga::rat;

    fn v(a: i64, b: i64, c: i64) -> Vec3 {
        [rat(a, 1), rat(b, 1), rat(c, 1)]
    }

    fn x(i: usize) -> MvPolynomial {
        MvPolynomial::var(3, 3, i)
    }

    #[test]
    fn p_examples() {
        let f = x(0).pow(2);
        let got = apply_symmetry(&SymmetryOp::P(v(1, 0, 0)), &f).unwrap();
        assert_eq!(got, x(0).scale(&rat(2, 1)));
    }

    #[test]
    fn j_e0_on_x1() {
        // e0 ^ x ^ e1 = x2 e0 ^ e2 ^ e1 = -x2 e012
        let got = apply_symmetry(&SymmetryOp::J(v(1, 0, 0)), &x(1)).unwrap();
        assert_eq!(got, x(2).left_mul(&pseudoscalar()).scale(&rat(-1, 1)));
    }

    #[test]
    fn jx_is_minus_x_cross_grad() {
        // -(x x grad) x1 = -(x x e1) = x2 e0 - x0 e2
        let got = apply_symmetry(&SymmetryOp::Jx, &x(1)).unwrap();
        let expect = &x(2).left_mul(&RMv::basis(3, 0)) - &x(0).left_mul(&RMv::basis(3, 2));
        assert_eq!(got, expect);
    }

    #[test]
    fn jx_annihilates_constants() {
        let one = MvPolynomial::one(3, 3);
        let got = apply_symmetry(&SymmetryOp::Jx.then(SymmetryOp::Jx), &one).unwrap();
        assert!(got.is_zero());
    }

    #[test]
    fn dimension_checked() {
        let f = MvPolynomial::one(3, 4);
        assert!(apply_symmetry(&SymmetryOp::Jx, &f).is_err());
    }

    #[test]
    fn harmonic_projection_is_harmonic() {
        for h in harmonic_basis(4) {
            assert!(h.laplacian().is_zero(), "{h}");
        }
        // x0^2 -> x0^2 - r^2/3
        let h = harmonic_projection(&x(0).pow(2), 2);
        let expect = &x(0).pow(2) - &radius_sq_poly().scale(&rat(1, 3));
        assert_eq!(h, expect);
    }

    #[test]
    fn harmonic_degree_n_eigenvalue() {
        // on harmonic f of degree 2: (x^2 lap - x.grad - (x.grad)^2) f = -6 f
        let f = &x(0) * &x(1);
        let op = SymmetryOp::Jx.then(SymmetryOp::Jx);
        let got = apply_symmetry(&op, &f).unwrap().grade_project(0);
        assert_eq!(got, f.scale(&rat(-6, 1)));
    }

    #[test]
    fn mixed_bracket_form() {
        let basis = monomial_basis(3);
        let form = describe_mixed_bracket(&v(1, 2, 0), &v(0, 1, 3), &basis).unwrap();
        assert_eq!(form, "[J_a, P_b] = -i P_{a x b}");
    }

    #[test]
    fn bracket_suite_outcome() {
        let r = bracket_suite(3, 3, 11);
        let failing: Vec<_> = r.failures().iter().map(|e| e.identity_name.clone()).collect();
        assert_eq!(failing, ["[J_a, J_b] = i J_{a x b}"]);
        assert!(r.entry("[J_a, J_b] = -i J_{a x b}").unwrap().holds);
        assert!(r.entry("[P_a, P_b] = 0").unwrap().holds);
        assert!(r.entry("S_{a,b} preserves harmonicity").unwrap().holds);
    }

    #[test]
    fn jx_squared_outcome() {
        let r = jx_squared_check(3);
        assert!(r.pass, "{:#?}", r.failures());
        assert!(!r.entry("J_x^2 = x^2 - x.grad - (x.grad)^2").unwrap().holds);
    }
}

//! Exact polynomial constructions: Cauchy-Kovalevska extensions and the
//! quasi-monogenic family with its correction search.
//!
//! Axially symmetric fields are written in the meridian plane at `phi = 0`,
//! in the variables `(x0, xp)` with `e_p = e1` and `d e_p/d phi = e2`. The
//! field at other azimuths is the rotated copy, so `d/dphi` acts on the
//! coefficients as the derivation `e1 -> e2, e2 -> -e1`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::linsolve::{solve, LinearSolution};
use crate::diffops::poly::{MvPolynomial, RMv};
use crate::error::{Error, Result};
use crate::ga::{blade_name, Rational, Scalar, MAX_DIM};

const X0: usize = 0;
const XP: usize = 1;

fn blade(mask: usize) -> RMv {
    RMv::blade(3, mask, Rational::from_i64(1))
}

fn mono(i: u32, j: u32, c: RMv) -> MvPolynomial {
    MvPolynomial::monomial(vec![i, j], c)
}

/// `sum_i (x_i + x0 e_{i0})^{k_i}` in `G_{n+1}`, `n = exponents.len()`,
/// over the variables `(x0, x1, ..., xn)`.
pub fn ck_extension(exponents: &[u32]) -> Result<MvPolynomial> {
    let n = exponents.len();
    if n == 0 || n + 1 > MAX_DIM {
        return Err(Error::InvalidArgument(format!(
            "ck_extension needs 1..={} exponents, got {n}",
            MAX_DIM - 1
        )));
    }
    let dim = n + 1;
    let nvars = n + 1;
    let mut out = MvPolynomial::zero(nvars, dim);
    for (i, &k) in exponents.iter().enumerate() {
        let i = i + 1;
        let e_i0 = &RMv::basis(dim, i) * &RMv::basis(dim, 0);
        let base = &MvPolynomial::var(nvars, dim, i) + &MvPolynomial::var(nvars, dim, 0).left_mul(&e_i0);
        out = &out + &base.pow(k);
    }
    Ok(out)
}

/// `d/dphi` on meridian-plane coefficients.
pub fn azimuthal_derivation(c: &RMv) -> RMv {
    let mut out = RMv::zero(c.dim());
    for (mask, v) in c.coeffs().iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let (has1, has2) = (mask & 0b010 != 0, mask & 0b100 != 0);
        let (target, sign) = match (has1, has2) {
            (true, false) => (mask ^ 0b110, 1),
            (false, true) => (mask ^ 0b110, -1),
            _ => continue,
        };
        let add = v.clone() * Rational::from_i64(sign);
        let cur = out.coeff(target).clone();
        out.set_coeff(target, cur + add);
    }
    out
}

/// `xp * grad f` for an axially symmetric field, with
/// `grad = e0 d0 + e_p dp + (e_p'/xp) dphi`. Exact and polynomial.
pub fn cylindrical_gradient_scaled(f: &MvPolynomial) -> MvPolynomial {
    let radial = &f.partial(X0).left_mul(&blade(0b001)) + &f.partial(XP).left_mul(&blade(0b010));
    let az = f.map_coeffs(azimuthal_derivation).left_mul(&blade(0b100));
    &radial.shift(XP) + &az
}

/// Exact division by `xp`; `None` when some term has no `xp` factor.
pub fn divide_by_xp(p: &MvPolynomial) -> Option<MvPolynomial> {
    let mut out = MvPolynomial::zero(p.nvars(), p.dim());
    for (e, c) in p.terms() {
        if e[XP] == 0 {
            return None;
        }
        let mut exps = e.clone();
        exps[XP] -= 1;
        out.add_term(exps, c.clone());
    }
    Some(out)
}

/// Cylindrical gradient of an axially symmetric field that is smooth
/// enough for the quotient by `xp` to be polynomial.
pub fn cylindrical_gradient(f: &MvPolynomial) -> Result<MvPolynomial> {
    divide_by_xp(&cylindrical_gradient_scaled(f))
        .ok_or_else(|| Error::Singular("gradient is not polynomial on the axis".into()))
}

/// `QM[k] = (x0 - xp e_{p0})^k e0`, the `k`-th power of the conjugate
/// paravector of `x0 e0 + xp e_p`, turned back into a vector by `e0`.
pub fn qm(k: u32) -> MvPolynomial {
    let e_p0 = &blade(0b010) * &blade(0b001);
    let base = &mono(1, 0, blade(0)) - &mono(0, 1, e_p0);
    base.pow(k).right_mul(&blade(0b001))
}

/// Exact `grad QM[k]`. Its bivector part vanishes; the scalar part is the
/// divergence.
pub fn qm_gradient(k: u32) -> MvPolynomial {
    cylindrical_gradient(&qm(k)).expect("QM[k] is smooth on the axis")
}

/// Oracle: `-Im((x0 + i xp)^k)/xp` from the binomial expansion.
pub fn qm_divergence_binomial(k: u32) -> MvPolynomial {
    let mut out = MvPolynomial::zero(2, 3);
    let mut binom = Rational::from_i64(1);
    for j in 0..=k {
        if j > 0 {
            binom = binom * Rational::from_i64(i64::from(k - j + 1)) / Rational::from_i64(i64::from(j));
        }
        if j % 2 == 1 {
            let sign = if (j / 2) % 2 == 0 { -1 } else { 1 };
            let c = binom.clone() * Rational::from_i64(sign);
            out.add_term(vec![k - j, j - 1], RMv::scalar(3, c));
        }
    }
    out
}

/// Absolute coefficients of the divergence, ordered by rising power of
/// `xp`.
pub fn coefficient_sequence(p: &MvPolynomial) -> Vec<Rational> {
    let mut terms: Vec<(u32, Rational)> = p
        .terms()
        .map(|(e, c)| (e[XP], c.scalar_part().abs()))
        .collect();
    terms.sort_by_key(|t| t.0);
    terms.into_iter().map(|t| t.1).collect()
}

/// Render a meridian-plane polynomial with `e1` shown as `ep` and `e2` as
/// `ep'`.
pub fn render_cylindrical(p: &MvPolynomial) -> String {
    let raw = p.render(&["x0", "xp"]);
    let mut names: Vec<(String, String)> = (1..8usize)
        .map(|mask| {
            let mut s = String::from("e");
            if mask & 1 != 0 {
                s.push('0');
            }
            if mask & 2 != 0 {
                s.push('p');
            }
            if mask & 4 != 0 {
                s.push_str("p'");
            }
            (blade_name(mask), s)
        })
        .collect();
    // longest names first so e01 is not rewritten as ep1
    names.sort_by_key(|(raw, _)| std::cmp::Reverse(raw.len()));
    raw.split(' ')
        .map(|tok| {
            names
                .iter()
                .find(|(r, _)| r == tok)
                .map(|(_, n)| n.clone())
                .unwrap_or_else(|| tok.to_string())
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Outcome of [`qm_correction_search`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrectionSearch {
    pub k: u32,
    pub max_degree: u32,
    pub found: bool,
    /// A correction with every free coefficient set to zero.
    #[serde(skip)]
    pub correction: Option<MvPolynomial>,
    /// Dimension of the space of monogenic fields in the search basis.
    pub nullity: usize,
    #[serde(skip)]
    system: System,
}

#[derive(Clone, Debug, PartialEq)]
struct System {
    basis: Vec<MvPolynomial>,
    target: MvPolynomial,
}

impl CorrectionSearch {
    pub fn correction_text(&self) -> String {
        self.correction.as_ref().map(render_cylindrical).unwrap_or_default()
    }

    /// Whether `candidate` makes `QM[k] + candidate` monogenic.
    pub fn admits(&self, candidate: &MvPolynomial) -> bool {
        (&cylindrical_gradient_scaled(candidate) + &self.system.target).is_zero()
    }
}

/// Basis of the search: `x0^i xp^j e0` with `j` even and `x0^i xp^j e_p`
/// with `j` odd, `i + j <= max_degree`. The parity keeps the field smooth
/// on the axis.
fn correction_basis(max_degree: u32) -> Vec<MvPolynomial> {
    // pure powers of x0 and xp lead so that free coefficients fall on mixed
    // terms
    let mut keys: Vec<(u32, u32)> = (0..=max_degree)
        .flat_map(|j| (0..=(max_degree - j)).map(move |i| (i, j)))
        .collect();
    keys.sort_by_key(|&(i, j)| (i.min(j), std::cmp::Reverse(i + j), std::cmp::Reverse(i)));
    keys.into_iter()
        .map(|(i, j)| {
            let c = if j % 2 == 0 { blade(0b001) } else { blade(0b010) };
            mono(i, j, c)
        })
        .collect()
}

/// Solve exactly for a polynomial `c` with `grad(QM[k] + c) = 0`.
pub fn qm_correction_search(k: u32, max_degree: u32) -> Result<CorrectionSearch> {
    if max_degree < k {
        return Err(Error::InvalidArgument(format!(
            "max_degree {max_degree} must be at least k = {k}"
        )));
    }
    let basis = correction_basis(max_degree);
    let target = cylindrical_gradient_scaled(&qm(k));
    let columns: Vec<MvPolynomial> = basis.iter().map(cylindrical_gradient_scaled).collect();

    // one equation per (monomial, blade) appearing anywhere
    let mut keys: Vec<(Vec<u32>, usize)> = Vec::new();
    for p in columns.iter().chain(std::iter::once(&target)) {
        for (e, c) in p.terms() {
            for (mask, v) in c.coeffs().iter().enumerate() {
                if !v.is_zero() && !keys.iter().any(|(ke, km)| ke == e && *km == mask) {
                    keys.push((e.clone(), mask));
                }
            }
        }
    }
    let entry = |p: &MvPolynomial, e: &[u32], mask: usize| -> Rational {
        p.coeff(e).map(|c| c.coeff(mask).clone()).unwrap_or_else(Rational::zero)
    };
    let rows: Vec<Vec<Rational>> = keys
        .iter()
        .map(|(e, mask)| columns.iter().map(|col| entry(col, e, *mask)).collect())
        .collect();
    let rhs: Vec<Rational> = keys.iter().map(|(e, mask)| -entry(&target, e, *mask)).collect();

    let system = System {
        basis: basis.clone(),
        target,
    };
    let solution = solve(rows, rhs, basis.len());
    let (found, correction, nullity) = match solution {
        Some(LinearSolution { particular, nullity }) => {
            let mut c = MvPolynomial::zero(2, 3);
            for (b, coef) in basis.iter().zip(&particular) {
                if !coef.is_zero() {
                    c = &c + &b.scale(coef);
                }
            }
            (true, Some(c), nullity)
        }
        None => (false, None, 0),
    };
    Ok(CorrectionSearch {
        k,
        max_degree,
        found,
        correction,
        nullity,
        system,
    })
}

/// The corrections listed for `k = 1, 2, 3`: `x0 e0`, `x0^2 e0` and
/// `x0^3 e0 - xp^3/4 e_p`.
pub fn listed_correction(k: u32) -> Option<MvPolynomial> {
    let e0 = blade(0b001);
    let ep = blade(0b010);
    match k {
        1 => Some(mono(1, 0, e0)),
        2 => Some(mono(2, 0, e0)),
        3 => Some(&mono(3, 0, e0) - &mono(0, 3, ep.scale(&Rational::new(1.into(), 4.into())))),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ga::rat;

    #[test]
    fn qm_one_and_its_gradient() {
        // QM[1] = x0 e0 - xp e_p, grad QM[1] = -1
        let q = qm(1);
        let expected = &mono(1, 0, blade(1)) - &mono(0, 1, blade(2));
        assert_eq!(q, expected);
        assert_eq!(qm_gradient(1), MvPolynomial::scalar(2, 3, rat(-1, 1)));
    }

    #[test]
    fn divergence_matches_binomials() {
        for k in 1..=15 {
            let g = qm_gradient(k);
            assert!(g.grade_project(2).is_zero(), "k={k}");
            assert_eq!(g, qm_divergence_binomial(k), "k={k}");
        }
        let seq: Vec<Rational> = coefficient_sequence(&qm_gradient(11));
        let expected: Vec<Rational> = [11, 165, 462, 330, 55, 1].iter().map(|&v| rat(v, 1)).collect();
        assert_eq!(seq, expected);
        assert_eq!(
            render_cylindrical(&qm_gradient(3)),
            "-3 x0^2 + xp^2"
        );
    }

    #[test]
    fn listed_corrections_are_monogenic() {
        for k in 1..=3 {
            let c = listed_correction(k).unwrap();
            assert!(cylindrical_gradient_scaled(&(&qm(k) + &c)).is_zero(), "k={k}");
            let s = qm_correction_search(k, k).unwrap();
            assert!(s.found && s.admits(&c), "k={k}");
            let found = s.correction.clone().unwrap();
            assert!(cylindrical_gradient_scaled(&(&qm(k) + &found)).is_zero());
        }
        assert_eq!(qm_correction_search(1, 1).unwrap().correction_text(), "x0 e0");
        assert!(qm_correction_search(3, 2).is_err());
    }

    #[test]
    fn ck_first_order_and_examples() {
        for exps in [vec![1, 1], vec![2, 2], vec![2, 3, 4], vec![1, 1, 1]] {
            let f = ck_extension(&exps).unwrap();
            assert!(f.gradient().is_zero(), "{exps:?}");
        }
        assert!(ck_extension(&[]).is_err());
    }

    #[test]
    fn rendering_maps_blades() {
        let p = &mono(0, 1, blade(0b011)) + &mono(1, 0, blade(0b110));
        let s = render_cylindrical(&p);
        assert!(s.contains("e0p") && s.contains("epp'"), "{s}");
    }
}

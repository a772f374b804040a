//! Associated Legendre functions of both kinds and the azimuthal cosine
//! polynomial.
//!
//! Conventions (no Condon-Shortley phase):
//!
//! * `P_n^m(x) = (1 - x^2)^{m/2} d^m P_n/dx^m` for `|x| <= 1`,
//! * `P_n^m(x) = (x^2 - 1)^{m/2} d^m P_n/dx^m` for `x > 1`,
//! * `Q_n^m(x) = (x^2 - 1)^{m/2} d^m Q_n/dx^m` for `x > 1`.
//!
//! With these choices odd-`m` functions are positive near `x = 1`; code
//! written against the Condon-Shortley convention sees the opposite sign
//! for odd `m`.

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ga::Rational;

/// Safety cap on the backward recurrence length.
const MILLER_MAX_START: usize = 200_000;

fn check_order(n: u32, m: u32) -> Result<()> {
    if m > n {
        return Err(Error::InvalidArgument(format!("order m = {m} exceeds degree n = {n}")));
    }
    Ok(())
}

/// `(2m - 1)!!`
fn double_factorial_odd(m: u32) -> f64 {
    (1..=m).fold(1.0, |acc, k| acc * (2 * k - 1) as f64)
}

/// Associated Legendre function of the first kind.
///
/// Uses the trigonometric branch on `[-1, 1]` and the hyperbolic branch
/// `(x^2 - 1)^{m/2}` for `x > 1`.
pub fn legendre_p(n: u32, m: u32, x: f64) -> Result<f64> {
    check_order(n, m)?;
    if !x.is_finite() || x < -1.0 {
        return Err(Error::OutOfDomain(format!("legendre_p argument {x} < -1")));
    }
    let w = if x > 1.0 { (x - 1.0) * (x + 1.0) } else { (1.0 - x) * (1.0 + x) };
    let mut p_mm = double_factorial_odd(m) * w.sqrt().powi(m as i32);
    if n == m {
        return Ok(p_mm);
    }
    let mut p_next = x * (2 * m + 1) as f64 * p_mm;
    for k in (m + 2)..=n {
        let p = ((2 * k - 1) as f64 * x * p_next - (k + m - 1) as f64 * p_mm) / (k - m) as f64;
        p_mm = p_next;
        p_next = p;
    }
    Ok(p_next)
}

/// `Q_0, ..., Q_nmax` at `x > 1` by backward recurrence normalized with
/// `Q_0 = ln((x + 1)/(x - 1))/2`.
fn legendre_q0_table(nmax: u32, x: f64) -> Vec<f64> {
    let nmax = nmax as usize;
    let q0 = 0.5 * ((x + 1.0) / (x - 1.0)).ln();
    if nmax == 0 {
        return vec![q0];
    }
    let rate = (x + ((x - 1.0) * (x + 1.0)).sqrt()).ln();
    let extra = ((40.0 / rate).ceil() as usize).saturating_add(10);
    let start = (nmax + extra).min(MILLER_MAX_START);

    let mut q = vec![0.0; start + 2];
    q[start] = 1.0;
    for k in (1..=start).rev() {
        let v = ((2 * k + 1) as f64 * x * q[k] - (k + 1) as f64 * q[k + 1]) / k as f64;
        q[k - 1] = v;
        if v.abs() > 1e250 {
            for t in q.iter_mut().skip(k - 1) {
                *t *= 1e-250;
            }
        }
    }
    let scale = q0 / q[0];
    q.truncate(nmax + 1);
    q.iter_mut().for_each(|v| *v *= scale);
    q
}

/// `Q_0^j(x)` from the closed form of the `j`-th derivative of `Q_0`.
fn legendre_q0_order(j: u32, x: f64) -> f64 {
    if j == 0 {
        return 0.5 * ((x + 1.0) / (x - 1.0)).ln();
    }
    let fact: f64 = (1..j).map(f64::from).product();
    let sign = if (j - 1) % 2 == 0 { 1.0 } else { -1.0 };
    let deriv = 0.5 * sign * fact * ((x + 1.0).powi(-(j as i32)) - (x - 1.0).powi(-(j as i32)));
    ((x - 1.0) * (x + 1.0)).sqrt().powi(j as i32) * deriv
}

/// Associated Legendre function of the second kind for `x > 1`.
///
/// `Q_n` comes from a backward (Miller) recurrence, which is stable for the
/// decaying solution; the order is raised with
/// `sqrt(x^2 - 1) Q_k^{j+1} = (k - j) x Q_k^j - (k + j) Q_{k-1}^j`.
pub fn legendre_q(n: u32, m: u32, x: f64) -> Result<f64> {
    check_order(n, m)?;
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::OutOfDomain(format!("legendre_q needs x > 1, got {x}")));
    }
    let mut row = legendre_q0_table(n, x);
    let s = ((x - 1.0) * (x + 1.0)).sqrt();
    for j in 0..m {
        let mut next = vec![0.0; row.len()];
        next[0] = legendre_q0_order(j + 1, x);
        for k in 1..row.len() {
            let kf = k as f64;
            let jf = f64::from(j);
            next[k] = ((kf - jf) * x * row[k] - (kf + jf) * row[k - 1]) / s;
        }
        row = next;
    }
    Ok(row[n as usize])
}

/// `C_m(alpha) = m sum_k (-1)^k (m-k-1)!/(k!(m-2k)!) 2^{m-2k-1} alpha^{m-2k}`,
/// which equals `cos(m arccos alpha)`. `C_0 = 1`.
///
/// The monomial sum cancels badly near `|alpha| = 1` for large `m`, so it
/// is evaluated exactly at the binary value of `alpha` and rounded once.
pub fn cos_poly(m: u32, alpha: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let Some(a) = Rational::from_float(alpha) else {
        return f64::NAN;
    };
    let mut sum = Rational::zero();
    for k in 0..=(m / 2) {
        let num = factorial(m - k - 1);
        let den = factorial(k) * factorial(m - 2 * k);
        let mut coeff = i128::from(m) * num / den;
        let pow2 = m - 2 * k;
        coeff = if pow2 == 0 { coeff / 2 } else { coeff << (pow2 - 1) };
        let term = Rational::from_integer(coeff.into()) * num_traits::pow(a.clone(), pow2 as usize);
        sum = if k % 2 == 0 { sum + term } else { sum - term };
    }
    sum.to_f64().unwrap_or(f64::NAN)
}

fn factorial(k: u32) -> i128 {
    (1..=i128::from(k)).product()
}

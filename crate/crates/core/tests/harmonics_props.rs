use std::f64::consts::PI;

use proptest::prelude::*;
use spheroidal_ga::harmonics::{cos_poly, eval_mode, HarmonicMode, Kind, Parity};
use spheroidal_ga::spheroidal::{position, Case, SpheroidalPoint};

/// Axisymmetric solid harmonics `P_n(cosh eta) P_n(cos theta)` at `mu = 1`
/// written in `x0` and `r^2 = x0^2 + xp^2`.
fn solid_harmonic(n: u32, x0: f64, r2: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => x0,
        2 => (9.0 * x0 * x0 - 3.0 * r2 - 2.0) / 4.0,
        3 => (25.0 * x0.powi(3) - 15.0 * x0 * r2 - 6.0 * x0) / 4.0,
        _ => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cos_poly_is_chebyshev(m in 0u32..=12, alpha in -1.0..=1.0f64) {
        let exact = (f64::from(m) * alpha.acos()).cos();
        prop_assert!((cos_poly(m, alpha) - exact).abs() < 1e-12);
    }

    #[test]
    fn axisymmetric_modes_are_polynomials(
        n in 0u32..=3,
        eta in 0.1..2.0f64,
        theta in 0.05..PI - 0.05,
        phi in 0.0..2.0 * PI,
    ) {
        let mode = HarmonicMode::new(n, 0, Parity::Cos, Kind::Interior, Case::Prolate).unwrap();
        let p = SpheroidalPoint::prolate(1.0, eta, theta, phi).unwrap();
        let x = position(&p);
        let u = eval_mode(mode, &p).unwrap();
        let expect = solid_harmonic(n, x.x0(), x.norm_sq());
        prop_assert!((u - expect).abs() < 1e-11 * expect.abs().max(1.0));
    }

    #[test]
    fn modes_factor(
        n in 0u32..=4,
        mseed in 0u32..=4,
        eta in 0.1..2.0f64,
        theta in 0.05..PI - 0.05,
        phi in 0.0..2.0 * PI,
    ) {
        let m = mseed.min(n);
        let mode = HarmonicMode::new(n, m, Parity::Cos, Kind::Interior, Case::Prolate).unwrap();
        let at = |e: f64, t: f64, f: f64| {
            eval_mode(mode, &SpheroidalPoint::prolate(1.0, e, t, f).unwrap()).unwrap()
        };
        // separability: U(a,b,c) U(a',b',c') = U(a,b',c) U(a',b,c')
        let (e2, t2) = (0.5 * eta + 0.3, PI - theta);
        let lhs = at(eta, theta, phi) * at(e2, t2, 0.0);
        let rhs = at(eta, t2, phi) * at(e2, theta, 0.0);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(rhs.abs()).max(1.0));
    }

    #[test]
    fn exterior_modes_decay(
        case in prop_oneof![Just(Case::Prolate), Just(Case::Oblate)],
        n in 0u32..=4,
        eta in 2.0..3.0f64,
    ) {
        let mode = HarmonicMode::new(n, 0, Parity::Cos, Kind::Exterior, case).unwrap();
        let at = |e: f64| eval_mode(mode, &SpheroidalPoint::new(case, 1.0, e, 0.4, 0.0).unwrap()).unwrap();
        prop_assert!(at(eta + 0.05).abs() < at(eta).abs());
    }
}

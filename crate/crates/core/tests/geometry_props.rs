use std::f64::consts::PI;

use proptest::prelude::*;
use spheroidal_ga::frames::{e0_conjugate, PhaseState, Zeta};
use spheroidal_ga::ga::{e, scalar3, Mv};
use spheroidal_ga::projection::{
    project, project_coordinates, unproject, PlanePoint, ProjectionCase,
};
use spheroidal_ga::spheroidal::{invert, position, Case, SpheroidalPoint};

fn close(a: &Mv, b: &Mv, tol: f64) -> bool {
    a.max_abs_diff(b) <= tol
}

fn case() -> impl Strategy<Value = Case> {
    prop_oneof![Just(Case::Prolate), Just(Case::Oblate)]
}

fn projection_case() -> impl Strategy<Value = ProjectionCase> {
    prop_oneof![Just(ProjectionCase::Case1), Just(ProjectionCase::Case3)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn quaternion_table(phi in 0.0..2.0 * PI) {
        let q = PhaseState::new(phi);
        let m1 = scalar3(-1.0);
        for u in [&q.i_p, &q.j_p, &q.k_p] {
            prop_assert!(close(&(u * u), &m1, 1e-14));
        }
        prop_assert!(close(&(&q.i_p * &q.j_p), &q.k_p, 1e-14));
        prop_assert!(close(&(&q.j_p * &q.k_p), &q.i_p, 1e-14));
        prop_assert!(close(&(&q.k_p * &q.i_p), &q.j_p, 1e-14));
        prop_assert!(close(&(&q.j_p * &q.i_p), &-&q.k_p, 1e-14));
    }

    #[test]
    fn zeta_products(eta in 0.1..2.0f64, theta in 0.05..PI - 0.05, phi in 0.0..2.0 * PI) {
        let z = Zeta::new(eta, theta, phi).unwrap();
        let zz = &z.value() * &z.conj();
        prop_assert!(zz.max_abs_diff(&scalar3(zz.scalar_part())) < 1e-12);
        prop_assert!(zz.scalar_part() >= 0.0);
        let d = z.z_eta();
        let dd = &d * &e0_conjugate(&d);
        let sum = zz.scalar_part() + dd.scalar_part();
        prop_assert!((sum - (2.0 * eta).cosh()).abs() < 1e-11 * (2.0 * eta).cosh());
        let e0 = e(0);
        prop_assert!(close(&(&(&e0 * &z.value()) * &e0), &z.conj(), 1e-13));
    }

    #[test]
    fn position_norms(
        mu in 0.3..3.0f64,
        eta in 0.1..2.0f64,
        theta in 0.05..PI - 0.05,
        phi in 0.0..2.0 * PI,
    ) {
        let (c2e, c2t) = ((2.0 * eta).cosh(), (2.0 * theta).cos());
        let x = position(&SpheroidalPoint::prolate(mu, eta, theta, phi).unwrap());
        let y = position(&SpheroidalPoint::oblate(mu, eta, theta, phi).unwrap());
        let scale = mu * mu * c2e;
        prop_assert!((x.norm_sq() - 0.5 * mu * mu * (c2e + c2t)).abs() < 1e-12 * scale);
        prop_assert!((y.norm_sq() - 0.5 * mu * mu * (c2e - c2t)).abs() < 1e-12 * scale);
        let a = x.x0() / (mu * eta.cosh());
        let b = x.xp() / (mu * eta.sinh());
        prop_assert!((a * a + b * b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn inversion_round_trip(
        case in case(),
        mu in 0.3..3.0f64,
        eta in 0.1..2.0f64,
        theta in 0.05..PI - 0.05,
        phi in 0.0..2.0 * PI,
    ) {
        let p = SpheroidalPoint::new(case, mu, eta, theta, phi).unwrap();
        let q = invert(&position(&p), mu, case).unwrap();
        prop_assert!((q.eta - eta).abs() < 1e-10);
        prop_assert!((q.theta - theta).abs() < 1e-10);
        let dphi = (q.phi - phi).rem_euclid(2.0 * PI);
        prop_assert!(dphi.min(2.0 * PI - dphi) < 1e-10);
    }

    #[test]
    fn projection_chain(
        pc in projection_case(),
        nu in 0.05..1.5f64,
        theta in 0.0..PI - 0.1,
        phi in 0.0..2.0 * PI,
    ) {
        let x = pc.spheroid(nu).unwrap().point(theta, phi).unwrap();
        let t = project(&x, nu, pc).unwrap();
        // t e_p + e0 = (x + e0)/(x0 + 1)
        let q = PhaseState::new(t.phi);
        let lhs = &(&q.e_p * t.t) + &e(0);
        let rhs = &(&x.mv() + &e(0)) / (x.x0() + 1.0);
        prop_assert!(close(&lhs, &rhs, 1e-12 * t.t.max(1.0)));
        let coord = project_coordinates(theta, nu, pc).unwrap();
        prop_assert!((coord - t.t).abs() < 1e-12 * t.t.max(1.0));
        prop_assert!(unproject(&t, nu, pc).max_abs_diff(&x) < 1e-12);
    }

    #[test]
    fn projection_disk(pc in projection_case(), nu in 0.05..1.5f64, t in 0.0..10.0f64, phi in 0.0..2.0 * PI) {
        // the upper half maps inside the disk of radius e^{-+nu}
        let x = unproject(&PlanePoint::new(t, phi), nu, pc);
        let inside = t <= pc.disk_radius(nu);
        prop_assert_eq!(x.x0() >= -1e-15, inside || x.x0().abs() < 1e-12);
    }
}

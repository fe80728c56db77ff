mod common;

use backflow_core::bessel::{
    bessel_j, bessel_j_derivative, bessel_j_pair, bessel_zero, Order, ZeroIndex,
};
use common::reference::{J_VALUES, ZEROS};
use proptest::prelude::*;

fn order(nu: f64) -> Order {
    Order::new(nu).unwrap()
}

fn index(n: u32) -> ZeroIndex {
    ZeroIndex::new(n).unwrap()
}

#[test]
fn values_match_reference() {
    for &(nu, x, j, jp) in J_VALUES {
        let (got, got_p) = bessel_j_pair(order(nu), x).unwrap();
        let tol = (1e-12 * j.abs()).max(1e-13 * (jp.abs() * x).max(1.0));
        assert!((got - j).abs() <= tol, "J_{nu}({x}) = {got}, expected {j}");
        let tol_p = (1e-12 * jp.abs()).max(1e-13 * (j.abs() * x).max(1.0) / x.max(1.0));
        assert!(
            (got_p - jp).abs() <= tol_p.max(1e-13),
            "J'_{nu}({x}) = {got_p}, expected {jp}"
        );
    }
}

#[test]
fn zeros_match_reference() {
    for &(nu, n, z) in ZEROS {
        let got = bessel_zero(order(nu), index(n)).unwrap();
        assert!(
            (got - z).abs() <= 1e-11 * z.max(1.0),
            "j_{{{nu},{n}}} = {got}, expected {z}"
        );
    }
}

#[test]
fn derivative_matches_finite_difference() {
    for &(nu, x) in &[(0.3, 2.0), (5.5, 7.1), (40.0, 35.0), (120.0, 300.0)] {
        let h = 1e-5;
        let fd =
            (bessel_j(order(nu), x + h).unwrap() - bessel_j(order(nu), x - h).unwrap()) / (2.0 * h);
        let d = bessel_j_derivative(order(nu), x).unwrap();
        assert!((fd - d).abs() < 1e-8, "nu = {nu}, x = {x}: {fd} vs {d}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn three_term_recurrence(nu in 0.0f64..400.0, x in 0.5f64..800.0) {
        let a = bessel_j(order(nu), x).unwrap();
        let b = bessel_j(order(nu + 1.0), x).unwrap();
        let c = bessel_j(order(nu + 2.0), x).unwrap();
        let lhs = a + c;
        let rhs = 2.0 * (nu + 1.0) / x * b;
        let scale = a.abs().max(b.abs()).max(c.abs()).max(1e-300);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * scale * (1.0 + (nu + 1.0) / x));
    }

    #[test]
    fn zeros_increase_and_exceed_order(nu in 0.0f64..300.0, n in 1u32..120) {
        let a = bessel_zero(order(nu), index(n)).unwrap();
        let b = bessel_zero(order(nu), index(n + 1)).unwrap();
        prop_assert!(a > nu);
        prop_assert!(b > a);
        prop_assert!(bessel_j(order(nu), a).unwrap().abs() < 1e-12 * (1.0 + a));
    }

    #[test]
    fn zeros_interlace(nu in 0.0f64..300.0, n in 1u32..100) {
        let lo = bessel_zero(order(nu), index(n)).unwrap();
        let mid = bessel_zero(order(nu + 1.0), index(n)).unwrap();
        let hi = bessel_zero(order(nu), index(n + 1)).unwrap();
        prop_assert!(lo < mid && mid < hi);
    }

    #[test]
    fn zeros_increase_with_order(nu in 0.0f64..300.0, d in 0.01f64..5.0, n in 1u32..100) {
        let a = bessel_zero(order(nu), index(n)).unwrap();
        let b = bessel_zero(order(nu + d), index(n)).unwrap();
        prop_assert!(b > a);
    }
}

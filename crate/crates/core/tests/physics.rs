#![allow(clippy::excessive_precision)]

use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use backflow_core::asymptotics::{
    extremum_grid, figure_data, unboundedness_scan, v_ratio, v_ratio_asymptotic,
};
use backflow_core::currents::{
    current_at, integrated_current, j_a_degenerate, min_integrated_current, min_local_current,
    probability_transfer, quadratic_form, quadratic_form_min, s_integral, DegenerateSystem,
    MixingParams, RadialSection, Superposition, TransferSpec,
};
use backflow_core::degeneracy::{solve_beta, verify_pair, DegeneratePair, BETA_TOL};
use backflow_core::eigensystem::{overlap, PhysicalConfig, RadialEigenstate};
use backflow_core::presets;
use proptest::prelude::*;

fn pairs() -> &'static [DegeneratePair] {
    static PAIRS: OnceLock<Vec<DegeneratePair>> = OnceLock::new();
    PAIRS.get_or_init(|| {
        presets::TABLE
            .iter()
            .map(|p| solve_beta(p.candidate, BETA_TOL).unwrap().unwrap())
            .collect()
    })
}

fn system(row: usize) -> DegenerateSystem {
    DegenerateSystem::new(pairs()[row], &PhysicalConfig::default()).unwrap()
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs()
}

#[test]
fn orthonormal_modes() {
    let cfg = PhysicalConfig::dimensionless(0.37);
    let states: Vec<RadialEigenstate> = (-2..=2)
        .flat_map(|m| (1..=4).map(move |n| (m, n)))
        .map(|(m, n)| RadialEigenstate::from_quantum_numbers(m, n, cfg).unwrap())
        .collect();
    assert_eq!(states.len(), 20);
    for (i, a) in states.iter().enumerate() {
        assert!(a.phi(1.0).unwrap().abs() < 1e-10);
        for (j, b) in states.iter().enumerate() {
            let expected = if i == j { 1.0 } else { 0.0 };
            assert!(
                (overlap(a, b).unwrap() - expected).abs() < 1e-7,
                "({i}, {j})"
            );
        }
    }
}

#[test]
fn table_pairs_are_degenerate() {
    for p in pairs() {
        let report = verify_pair(p, &PhysicalConfig::default()).unwrap();
        assert!(report.energy_residual < 1e-9);
        assert!(!report.flagged);
        assert!(p.gamma_shared > p.kinetic_prime && p.kinetic_prime > p.kinetic && p.kinetic > 0.0);
    }
}

#[test]
fn golden_section_values() {
    let sec = RadialSection::new(0.3, 0.7, 1.0).unwrap();
    let res = min_integrated_current(&system(0), sec).unwrap();
    assert!(close(res.s11, 0.244_464_059_707_730_18, 1e-11));
    assert!(close(res.s22, 0.157_523_148_156_244_12, 1e-11));
    assert!(close(res.s12, -0.114_841_903_541_919_76, 1e-11));
    assert!(close(res.rho, 0.163_664_447_817_415_03, 1e-10));
    assert!(close(res.min_j, -0.042_861_027_932_753_199, 1e-10));
}

#[test]
fn integrated_minimum_sign_law() {
    let mut state = 0x2545_f491_u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    for row in 0..2 {
        let sys = system(row);
        let (a, b) = sys.states();
        let (m, mp) = (a.mode().kinetic, b.mode().kinetic);
        for _ in 0..25 {
            let r1 = 0.02 + 0.9 * next();
            let r2 = r1 + (1.0 - r1) * (0.05 + 0.95 * next());
            let sec = RadialSection::new(r1, r2.min(1.0), 1.0).unwrap();
            let res = min_integrated_current(&sys, sec).unwrap();
            assert_eq!(res.min_j < 0.0, res.rho > 0.0, "section ({r1}, {r2})");
            assert!(res.min_j <= (m * res.s11).min(mp * res.s22) + 1e-15);
            assert!(res.s12 * res.s12 <= res.s11 * res.s22 * (1.0 + 1e-10));
            assert!((res.min_j - res.min_j_alt).abs() <= 1e-12 * (m * res.s11 + mp * res.s22));
            assert_eq!(
                s_integral(a, b, sec).unwrap(),
                s_integral(b, a, sec).unwrap()
            );
        }
    }
}

#[test]
fn thin_section_has_vanishing_minimum() {
    let sys = system(0);
    let mut last = f64::INFINITY;
    for w in [1e-2, 1e-3, 1e-4] {
        let sec = RadialSection::new(0.5, 0.5 + w, 1.0).unwrap();
        let v = min_integrated_current(&sys, sec).unwrap().min_j.abs();
        assert!(v < last);
        last = v;
    }
    assert!(last < 1e-4);
}

#[test]
fn transfer_is_linear_in_time() {
    let sys = system(0);
    let sec = RadialSection::new(0.3, 0.7, 1.0).unwrap();
    let mix = min_integrated_current(&sys, sec).unwrap().optimal;
    let one = probability_transfer(&sys, mix, TransferSpec::new(sec, 1.0).unwrap()).unwrap();
    let two = probability_transfer(&sys, mix, TransferSpec::new(sec, 2.0).unwrap()).unwrap();
    let big = probability_transfer(&sys, mix, TransferSpec::new(sec, 1e3).unwrap()).unwrap();
    assert!(one < 0.0);
    assert_eq!(two, 2.0 * one);
    assert_eq!(big, 1e3 * one);
    let pure = probability_transfer(
        &sys,
        MixingParams::FIRST,
        TransferSpec::new(sec, 3.0).unwrap(),
    )
    .unwrap();
    let s11 = s_integral(sys.states().0, sys.states().0, sec).unwrap();
    assert!(close(pure, 3.0 * sys.pair().kinetic * s11, 1e-14));
}

#[test]
fn scaling_tracks_larger_momentum() {
    let report = unboundedness_scan(pairs(), &PhysicalConfig::default(), 0.5).unwrap();
    assert!(report.strictly_decreasing && report.bound_holds);
    for w in report.rows.windows(2) {
        let observed = w[1].min_ja_scaled / w[0].min_ja_scaled;
        let kinetic = |row: &backflow_core::asymptotics::ScalingRow| {
            row.candidate.m_prime as f64
                - pairs()
                    .iter()
                    .find(|p| p.candidate == row.candidate)
                    .unwrap()
                    .beta
        };
        let expected = kinetic(&w[1]) / kinetic(&w[0]);
        assert!(
            (observed / expected - 1.0).abs() < 0.5,
            "{observed} vs {expected}"
        );
    }
}

#[test]
fn asymptotic_ratio_matches_exact() {
    for row in 1..4 {
        let sys = system(row);
        let r = extremum_grid(&sys, 0.5).unwrap().r_kmax();
        let exact = v_ratio(&sys, r).unwrap();
        let approx = v_ratio_asymptotic(&sys, r).unwrap();
        assert!((approx / exact - 1.0).abs() < 0.05);
    }
}

#[test]
fn markers_approach_local_minima() {
    let samples = 4000;
    let curves = figure_data(pairs(), &PhysicalConfig::default(), samples).unwrap();
    let mut last = f64::INFINITY;
    for curve in &curves {
        let pts = &curve.points;
        assert!(pts.iter().all(|&(_, v)| v <= 0.0));
        let minima: Vec<f64> = (1..pts.len() - 1)
            .filter(|&i| pts[i].1 < pts[i - 1].1 && pts[i].1 < pts[i + 1].1)
            .map(|i| pts[i].0)
            .collect();
        let marker = curve.markers.last().unwrap().r_over_r;
        let dist = minima
            .iter()
            .map(|x| (x - marker).abs())
            .fold(f64::INFINITY, f64::min);
        assert!(dist < last);
        last = dist;
    }
    assert!(last <= 1.0 / samples as f64);
    assert!(curves[0].points[0].1.abs() < 1e-12);
}

#[test]
fn degenerate_current_is_time_independent() {
    let sys = system(0);
    let mix = MixingParams::new(1.2, 0.4).unwrap();
    let s = Superposition::degenerate(&sys, mix);
    for &r in &[0.2, 0.55, 0.83] {
        let j0 = current_at(&s, r, 0.0, 0.0).unwrap().azimuthal;
        for t in [1.0, 7.3] {
            let jt = current_at(&s, r, 0.0, t).unwrap().azimuthal;
            assert!((jt - j0).abs() <= 1e-12 * j0.abs().max(1.0));
        }
    }
}

#[test]
fn scaled_local_minimum_is_unit_free() {
    let pair = pairs()[0];
    let base = DegenerateSystem::new(pair, &PhysicalConfig::default()).unwrap();
    let units = PhysicalConfig::new(2.5, 0.7, 3.0, 0.0).unwrap();
    let scaled = DegenerateSystem::new(pair, &units).unwrap();
    for x in [0.1, 0.45, 0.9] {
        let a = min_local_current(&base, x).unwrap().value * base.config().current_scale();
        let b =
            min_local_current(&scaled, 3.0 * x).unwrap().value * scaled.config().current_scale();
        assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn closed_form_is_a_lower_bound(
        a in -5.0f64..5.0, b in -5.0f64..5.0, c in -5.0f64..5.0,
        theta in 0.0f64..=PI, chi in 0.0f64..TAU,
    ) {
        let min = quadratic_form_min(a, b, c);
        let mix = MixingParams::new(theta, chi).unwrap();
        prop_assert!(min.value <= quadratic_form(a, b, c, mix) + 1e-13);
        prop_assert!((quadratic_form(a, b, c, min.optimal) - min.value).abs() < 1e-12);
    }

    #[test]
    fn uncoupled_minimum_is_smaller_diagonal(a in -5.0f64..5.0, b in -5.0f64..5.0) {
        prop_assert_eq!(quadratic_form_min(a, b, 0.0).value, a.min(b));
    }

    #[test]
    fn local_minimum_dominates(r in 0.01f64..1.0, theta in 0.0f64..=PI, chi in 0.0f64..TAU) {
        let sys = system(0);
        let mix = MixingParams::new(theta, chi).unwrap();
        let min = min_local_current(&sys, r).unwrap();
        let value = j_a_degenerate(&sys, mix, r).unwrap();
        prop_assert!(min.value <= value + 1e-12);
        prop_assert!(min.value <= 0.0);
    }

    #[test]
    fn degenerate_form_matches_field(r in 0.01f64..1.0, theta in 0.0f64..=PI, chi in 0.0f64..TAU) {
        let sys = system(1);
        let mix = MixingParams::new(theta, chi).unwrap();
        let direct = current_at(&Superposition::degenerate(&sys, mix), r, 0.0, 0.0).unwrap();
        let form = j_a_degenerate(&sys, mix, r).unwrap();
        prop_assert!((direct.azimuthal - form).abs() <= 1e-12 * form.abs().max(1.0));
    }

    #[test]
    fn integrated_minimum_dominates(theta in 0.0f64..=PI, chi in 0.0f64..TAU) {
        let sys = system(0);
        let sec = RadialSection::new(0.3, 0.7, 1.0).unwrap();
        let min = min_integrated_current(&sys, sec).unwrap().min_j;
        let mix = MixingParams::new(theta, chi).unwrap();
        prop_assert!(min <= integrated_current(&sys, mix, sec).unwrap() + 1e-13);
    }
}

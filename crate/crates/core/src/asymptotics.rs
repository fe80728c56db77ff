//! Large-argument behaviour of the radial functions and the growth of the
//! minimal local current with `u = M'/M`.
//!
//! For large `gamma r / R` the first radial function is close to
//! `cos(gamma r / R - M pi/2 - pi/4) / sqrt(R pi r)` up to a constant, so its
//! extrema sit near `r_k = (R / gamma) (k + M/2 + 1/4) pi`. At those points
//! the minimal current is bounded above by
//! `(hbar M phi^2 / (2 mu r)) (1 + u f(v))` with `f(v) = v (1 - sqrt(1 + 1/v))`,
//! which becomes arbitrarily negative as `u` grows while `v` stays of order one.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::currents::{min_local_current, DegenerateSystem};
use crate::degeneracy::{DegenerateCandidate, DegeneratePair};
use crate::eigensystem::{PhysicalConfig, RadialEigenstate};
use crate::error::{Error, Result};

/// Smallest `gamma r / R` accepted by [`phi_asymptotic`].
pub const ASYMPTOTIC_MIN_ARGUMENT: f64 = 10.0;
/// `|phi|` at or below which `v` is not evaluated.
pub const NODE_GUARD: f64 = 1e-12;

/// Leading large-argument form of `phi_mn(r)`.
pub fn phi_asymptotic(state: &RadialEigenstate, r: f64) -> Result<f64> {
    let mode = state.mode();
    let radius = state.config().radius;
    if !(r > 0.0 && r <= radius) {
        return Err(Error::domain("radius", r));
    }
    let x = mode.gamma * r / radius;
    if x < ASYMPTOTIC_MIN_ARGUMENT {
        return Err(Error::domain("gamma r / R in asymptotic form", x));
    }
    let shift = mode.kinetic.abs() * FRAC_PI_2 + FRAC_PI_4;
    let edge = libm::sin(mode.gamma - shift).abs();
    Ok(libm::cos(x - shift) / (libm::sqrt(radius * PI * r) * edge))
}

/// `r_k = (R / gamma) (k + M/2 + 1/4) pi`.
pub fn extremum_position(gamma: f64, kinetic: f64, radius: f64, k: i64) -> f64 {
    radius / gamma * (k as f64 + 0.5 * kinetic + 0.25) * PI
}

/// Extremum positions of the first state lying strictly between the inner
/// cutoff and the rim.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct ExtremumGrid {
    pub pair: DegeneratePair,
    pub inner: f64,
    pub k_min: i64,
    pub k_max: i64,
    pub positions: Vec<f64>,
}

impl ExtremumGrid {
    pub fn r_kmax(&self) -> f64 {
        *self.positions.last().expect("grid is never empty")
    }
}

pub fn extremum_grid(sys: &DegenerateSystem, inner: f64) -> Result<ExtremumGrid> {
    let radius = sys.config().radius;
    if !(inner > 0.0 && inner < radius) {
        return Err(Error::domain("inner cutoff", inner));
    }
    let pair = *sys.pair();
    let (gamma, m) = (pair.gamma_shared, pair.kinetic);
    let offset = 0.5 * m + 0.25;
    let k_min = libm::floor(gamma / PI * inner / radius - offset) as i64 + 1;
    let k_max = libm::ceil(gamma / PI - offset) as i64 - 1;
    if k_min > k_max {
        return Err(Error::EmptyGrid { k_min, k_max });
    }
    let positions = (k_min..=k_max)
        .map(|k| extremum_position(gamma, m, radius, k))
        .collect();
    Ok(ExtremumGrid {
        pair,
        inner,
        k_min,
        k_max,
        positions,
    })
}

fn ratio(first: f64, second: f64, r: f64) -> Result<f64> {
    if first.abs() <= NODE_GUARD {
        return Err(Error::NodeSingularity { r });
    }
    let q = second / first;
    Ok(q * q)
}

/// `v(r) = phi'^2(r) / phi^2(r)`.
pub fn v_ratio(sys: &DegenerateSystem, r: f64) -> Result<f64> {
    let (a, b) = sys.states();
    ratio(a.phi(r)?, b.phi(r)?, r)
}

/// `v(r)` with the first radial function replaced by [`phi_asymptotic`].
pub fn v_ratio_asymptotic(sys: &DegenerateSystem, r: f64) -> Result<f64> {
    let (a, b) = sys.states();
    ratio(phi_asymptotic(a, r)?, b.phi(r)?, r)
}

/// `f(v) = v (1 - sqrt(1 + 1/v))`, evaluated as `-1 / (1 + sqrt(1 + 1/v))`.
/// Decreases from `f(0) = 0` towards `-1/2`.
pub fn backflow_factor(v: f64) -> Result<f64> {
    if !(v >= 0.0) {
        return Err(Error::domain("v", v));
    }
    if v == 0.0 {
        return Ok(0.0);
    }
    Ok(-1.0 / (1.0 + libm::sqrt(1.0 + 1.0 / v)))
}

/// `(hbar M phi^2 / (2 mu r)) (1 + u f(v))`, an upper bound on the minimal
/// local current wherever `v > 0`.
pub fn current_bound(sys: &DegenerateSystem, r: f64) -> Result<f64> {
    let cfg = sys.config();
    let pair = sys.pair();
    let phi = sys.states().0.phi(r)?;
    let f = backflow_factor(v_ratio(sys, r)?)?;
    Ok(cfg.hbar * pair.kinetic * phi * phi / (2.0 * cfg.mu * r) * (1.0 + pair.u * f))
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct ConjectureRow {
    pub candidate: DegenerateCandidate,
    pub beta: f64,
    pub u: f64,
    pub k_max: i64,
    pub r_kmax: f64,
    pub v_at_rkmax: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureReport {
    pub rows: Vec<ConjectureRow>,
    pub failures: Vec<(DegenerateCandidate, Error)>,
    pub violations: usize,
    /// Whether `v(r_kmax)` increases with `n` over the evaluated rows.
    pub increasing_in_n: bool,
}

fn conjecture_row(
    pair: &DegeneratePair,
    units: &PhysicalConfig,
    inner: f64,
) -> Result<ConjectureRow> {
    let sys = DegenerateSystem::new(*pair, units)?;
    let grid = extremum_grid(&sys, inner * units.radius)?;
    let r_kmax = grid.r_kmax();
    let v = v_ratio(&sys, r_kmax)?;
    Ok(ConjectureRow {
        candidate: pair.candidate,
        beta: pair.beta,
        u: pair.u,
        k_max: grid.k_max,
        r_kmax,
        v_at_rkmax: v,
        holds: v >= 1.0,
    })
}

/// Evaluates `v(r_kmax)` for every pair. `inner` is the cutoff in units of `R`.
/// Rows with `v < 1` are counted, never rejected.
pub fn conjecture_check(
    pairs: &[DegeneratePair],
    units: &PhysicalConfig,
    inner: f64,
) -> ConjectureReport {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for pair in pairs {
        match conjecture_row(pair, units, inner) {
            Ok(row) => rows.push(row),
            Err(e) => failures.push((pair.candidate, e)),
        }
    }
    let mut by_n: Vec<&ConjectureRow> = rows.iter().collect();
    by_n.sort_by_key(|r| r.candidate.n);
    let increasing_in_n = by_n.windows(2).all(|w| w[1].v_at_rkmax > w[0].v_at_rkmax);
    let violations = rows.iter().filter(|r| !r.holds).count();
    ConjectureReport {
        rows,
        failures,
        violations,
        increasing_in_n,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct ScalingRow {
    pub candidate: DegenerateCandidate,
    pub u: f64,
    pub r_kmax: f64,
    pub v_at_rkmax: f64,
    /// `(mu R^3 / hbar) min j_a(r_kmax)`.
    pub min_ja_scaled: f64,
    /// The bound of [`current_bound`] at `r_kmax`, scaled the same way.
    pub bound_rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport {
    pub rows: Vec<ScalingRow>,
    /// `min_ja_scaled` strictly decreases as `u` grows.
    pub strictly_decreasing: bool,
    /// `min_ja_scaled < bound_rhs` on every row.
    pub bound_holds: bool,
}

/// Minimal current at `r_kmax` against the analytic bound, ordered by `u`.
pub fn unboundedness_scan(
    pairs: &[DegeneratePair],
    units: &PhysicalConfig,
    inner: f64,
) -> Result<ScalingReport> {
    if pairs.len() < 2 {
        return Err(Error::InvalidInput("scaling scan needs at least two pairs"));
    }
    let mut sorted = pairs.to_vec();
    sorted.sort_by(|a, b| a.u.total_cmp(&b.u));
    let mut rows = Vec::with_capacity(sorted.len());
    for pair in &sorted {
        let sys = DegenerateSystem::new(*pair, units)?;
        let r = extremum_grid(&sys, inner * units.radius)?.r_kmax();
        let scale = sys.config().current_scale();
        rows.push(ScalingRow {
            candidate: pair.candidate,
            u: pair.u,
            r_kmax: r,
            v_at_rkmax: v_ratio(&sys, r)?,
            min_ja_scaled: scale * min_local_current(&sys, r)?.value,
            bound_rhs: scale * current_bound(&sys, r)?,
        });
    }
    let strictly_decreasing = rows
        .windows(2)
        .all(|w| w[1].min_ja_scaled < w[0].min_ja_scaled);
    let bound_holds = rows.iter().all(|r| r.min_ja_scaled < r.bound_rhs);
    Ok(ScalingReport {
        rows,
        strictly_decreasing,
        bound_holds,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct FigureMarker {
    pub k: i64,
    pub r_over_r: f64,
    pub min_ja_scaled: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureCurve {
    pub candidate: DegenerateCandidate,
    /// `(r / R, (mu R^3 / hbar) min j_a)` on a uniform grid over `(0, 1]`.
    pub points: Vec<(f64, f64)>,
    /// `r_{k_max - 1}` and `r_{k_max}`, when positive.
    pub markers: Vec<FigureMarker>,
}

pub const MIN_FIGURE_SAMPLES: usize = 100;

/// Scaled minimal-current curves for the given pairs.
pub fn figure_data(
    pairs: &[DegeneratePair],
    units: &PhysicalConfig,
    samples: usize,
) -> Result<Vec<FigureCurve>> {
    if samples < MIN_FIGURE_SAMPLES {
        return Err(Error::InvalidInput("figure needs at least 100 samples"));
    }
    pairs
        .iter()
        .map(|pair| figure_curve(pair, units, samples))
        .collect()
}

fn figure_curve(
    pair: &DegeneratePair,
    units: &PhysicalConfig,
    samples: usize,
) -> Result<FigureCurve> {
    let sys = DegenerateSystem::new(*pair, units)?;
    let cfg = sys.config();
    let radius = cfg.radius;
    let scale = cfg.current_scale();
    let value = |x: f64| -> Result<f64> { Ok(scale * min_local_current(&sys, x * radius)?.value) };

    let points = (1..=samples)
        .map(|i| {
            let x = i as f64 / samples as f64;
            value(x).map(|v| (x, v))
        })
        .collect::<Result<Vec<_>>>()?;

    let k_max = libm::ceil(pair.gamma_shared / PI - 0.5 * pair.kinetic - 0.25) as i64 - 1;
    let mut markers = Vec::new();
    for k in [k_max - 1, k_max] {
        let x = extremum_position(pair.gamma_shared, pair.kinetic, 1.0, k);
        if x > 0.0 && x <= 1.0 {
            markers.push(FigureMarker {
                k,
                r_over_r: x,
                min_ja_scaled: value(x)?,
            });
        }
    }
    Ok(FigureCurve {
        candidate: pair.candidate,
        points,
        markers,
    })
}

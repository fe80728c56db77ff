//! Flux values at which two eigenstates share one energy.
//!
//! For a candidate `(m, n, m', n')` the residual
//! `g(beta) = gamma_{m - beta, n} - gamma_{m' - beta, n'}` is scanned on a
//! uniform grid, and every sign change is refined with Brent's method.

use alloc::vec::Vec;
use core::ops::RangeInclusive;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::bessel::{bessel_zero, Order, ZeroIndex};
use crate::eigensystem::{make_mode, PhysicalConfig, RadialEigenstate};
use crate::error::{Error, Result};
use crate::numerics::{find_root_counted, Bracket};

pub const SCAN_POINTS: usize = 64;
pub const SCAN_INSET: f64 = 1e-6;
pub const BETA_TOL: f64 = 1e-13;
/// Zero residual above which [`verify_pair`] flags a pair.
pub const RESIDUAL_FLAG: f64 = 1e-10;
pub const DEFAULT_M_PRIME_CAP: i64 = 600;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct DegenerateCandidate {
    pub m: i64,
    pub n: u32,
    pub m_prime: i64,
    pub n_prime: u32,
}

impl DegenerateCandidate {
    /// Requires `m < m'`, which loses no generality.
    pub fn new(m: i64, n: u32, m_prime: i64, n_prime: u32) -> Result<Self> {
        if n == 0 || n_prime == 0 {
            return Err(Error::InvalidInput("radial quantum numbers start at 1"));
        }
        if m >= m_prime {
            return Err(Error::InvalidInput("candidate requires m < m'"));
        }
        Ok(DegenerateCandidate {
            m,
            n,
            m_prime,
            n_prime,
        })
    }

    /// Open interval of flux values keeping both kinetic momenta positive.
    pub fn beta_domain(&self) -> Option<(f64, f64)> {
        let upper = self.m.min(self.m_prime);
        (upper > 0).then_some((0.0, upper as f64))
    }

    /// `g(beta)`, the difference of the two Bessel zeros.
    pub fn residual(&self, beta: f64) -> Result<f64> {
        let (a, b) = self.zeros(beta)?;
        Ok(a - b)
    }

    fn zeros(&self, beta: f64) -> Result<(f64, f64)> {
        let a = bessel_zero(Order::new(self.m as f64 - beta)?, ZeroIndex::new(self.n)?)?;
        let b = bessel_zero(
            Order::new(self.m_prime as f64 - beta)?,
            ZeroIndex::new(self.n_prime)?,
        )?;
        Ok((a, b))
    }
}

/// A solved candidate. `u` is always derived from `beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct DegeneratePair {
    pub candidate: DegenerateCandidate,
    pub beta: f64,
    pub gamma_shared: f64,
    #[cfg_attr(feature = "serde", serde(rename = "M"))]
    pub kinetic: f64,
    #[cfg_attr(feature = "serde", serde(rename = "M_prime"))]
    pub kinetic_prime: f64,
    pub u: f64,
    pub residual: f64,
    pub iterations: u32,
}

impl DegeneratePair {
    /// Builds the pair at a given flux, recomputing zeros, `M`, `M'` and `u`.
    pub fn at_beta(candidate: DegenerateCandidate, beta: f64, iterations: u32) -> Result<Self> {
        let kinetic = candidate.m as f64 - beta;
        let kinetic_prime = candidate.m_prime as f64 - beta;
        if !(kinetic > 0.0 && kinetic_prime > 0.0) {
            return Err(Error::InvalidMode {
                m: candidate.m,
                beta,
            });
        }
        let (a, b) = candidate.zeros(beta)?;
        Ok(DegeneratePair {
            candidate,
            beta,
            gamma_shared: a,
            kinetic,
            kinetic_prime,
            u: kinetic_prime / kinetic,
            residual: a - b,
            iterations,
        })
    }

    /// The physical configuration with this pair's flux and the given units.
    pub fn config(&self, units: &PhysicalConfig) -> PhysicalConfig {
        units.with_beta(self.beta)
    }

    /// The two degenerate radial eigenstates, `(m, n)` first.
    pub fn states(&self, units: &PhysicalConfig) -> Result<(RadialEigenstate, RadialEigenstate)> {
        let cfg = self.config(units);
        let c = &self.candidate;
        let first = RadialEigenstate::new(make_mode(c.m, c.n, &cfg)?, cfg)?;
        let second = RadialEigenstate::new(make_mode(c.m_prime, c.n_prime, &cfg)?, cfg)?;
        Ok((first, second))
    }
}

/// Flux values of the scan grid, inset from both ends of the domain.
pub fn scan_grid(lo: f64, hi: f64) -> Vec<f64> {
    let (a, b) = (lo + SCAN_INSET, hi - SCAN_INSET);
    let last = (SCAN_POINTS - 1) as f64;
    (0..SCAN_POINTS)
        .map(|i| a + (b - a) * i as f64 / last)
        .collect()
}

/// Every degenerate flux of `c` found by the scan, in increasing order.
pub fn solve_beta_all(c: DegenerateCandidate, tol: f64) -> Result<Vec<DegeneratePair>> {
    if !(tol > 0.0) {
        return Err(Error::domain("beta tolerance", tol));
    }
    let Some((lo, hi)) = c.beta_domain() else {
        return Ok(Vec::new());
    };
    let grid = scan_grid(lo, hi);
    let values = grid
        .iter()
        .map(|&b| c.residual(b))
        .collect::<Result<Vec<_>>>()?;

    let mut pairs = Vec::new();
    for i in 0..grid.len() - 1 {
        let (g0, g1) = (values[i], values[i + 1]);
        if g0 == 0.0 {
            pairs.push(DegeneratePair::at_beta(c, grid[i], 0)?);
            continue;
        }
        if g0 * g1 >= 0.0 {
            continue;
        }
        let bracket = Bracket::new(grid[i], grid[i + 1], g0, g1)?;
        let mut failure = None;
        let root = find_root_counted(
            |b| match c.residual(b) {
                Ok(g) => g,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            },
            bracket,
            tol,
        );
        if failure.is_some() {
            return Err(Error::Solver("zero evaluation failed during refinement"));
        }
        let root = root.map_err(|_| Error::Solver("refinement did not converge"))?;
        pairs.push(DegeneratePair::at_beta(c, root.x, root.iterations)?);
    }
    if values[grid.len() - 1] == 0.0 {
        pairs.push(DegeneratePair::at_beta(c, grid[grid.len() - 1], 0)?);
    }
    Ok(pairs)
}

/// The smallest degenerate flux of `c`, if the scan finds one.
pub fn solve_beta(c: DegenerateCandidate, tol: f64) -> Result<Option<DegeneratePair>> {
    Ok(solve_beta_all(c, tol)?.into_iter().next())
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct PairReport {
    pub gamma: f64,
    pub gamma_prime: f64,
    pub zero_residual: f64,
    pub energy: f64,
    pub energy_prime: f64,
    /// `|E - E'| / E`.
    pub energy_residual: f64,
    pub u_recomputed: f64,
    pub flagged: bool,
}

/// Recomputes both zeros and energies from the pair's flux.
pub fn verify_pair(p: &DegeneratePair, units: &PhysicalConfig) -> Result<PairReport> {
    let cfg = p.config(units);
    let c = &p.candidate;
    let a = make_mode(c.m, c.n, &cfg)?;
    let b = make_mode(c.m_prime, c.n_prime, &cfg)?;
    let energy = crate::eigensystem::energy(&a, &cfg).value;
    let energy_prime = crate::eigensystem::energy(&b, &cfg).value;
    let zero_residual = a.gamma - b.gamma;
    Ok(PairReport {
        gamma: a.gamma,
        gamma_prime: b.gamma,
        zero_residual,
        energy,
        energy_prime,
        energy_residual: (energy - energy_prime).abs() / energy,
        u_recomputed: b.kinetic / a.kinetic,
        flagged: !(zero_residual.abs() < RESIDUAL_FLAG),
    })
}

/// Parameters of a catalog sweep over `n` and `m'` at fixed `m`, `n'`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct SweepSpec {
    pub m: i64,
    pub n_prime: u32,
    pub n_range: RangeInclusive<u32>,
    pub m_prime_range: RangeInclusive<i64>,
    pub tol: f64,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            m: 1,
            n_prime: 1,
            n_range: 3..=164,
            m_prime_range: 2..=DEFAULT_M_PRIME_CAP,
            tol: BETA_TOL,
        }
    }
}

fn zero(nu: f64, n: u32) -> Result<f64> {
    bessel_zero(Order::new(nu)?, ZeroIndex::new(n)?)
}

/// Smallest `k` in `[lo, hi]` with `pred(k)`, assuming `pred` is monotone.
fn partition_point(lo: i64, hi: i64, mut pred: impl FnMut(i64) -> Result<bool>) -> Result<i64> {
    let (mut a, mut b) = (lo, hi + 1);
    while a < b {
        let mid = a + (b - a) / 2;
        if pred(mid)? {
            b = mid;
        } else {
            a = mid + 1;
        }
    }
    Ok(a)
}

/// Values of `m'` for which `g` can change sign at all.
///
/// As the flux runs over `(0, m)` the first zero sweeps
/// `[gamma_{0,n}, gamma_{m,n}]` and the second `[gamma_{m'-m,n'}, gamma_{m',n'}]`;
/// zeros grow with order, so only `m'` whose ranges overlap survive.
pub fn candidate_m_primes(
    m: i64,
    n: u32,
    n_prime: u32,
    range: RangeInclusive<i64>,
) -> Result<Vec<i64>> {
    let lo = (*range.start()).max(m + 1);
    let hi = *range.end();
    if m < 1 || lo > hi {
        return Ok(Vec::new());
    }
    let low_edge = zero(0.0, n)?;
    let high_edge = zero(m as f64, n)?;
    let first = partition_point(lo, hi, |k| Ok(zero(k as f64, n_prime)? > low_edge))?;
    let past = partition_point(lo, hi, |k| Ok(zero((k - m) as f64, n_prime)? >= high_edge))?;
    Ok((first..past).collect())
}

/// All candidates of a sweep, in `(n, m')` order.
pub fn sweep_candidates(spec: &SweepSpec) -> Result<Vec<DegenerateCandidate>> {
    let mut out = Vec::new();
    for n in spec.n_range.clone() {
        for mp in candidate_m_primes(spec.m, n, spec.n_prime, spec.m_prime_range.clone())? {
            out.push(DegenerateCandidate::new(spec.m, n, mp, spec.n_prime)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepOutcome {
    pub pairs: Vec<DegeneratePair>,
    pub failures: Vec<(DegenerateCandidate, Error)>,
}

/// Sequential catalog sweep. A failing candidate is recorded and skipped.
pub fn sweep_catalog(spec: &SweepSpec) -> Result<SweepOutcome> {
    let mut outcome = SweepOutcome::default();
    for c in sweep_candidates(spec)? {
        match solve_beta_all(c, spec.tol) {
            Ok(pairs) => outcome.pairs.extend(pairs),
            Err(e) => outcome.failures.push((c, e)),
        }
    }
    Ok(outcome)
}

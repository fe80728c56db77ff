//! Parallel catalog sweep. Candidates are solved on a rayon pool and the
//! results come back in `(n, m')` order whatever the completion order.

use backflow_core::degeneracy::{
    candidate_m_primes, solve_beta_all, DegenerateCandidate, DegeneratePair, SweepSpec,
};
use log::{debug, warn};
use rayon::prelude::*;

use crate::catalog::{unix_now, FailedCandidate, Sidecar};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub pairs: Vec<DegeneratePair>,
    pub failures: Vec<FailedCandidate>,
    pub sidecar: Sidecar,
}

fn candidates_for(
    spec: &SweepSpec,
    n: u32,
) -> std::result::Result<Vec<DegenerateCandidate>, FailedCandidate> {
    let fail = |e: backflow_core::Error| FailedCandidate {
        candidate: DegenerateCandidate {
            m: spec.m,
            n,
            m_prime: 0,
            n_prime: spec.n_prime,
        },
        error: e.to_string(),
    };
    let m_primes =
        candidate_m_primes(spec.m, n, spec.n_prime, spec.m_prime_range.clone()).map_err(fail)?;
    m_primes
        .into_iter()
        .map(|mp| DegenerateCandidate::new(spec.m, n, mp, spec.n_prime).map_err(fail))
        .collect()
}

/// Runs the sweep on `threads` workers. Per-candidate failures are logged
/// and recorded; they never abort the sweep.
pub fn run_sweep(spec: &SweepSpec, threads: usize) -> Result<SweepResult> {
    let started_at = unix_now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()?;
    let (pairs, failures) = pool.install(|| {
        let ns: Vec<u32> = spec.n_range.clone().collect();
        let per_n: Vec<_> = ns.par_iter().map(|&n| candidates_for(spec, n)).collect();

        let mut failures = Vec::new();
        let mut candidates = Vec::new();
        for entry in per_n {
            match entry {
                Ok(c) => candidates.extend(c),
                Err(f) => failures.push(f),
            }
        }
        debug!("{} candidates after prefilter", candidates.len());

        let solved: Vec<_> = candidates
            .par_iter()
            .map(|&c| (c, solve_beta_all(c, spec.tol)))
            .collect();
        let mut pairs = Vec::new();
        for (c, outcome) in solved {
            match outcome {
                Ok(found) => pairs.extend(found),
                Err(e) => {
                    warn!("candidate {c:?} failed: {e}");
                    failures.push(FailedCandidate {
                        candidate: c,
                        error: e.to_string(),
                    });
                }
            }
        }
        (pairs, failures)
    });
    let sidecar = Sidecar::new(spec.clone(), threads, started_at, &pairs, failures.clone());
    Ok(SweepResult {
        pairs,
        failures,
        sidecar,
    })
}

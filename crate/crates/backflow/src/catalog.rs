//! Catalog persistence: one CSV row per solved pair plus a JSON sidecar with
//! solver metadata.

use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use backflow_core::degeneracy::{DegenerateCandidate, DegeneratePair, SweepSpec};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// CSV header, in column order.
pub const COLUMNS: [&str; 10] = [
    "m", "n", "m_prime", "n_prime", "beta", "gamma", "M", "M_prime", "u", "residual",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub m: i64,
    pub n: u32,
    pub m_prime: i64,
    pub n_prime: u32,
    pub beta: f64,
    pub gamma: f64,
    #[serde(rename = "M")]
    pub kinetic: f64,
    #[serde(rename = "M_prime")]
    pub kinetic_prime: f64,
    pub u: f64,
    pub residual: f64,
}

impl CatalogRecord {
    pub fn candidate(&self) -> DegenerateCandidate {
        DegenerateCandidate {
            m: self.m,
            n: self.n,
            m_prime: self.m_prime,
            n_prime: self.n_prime,
        }
    }

    /// Rebuilds the pair from the stored flux; zeros, `M` and `u` are recomputed.
    pub fn to_pair(&self) -> Result<DegeneratePair> {
        let c = DegenerateCandidate::new(self.m, self.n, self.m_prime, self.n_prime)?;
        Ok(DegeneratePair::at_beta(c, self.beta, 0)?)
    }
}

impl From<&DegeneratePair> for CatalogRecord {
    fn from(p: &DegeneratePair) -> Self {
        let c = p.candidate;
        CatalogRecord {
            m: c.m,
            n: c.n,
            m_prime: c.m_prime,
            n_prime: c.n_prime,
            beta: p.beta,
            gamma: p.gamma_shared,
            kinetic: p.kinetic,
            kinetic_prime: p.kinetic_prime,
            u: p.u,
            residual: p.residual,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverRow {
    pub m: i64,
    pub n: u32,
    pub m_prime: i64,
    pub n_prime: u32,
    pub iterations: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailedCandidate {
    pub candidate: DegenerateCandidate,
    pub error: String,
}

/// Metadata written next to the CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    /// Seconds since the Unix epoch.
    pub generated_at: u64,
    pub started_at: u64,
    pub threads: usize,
    pub spec: SweepSpec,
    pub rows: Vec<SolverRow>,
    pub failures: Vec<FailedCandidate>,
}

pub fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

impl Sidecar {
    pub fn new(
        spec: SweepSpec,
        threads: usize,
        started_at: u64,
        pairs: &[DegeneratePair],
        failures: Vec<FailedCandidate>,
    ) -> Self {
        let rows = pairs
            .iter()
            .map(|p| {
                let c = p.candidate;
                SolverRow {
                    m: c.m,
                    n: c.n,
                    m_prime: c.m_prime,
                    n_prime: c.n_prime,
                    iterations: p.iterations,
                }
            })
            .collect();
        Sidecar {
            generated_at: unix_now(),
            started_at,
            threads,
            spec,
            rows,
            failures,
        }
    }
}

pub fn write_csv<W: Write>(out: W, records: &[CatalogRecord]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(COLUMNS)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<CatalogRecord>> {
    let mut reader = csv::Reader::from_reader(input);
    let headers = reader.headers()?.clone();
    if headers.iter().ne(COLUMNS) {
        return Err(Error::Format(format!(
            "unexpected catalog header: {}",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    reader
        .deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}

pub fn read_catalog(path: &Path) -> Result<Vec<CatalogRecord>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv(file)
}

/// `catalog.csv` -> `catalog.json`.
pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("json")
}

/// Writes the CSV and its sidecar.
pub fn write_catalog(path: &Path, records: &[CatalogRecord], sidecar: &Sidecar) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv(file, records)?;
    let side = sidecar_path(path);
    let mut file = File::create(&side).map_err(|e| Error::io(&side, e))?;
    serde_json::to_writer_pretty(&mut file, sidecar)?;
    writeln!(file).map_err(|e| Error::io(&side, e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record() -> CatalogRecord {
        CatalogRecord {
            m: 1,
            n: 3,
            m_prime: 6,
            n_prime: 1,
            beta: 0.6911693467934289,
            gamma: 9.132904796635659,
            kinetic: 0.3088306532065711,
            kinetic_prime: 5.308830653206571,
            u: 17.190102724859997,
            residual: 0.0,
        }
    }

    #[test]
    fn header_and_round_trip() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[record()]).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("m,n,m_prime,n_prime,beta,gamma,M,M_prime,u,residual\n"));
        assert!(!text.contains('\r'));
        assert_eq!(read_csv(buf.as_slice()).unwrap(), vec![record()]);
    }

    #[test]
    fn rejects_foreign_header() {
        let text = "a,b\n1,2\n";
        assert!(matches!(read_csv(text.as_bytes()), Err(Error::Format(_))));
    }

    #[test]
    fn record_rebuilds_pair() {
        let pair = record().to_pair().unwrap();
        assert!((pair.u - record().u).abs() < 1e-12);
        assert!(pair.residual.abs() < 1e-10);
    }
}

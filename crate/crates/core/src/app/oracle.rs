use rayon::prelude::*;
use serde::Serialize;

use super::config::OutputFormat;
use super::exit;
use super::format::sig9;
use crate::cartan::search_unitaries;
use crate::criteria::{f_spectral, horodecki_m};
use crate::random::{hilbert_schmidt_state, random_bell_diagonal, stream_rng};

/// Allowed excess of an observed `M` over `F`.
pub const ORACLE_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleRecord {
    pub index: usize,
    #[serde(rename = "F")]
    pub f: f64,
    #[serde(rename = "M")]
    pub m: f64,
    pub sampled_max: f64,
    pub refined_max: Option<f64>,
    pub violation: bool,
}

impl OracleRecord {
    pub fn best(&self) -> f64 {
        self.refined_max
            .map_or(self.sampled_max, |r| r.max(self.sampled_max))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleSummary {
    pub states: usize,
    pub unitaries: usize,
    pub seed: u64,
    pub bell_diagonal: bool,
    pub refine: bool,
    pub violations: usize,
    /// Largest `best M - F` observed (negative when every search stayed below `F`).
    pub max_excess: f64,
    /// Largest `F - best M`, how far the search fell short of the supremum.
    pub max_shortfall: f64,
    pub records: Vec<OracleRecord>,
}

impl OracleSummary {
    pub fn exit_code(&self) -> i32 {
        if self.violations == 0 {
            0
        } else {
            exit::CHECK_FAILED
        }
    }
}

fn search_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Randomized check that no global unitary pushes `M` above `F`.
pub fn run_oracle(
    states: usize,
    unitaries: usize,
    seed: u64,
    bell_diagonal: bool,
    refine: bool,
) -> OracleSummary {
    let records: Vec<OracleRecord> = (0..states)
        .into_par_iter()
        .map(|index| {
            let mut rng = stream_rng(seed, index as u64);
            let rho = if bell_diagonal {
                random_bell_diagonal(&mut rng)
            } else {
                hilbert_schmidt_state(&mut rng)
            };
            let f = f_spectral(&rho.spectrum());
            let s = search_unitaries(&rho, unitaries, refine, search_seed(seed, index));
            let best = s.best();
            OracleRecord {
                index,
                f,
                m: horodecki_m(&rho),
                sampled_max: s.sampled_max,
                refined_max: s.refined_max,
                violation: best > f + ORACLE_SLACK,
            }
        })
        .collect();
    let max_excess = records
        .iter()
        .map(|r| r.best() - r.f)
        .fold(f64::NEG_INFINITY, f64::max);
    let max_shortfall = records
        .iter()
        .map(|r| r.f - r.best())
        .fold(f64::NEG_INFINITY, f64::max);
    OracleSummary {
        states,
        unitaries,
        seed,
        bell_diagonal,
        refine,
        violations: records.iter().filter(|r| r.violation).count(),
        max_excess,
        max_shortfall,
        records,
    }
}

pub fn render_oracle(s: &OracleSummary, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(s).expect("summary serializes") + "\n",
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["index", "F", "M", "sampled_max", "refined_max", "violation"])
                .expect("in-memory write");
            for r in &s.records {
                w.write_record([
                    r.index.to_string(),
                    sig9(r.f),
                    sig9(r.m),
                    sig9(r.sampled_max),
                    r.refined_max.map(sig9).unwrap_or_default(),
                    r.violation.to_string(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
        }
        OutputFormat::Table => {
            let mut out = format!(
                "states {}  unitaries {}  seed {}  refine {}  bell-diagonal {}\n",
                s.states, s.unitaries, s.seed, s.refine, s.bell_diagonal
            );
            out += &format!(
                "{:>6} {:>12} {:>12} {:>12} {:>12}  violation\n",
                "index", "F", "M", "sampled", "refined"
            );
            for r in &s.records {
                out += &format!(
                    "{:>6} {:>12} {:>12} {:>12} {:>12}  {}\n",
                    r.index,
                    sig9(r.f),
                    sig9(r.m),
                    sig9(r.sampled_max),
                    r.refined_max.map(sig9).unwrap_or_else(|| "-".into()),
                    r.violation
                );
            }
            out += &format!(
                "violations {}  max excess {}  max shortfall {}\n",
                s.violations,
                sig9(s.max_excess),
                sig9(s.max_shortfall)
            );
            out
        }
    }
}

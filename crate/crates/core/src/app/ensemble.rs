use rayon::prelude::*;
use serde::Serialize;

use super::config::OutputFormat;
use super::exit;
use super::format::sig9;
use crate::criteria::{f_spectral, horodecki_m};
use crate::purity::purity;
use crate::random::{hilbert_schmidt_state, stream_rng};

/// Monte Carlo fractions over the Hilbert-Schmidt ensemble. These are
/// sample estimates, not exact volumes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnsembleSummary {
    pub samples: usize,
    pub seed: u64,
    pub absolutely_local: f64,
    pub bell_local: f64,
    pub purity_at_most_half: f64,
    pub purity_above_five_eighths: f64,
    /// Samples with purity `<= 1/2` that are not absolutely local.
    pub low_purity_violations: usize,
    /// Absolutely local samples with purity `> 5/8`.
    pub high_purity_violations: usize,
}

impl EnsembleSummary {
    pub fn exit_code(&self) -> i32 {
        if self.low_purity_violations + self.high_purity_violations == 0 {
            0
        } else {
            exit::CHECK_FAILED
        }
    }
}

#[derive(Clone, Copy, Default)]
struct Counts {
    al: usize,
    local: usize,
    low: usize,
    high: usize,
    low_violation: usize,
    high_violation: usize,
}

impl std::ops::Add for Counts {
    type Output = Counts;
    fn add(self, o: Counts) -> Counts {
        Counts {
            al: self.al + o.al,
            local: self.local + o.local,
            low: self.low + o.low,
            high: self.high + o.high,
            low_violation: self.low_violation + o.low_violation,
            high_violation: self.high_violation + o.high_violation,
        }
    }
}

pub fn run_ensemble(samples: usize, seed: u64) -> EnsembleSummary {
    let counts = (0..samples)
        .into_par_iter()
        .map(|i| {
            let rho = hilbert_schmidt_state(&mut stream_rng(seed, i as u64));
            let al = f_spectral(&rho.spectrum()) <= 1.0;
            let local = horodecki_m(&rho) <= 1.0;
            let p = purity(&rho);
            let low = p <= 0.5;
            let high = p > 0.625;
            Counts {
                al: al as usize,
                local: local as usize,
                low: low as usize,
                high: high as usize,
                low_violation: (low && !al) as usize,
                high_violation: (al && high) as usize,
            }
        })
        .reduce(Counts::default, |a, b| a + b);
    let frac = |n: usize| n as f64 / samples.max(1) as f64;
    EnsembleSummary {
        samples,
        seed,
        absolutely_local: frac(counts.al),
        bell_local: frac(counts.local),
        purity_at_most_half: frac(counts.low),
        purity_above_five_eighths: frac(counts.high),
        low_purity_violations: counts.low_violation,
        high_purity_violations: counts.high_violation,
    }
}

pub fn render_ensemble(s: &EnsembleSummary, format: OutputFormat) -> String {
    let rows = [
        ("samples", s.samples.to_string()),
        ("seed", s.seed.to_string()),
        ("absolutely_local", sig9(s.absolutely_local)),
        ("bell_local", sig9(s.bell_local)),
        ("purity_at_most_half", sig9(s.purity_at_most_half)),
        (
            "purity_above_five_eighths",
            sig9(s.purity_above_five_eighths),
        ),
        ("low_purity_violations", s.low_purity_violations.to_string()),
        (
            "high_purity_violations",
            s.high_purity_violations.to_string(),
        ),
    ];
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(s).expect("summary serializes") + "\n",
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["field", "value"]).expect("in-memory write");
            for (k, v) in rows {
                w.write_record([k, v.as_str()]).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
        }
        OutputFormat::Table => {
            let mut out = String::from("Hilbert-Schmidt ensemble, Monte Carlo estimate\n");
            for (k, v) in rows {
                out += &format!("{k:<26}  {v}\n");
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sandwich_holds_and_is_reproducible() {
        let a = run_ensemble(2000, 3);
        assert_eq!(a.exit_code(), 0);
        assert_eq!(a, run_ensemble(2000, 3));
        assert!(a.purity_at_most_half <= a.absolutely_local);
        assert!(a.absolutely_local <= 1.0 - a.purity_above_five_eighths);
        assert!(a.absolutely_local <= a.bell_local);
    }
}

use std::path::Path;

use serde::Serialize;

use super::config::{OutputFormat, RunConfig};
use super::exit;
use crate::criteria::{
    bell_diag_criterion, comp_diag_criterion, trace_sufficient, CompDiagOutcome, LocalityReport,
    TraceOutcome, Verdict,
};
use crate::optim::TorusSearch;
use crate::purity::{classify_ball, BallClassification};
use crate::qmat::state_file::read_state;
use crate::qmat::{BlochForm, DensityMatrix, Spectrum};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BellDiagCheck {
    pub verdict: Verdict,
    pub max: f64,
}

/// Everything `analyze` reports about one state.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    #[serde(flatten)]
    pub locality: LocalityReport,
    pub spectrum: Spectrum,
    pub bloch: BlochForm,
    pub ball: BallClassification,
    /// Present when the state is Bell-diagonal.
    pub bell_diagonal: Option<BellDiagCheck>,
    /// Present when the state is diagonal in the computational basis.
    pub computational_diagonal: Option<CompDiagOutcome>,
    pub trace_test: TraceOutcome,
}

impl AnalysisReport {
    pub fn exit_code(&self) -> i32 {
        exit::for_verdict(self.locality.absolutely_local)
    }
}

pub fn analyze_state(rho: &DensityMatrix, config: &RunConfig) -> AnalysisReport {
    let eps = config.epsilon;
    let bloch = rho.to_bloch();
    let search = TorusSearch {
        grid: config.grid,
        ..TorusSearch::default()
    };
    AnalysisReport {
        locality: LocalityReport::new(rho, eps),
        spectrum: rho.spectrum(),
        bloch,
        ball: classify_ball(rho, eps),
        bell_diagonal: bell_diag_criterion(&bloch, eps)
            .ok()
            .map(|(verdict, max)| BellDiagCheck { verdict, max }),
        computational_diagonal: comp_diag_criterion(&bloch, &search, eps).ok(),
        trace_test: trace_sufficient(rho, &search),
    }
}

pub fn analyze_file(path: &Path, config: &RunConfig) -> Result<AnalysisReport> {
    let rho = read_state(path)?;
    Ok(analyze_state(&rho, config))
}

/// Flat `(field, value)` view shared by the CSV and table renderings.
fn fields(r: &AnalysisReport) -> Vec<(String, String)> {
    let num = |x: f64| format!("{x}");
    let l = &r.locality;
    let mut out = vec![
        ("M".into(), num(l.m)),
        ("chsh_max".into(), num(l.chsh_max)),
        ("F".into(), num(l.f)),
        ("bell_local".into(), l.bell_local.to_string()),
        ("absolutely_local".into(), l.absolutely_local.to_string()),
        ("epsilon".into(), num(l.epsilon)),
    ];
    for (k, a) in r.spectrum.values().iter().enumerate() {
        out.push((format!("a{}", k + 1), num(*a)));
    }
    out.push(("purity".into(), num(r.ball.purity)));
    out.push(("distance".into(), num(r.ball.distance)));
    out.push(("zone".into(), r.ball.zone.as_str().into()));
    if let Some(b) = &r.bell_diagonal {
        out.push(("bell_diagonal.verdict".into(), b.verdict.to_string()));
        out.push(("bell_diagonal.max".into(), num(b.max)));
    }
    if let Some(c) = &r.computational_diagonal {
        out.push((
            "computational_diagonal.verdict".into(),
            c.verdict.to_string(),
        ));
        out.push(("computational_diagonal.max".into(), num(c.max)));
    }
    let trace = match r.trace_test.result {
        crate::criteria::Sufficiency::SufficientPass => "SUFFICIENT_PASS",
        crate::criteria::Sufficiency::Inconclusive => "INCONCLUSIVE",
    };
    out.push(("trace_test.result".into(), trace.into()));
    out.push(("trace_test.max_trace".into(), num(r.trace_test.max_trace)));
    out
}

pub fn render_analysis(r: &AnalysisReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(r).expect("report serializes") + "\n",
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["field", "value"]).expect("in-memory write");
            for (k, v) in fields(r) {
                w.write_record([k, v]).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
        }
        OutputFormat::Table => {
            let rows = fields(r);
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            rows.iter()
                .map(|(k, v)| format!("{k:<width$}  {v}\n"))
                .collect()
        }
    }
}

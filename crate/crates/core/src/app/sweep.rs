use std::f64::consts::FRAC_PI_4;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use super::format::sig9;
use crate::criteria::{f_spectral, LocalityReport, Verdict};
use crate::purity::{classify_ball, Zone};
use crate::qmat::DensityMatrix;
use crate::zoo::{self, bisect_threshold};
use crate::{Error, Result};

pub const BISECTION_ITERATIONS: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepFamily {
    Werner,
    Gisin,
    #[value(alias = "rho_f")]
    RhoF,
    #[value(alias = "rho_g")]
    RhoG,
}

impl SweepFamily {
    pub fn name(&self) -> &'static str {
        match self {
            SweepFamily::Werner => "werner",
            SweepFamily::Gisin => "gisin",
            SweepFamily::RhoF => "rho-f",
            SweepFamily::RhoG => "rho-g",
        }
    }

    pub fn param_name(&self) -> &'static str {
        match self {
            SweepFamily::Werner | SweepFamily::RhoG => "p",
            SweepFamily::Gisin => "lambda",
            SweepFamily::RhoF => "q",
        }
    }

    fn uses_theta(&self) -> bool {
        matches!(self, SweepFamily::Gisin | SweepFamily::RhoG)
    }

    fn state(&self, x: f64, theta: f64) -> Result<DensityMatrix> {
        match self {
            SweepFamily::Werner => zoo::werner(x),
            SweepFamily::Gisin => zoo::gisin(x, theta),
            SweepFamily::RhoF => zoo::rho_f(x),
            SweepFamily::RhoG => zoo::rho_g(x, theta),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepRowKind {
    Point,
    Threshold,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub kind: SweepRowKind,
    pub param: f64,
    pub theta: Option<f64>,
    #[serde(rename = "M")]
    pub m: f64,
    pub chsh_max: f64,
    #[serde(rename = "F")]
    pub f: f64,
    pub purity: f64,
    pub bell_local: Verdict,
    pub absolutely_local: Verdict,
    pub zone: Zone,
    /// The published filtering condition for `rho_g`; absent otherwise.
    pub filter_nonlocal: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepTable {
    pub family: SweepFamily,
    pub rows: Vec<SweepRow>,
    pub threshold: Option<f64>,
}

fn row(family: SweepFamily, kind: SweepRowKind, x: f64, theta: f64, eps: f64) -> Result<SweepRow> {
    let rho = family.state(x, theta)?;
    let l = LocalityReport::new(&rho, eps);
    let ball = classify_ball(&rho, eps);
    Ok(SweepRow {
        kind,
        param: x,
        theta: family.uses_theta().then_some(theta),
        m: l.m,
        chsh_max: l.chsh_max,
        f: l.f,
        purity: ball.purity,
        bell_local: l.bell_local,
        absolutely_local: l.absolutely_local,
        zone: ball.zone,
        filter_nonlocal: (family == SweepFamily::RhoG)
            .then(|| zoo::filter_nonlocal_rho_g(x, theta)),
    })
}

/// Evaluates the family on `steps` evenly spaced parameter values in
/// `[0, 1]` and locates the absolute-locality threshold by bisection.
///
/// The threshold is the single crossing from `F <= 1` to `F > 1`. `F` must
/// be non-decreasing on the grid from that crossing on; otherwise the sweep
/// is rejected rather than reporting an ambiguous threshold.
pub fn run_sweep(
    family: SweepFamily,
    steps: usize,
    theta: Option<f64>,
    eps: f64,
) -> Result<SweepTable> {
    if steps < 2 {
        return Err(Error::Domain {
            name: "steps",
            value: steps as f64,
            domain: ">= 2",
        });
    }
    let theta = theta.unwrap_or(FRAC_PI_4);
    let xs: Vec<f64> = (0..steps).map(|i| i as f64 / (steps - 1) as f64).collect();
    let mut rows = xs
        .par_iter()
        .map(|&x| row(family, SweepRowKind::Point, x, theta, eps))
        .collect::<Result<Vec<_>>>()?;

    let crossings: Vec<usize> = (0..steps - 1)
        .filter(|&i| rows[i].f <= 1.0 && rows[i + 1].f > 1.0)
        .collect();
    let threshold = match crossings.as_slice() {
        [] => None,
        [i] => {
            let monotone = rows[*i..].windows(2).all(|w| w[1].f >= w[0].f - 1e-12);
            if !monotone {
                return Err(Error::Domain {
                    name: "F along sweep",
                    value: xs[*i],
                    domain: "non-decreasing beyond the threshold",
                });
            }
            let f_of = |x: f64| {
                f_spectral(
                    &family
                        .state(x, theta)
                        .expect("in-range parameter")
                        .spectrum(),
                )
            };
            Some(bisect_threshold(
                f_of,
                xs[*i],
                xs[i + 1],
                BISECTION_ITERATIONS,
            ))
        }
        _ => {
            return Err(Error::Domain {
                name: "F along sweep",
                value: crossings.len() as f64,
                domain: "a single crossing of F = 1",
            })
        }
    };
    if let Some(t) = threshold {
        rows.push(row(family, SweepRowKind::Threshold, t, theta, eps)?);
    }
    Ok(SweepTable {
        family,
        rows,
        threshold,
    })
}

pub const SWEEP_HEADER: [&str; 13] = [
    "kind",
    "family",
    "param_name",
    "param",
    "theta",
    "M",
    "chsh_max",
    "F",
    "purity",
    "bell_local",
    "absolutely_local",
    "zone",
    "filter_nonlocal",
];

pub fn render_sweep_csv(table: &SweepTable) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SWEEP_HEADER).expect("in-memory write");
    for r in &table.rows {
        let kind = match r.kind {
            SweepRowKind::Point => "point",
            SweepRowKind::Threshold => "threshold",
        };
        w.write_record([
            kind.to_string(),
            table.family.name().to_string(),
            table.family.param_name().to_string(),
            sig9(r.param),
            r.theta.map(sig9).unwrap_or_default(),
            sig9(r.m),
            sig9(r.chsh_max),
            sig9(r.f),
            sig9(r.purity),
            r.bell_local.to_string(),
            r.absolutely_local.to_string(),
            r.zone.as_str().to_string(),
            r.filter_nonlocal.map(|b| b.to_string()).unwrap_or_default(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

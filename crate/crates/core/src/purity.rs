//! Purity and the Frobenius-ball picture of the absolutely local set.
//!
//! Writing `d = a - 1/4` for the deviation of the sorted spectrum from the
//! maximally mixed one, `|rho - I/4|^2 = |d|^2 = Tr(rho^2) - 1/4` and
//! `F = 2[(d1 - d4)^2 + (d2 - d3)^2]`. Two sharp inequalities bracket `F`:
//! `(8/3)|d|^2 <= F <= 4|d|^2`. Hence purity `<= 1/2` forces `F <= 1` and
//! `F <= 1` forces purity `<= 5/8`.

use rayon::prelude::*;
use serde::Serialize;

use crate::criteria::f_spectral;
use crate::optim::{maximize, minimize, NelderMeadOptions};
use crate::qmat::{DensityMatrix, Mat4, Spectrum, C64};

/// Every state this close to `I/4` is absolutely local.
pub const AL_BALL_RADIUS: f64 = 0.5;

/// `sqrt(3) / (2 sqrt(2))`: no state farther than this from `I/4` is absolutely local.
pub fn non_al_radius() -> f64 {
    3f64.sqrt() / (2.0 * 2f64.sqrt())
}

pub const DEFAULT_GRID_STEP: f64 = 1e-3;

/// `Tr(rho^2)`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.matrix().iter().map(|z| z.norm_sqr()).sum()
}

/// Frobenius distance `|rho - I/4|`.
pub fn distance_to_maximally_mixed(rho: &DensityMatrix) -> f64 {
    (rho.matrix() - Mat4::identity() * C64::new(0.25, 0.0)).norm()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Zone {
    InsideAlBall,
    IndeterminateBand,
    OutsideNonalShell,
}

impl Zone {
    pub fn as_str(&self) -> &'static str {
        match self {
            Zone::InsideAlBall => "INSIDE_AL_BALL",
            Zone::IndeterminateBand => "INDETERMINATE_BAND",
            Zone::OutsideNonalShell => "OUTSIDE_NONAL_SHELL",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BallClassification {
    pub purity: f64,
    pub distance: f64,
    pub zone: Zone,
}

/// Places `rho` relative to the two balls around `I/4`.
///
/// The tolerance is applied on the scale of `F`: inside means
/// `4 d^2 < 1 + eps`, outside means `(8/3) d^2 > 1 - eps`. With these
/// bounds an inside state never gets a `Fail` verdict and an outside state
/// never gets a `Pass`, at the same `eps`.
pub fn classify_ball(rho: &DensityMatrix, eps: f64) -> BallClassification {
    let distance = distance_to_maximally_mixed(rho);
    let d2 = distance * distance;
    let zone = if 4.0 * d2 < 1.0 + eps {
        Zone::InsideAlBall
    } else if 8.0 / 3.0 * d2 > 1.0 - eps {
        Zone::OutsideNonalShell
    } else {
        Zone::IndeterminateBand
    };
    BallClassification {
        purity: purity(rho),
        distance,
        zone,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PurityOptimum {
    pub value: f64,
    pub spectrum: Spectrum,
    /// `(a1 - a4)^2 + (a2 - a3)^2` at the optimum.
    pub constraint: f64,
    /// Best value on the grid, before refinement.
    pub grid_value: f64,
}

fn gap_constraint(a: &[f64; 4]) -> f64 {
    (a[0] - a[3]).powi(2) + (a[1] - a[2]).powi(2)
}

/// Integer grid over the ordered simplex `a1 >= a2 >= a3 >= a4 >= 0`
/// with spacing `1/n`. Calls `keep(i, purity)` and returns the extreme kept
/// point according to `better`.
fn grid_extreme(
    n: i64,
    keep: impl Fn(&[i64; 4]) -> bool + Sync,
    better: impl Fn(i64, i64) -> bool + Sync,
) -> Option<[i64; 4]> {
    let score = |p: &[i64; 4]| p.iter().map(|x| x * x).sum::<i64>();
    let pick = |a: Option<[i64; 4]>, b: Option<[i64; 4]>| match (a, b) {
        (Some(x), Some(y)) => {
            let (sx, sy) = (score(&x), score(&y));
            if better(sy, sx) || (sy == sx && y < x) {
                Some(y)
            } else {
                Some(x)
            }
        }
        (x, None) => x,
        (None, y) => y,
    };
    ((n + 3) / 4..=n)
        .into_par_iter()
        .map(|i1| {
            let mut best = None;
            for i2 in 0..=i1.min(n - i1) {
                for i3 in 0..=i2.min(n - i1 - i2) {
                    let i4 = n - i1 - i2 - i3;
                    if i4 > i3 {
                        continue;
                    }
                    let p = [i1, i2, i3, i4];
                    if keep(&p) {
                        best = pick(best, Some(p));
                    }
                }
            }
            best
        })
        .reduce(|| None, pick)
}

fn grid_size(step: f64) -> i64 {
    assert!(step > 0.0 && step <= 0.25, "grid step must be in (0, 1/4]");
    (1.0 / step).round() as i64
}

/// Spectrum `1/4 + t d` along the deviation direction given by three free
/// coordinates (the fourth makes the deviation sum to zero), sorted.
fn deviation(x: &[f64]) -> [f64; 4] {
    let mut d = [x[0], x[1], x[2], -(x[0] + x[1] + x[2])];
    d.sort_by(|a, b| b.total_cmp(a));
    d
}

fn refine_options() -> NelderMeadOptions {
    NelderMeadOptions {
        max_iter: 5000,
        f_tol: 1e-15,
        initial_step: 0.02,
        restarts: 6,
    }
}

/// Largest purity compatible with absolute locality, and where it is attained.
pub fn max_purity_al() -> PurityOptimum {
    max_purity_al_with_step(DEFAULT_GRID_STEP)
}

pub fn max_purity_al_with_step(step: f64) -> PurityOptimum {
    let n = grid_size(step);
    let best = grid_extreme(
        n,
        |p| 2 * ((p[0] - p[3]).pow(2) + (p[1] - p[2]).pow(2)) <= n * n,
        |a, b| a > b,
    )
    .expect("I/4 is always feasible");
    let grid_value = best.iter().map(|x| (x * x) as f64).sum::<f64>() / (n * n) as f64;

    // Along a ray from I/4 the constraint grows as t^2, so each direction is
    // scaled out to the constraint surface or to a4 = 0, whichever is first.
    let scale = |d: &[f64; 4]| -> Option<f64> {
        let g = gap_constraint(d);
        if g == 0.0 {
            return None;
        }
        let mut t = (0.5 / g).sqrt();
        if d[3] < 0.0 {
            t = t.min(0.25 / -d[3]);
        }
        Some(t)
    };
    let objective = |x: &[f64]| {
        let d = deviation(x);
        match scale(&d) {
            Some(t) => 0.25 + t * t * d.iter().map(|v| v * v).sum::<f64>(),
            None => 0.25,
        }
    };
    let start: Vec<f64> = best[..3]
        .iter()
        .map(|&i| i as f64 / n as f64 - 0.25)
        .collect();
    let o = maximize(objective, &start, &refine_options());
    let d = deviation(&o.x);
    let t = scale(&d).unwrap_or(0.0);
    let a = d.map(|v| 0.25 + t * v);
    let spectrum = Spectrum::new(a).expect("refined point lies in the simplex");
    PurityOptimum {
        value: spectrum.purity(),
        spectrum,
        constraint: gap_constraint(&spectrum.values()),
        grid_value,
    }
}

/// Infimum of the purity over states that are not absolutely local.
///
/// The feasible set is open; the returned point lies on its closure, on the
/// surface `(a1 - a4)^2 + (a2 - a3)^2 = 1/2`.
pub fn min_purity_non_al() -> PurityOptimum {
    min_purity_non_al_with_step(DEFAULT_GRID_STEP)
}

pub fn min_purity_non_al_with_step(step: f64) -> PurityOptimum {
    let n = grid_size(step);
    let best = grid_extreme(
        n,
        |p| 2 * ((p[0] - p[3]).pow(2) + (p[1] - p[2]).pow(2)) > n * n,
        |a, b| a < b,
    )
    .expect("pure states are infeasible for absolute locality");
    let grid_value = best.iter().map(|x| (x * x) as f64).sum::<f64>() / (n * n) as f64;

    // Along a ray the smallest non-local purity sits on the constraint
    // surface; rays that leave the simplex first are penalized above any purity.
    let objective = |x: &[f64]| {
        let d = deviation(x);
        let g = gap_constraint(&d);
        if g == 0.0 {
            return 2.0;
        }
        let t = (0.5 / g).sqrt();
        let a4 = 0.25 + t * d[3];
        if a4 < 0.0 {
            return 1.0 - a4;
        }
        0.25 + t * t * d.iter().map(|v| v * v).sum::<f64>()
    };
    let start: Vec<f64> = best[..3]
        .iter()
        .map(|&i| i as f64 / n as f64 - 0.25)
        .collect();
    let o = minimize(objective, &start, &refine_options());
    let d = deviation(&o.x);
    let t = (0.5 / gap_constraint(&d)).sqrt();
    let a = d.map(|v| (0.25 + t * v).max(0.0));
    let spectrum = Spectrum::new(a).expect("refined point lies in the simplex");
    PurityOptimum {
        value: spectrum.purity(),
        spectrum,
        constraint: gap_constraint(&spectrum.values()),
        grid_value,
    }
}

/// `F` at a purity optimum, for activity checks.
pub fn f_at(opt: &PurityOptimum) -> f64 {
    f_spectral(&opt.spectrum)
}

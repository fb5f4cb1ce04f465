//! Derivative-free maximization: Nelder-Mead with restarts, and a multistart
//! driver for smooth periodic objectives on the torus `[0, 2pi)^n`.

use rayon::prelude::*;
use std::f64::consts::TAU;

#[derive(Clone, Copy, Debug)]
pub struct NelderMeadOptions {
    pub max_iter: usize,
    /// Stop once the spread of objective values over the simplex is below this.
    pub f_tol: f64,
    pub initial_step: f64,
    /// Fresh-simplex restarts from the incumbent, stopped early when a
    /// restart improves by less than `f_tol`.
    pub restarts: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            max_iter: 2000,
            f_tol: 1e-10,
            initial_step: 0.2,
            restarts: 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Optimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
}

/// Minimizes `f` starting from `x0`.
pub fn minimize<F: Fn(&[f64]) -> f64>(f: F, x0: &[f64], opts: &NelderMeadOptions) -> Optimum {
    let mut best = simplex_run(&f, x0, opts);
    for _ in 0..opts.restarts {
        let next = simplex_run(&f, &best.x, opts);
        let gain = best.value - next.value;
        let evaluations = best.evaluations + next.evaluations;
        if gain > 0.0 {
            best = Optimum {
                evaluations,
                ..next
            };
        } else {
            best.evaluations = evaluations;
        }
        if gain < opts.f_tol {
            break;
        }
    }
    best
}

/// Maximizes `f` starting from `x0`.
pub fn maximize<F: Fn(&[f64]) -> f64>(f: F, x0: &[f64], opts: &NelderMeadOptions) -> Optimum {
    let mut o = minimize(|x| -f(x), x0, opts);
    o.value = -o.value;
    o
}

fn simplex_run<F: Fn(&[f64]) -> f64>(f: &F, x0: &[f64], opts: &NelderMeadOptions) -> Optimum {
    const ALPHA: f64 = 1.0;
    const GAMMA: f64 = 2.0;
    const RHO: f64 = 0.5;
    const SIGMA: f64 = 0.5;

    let n = x0.len();
    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    pts.push(x0.to_vec());
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += opts.initial_step;
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| f(p)).collect();
    let mut evaluations = n + 1;

    for _ in 0..opts.max_iter {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = order.iter().map(|&i| pts[i].clone()).collect();
        vals = order.iter().map(|&i| vals[i]).collect();

        if (vals[n] - vals[0]).abs() < opts.f_tol {
            break;
        }

        let mut centroid = vec![0.0; n];
        for p in &pts[..n] {
            for (c, x) in centroid.iter_mut().zip(p) {
                *c += x / n as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&pts[n])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(ALPHA);
        let fr = f(&xr);
        evaluations += 1;
        if fr < vals[0] {
            let xe = along(GAMMA);
            let fe = f(&xe);
            evaluations += 1;
            if fe < fr {
                pts[n] = xe;
                vals[n] = fe;
            } else {
                pts[n] = xr;
                vals[n] = fr;
            }
            continue;
        }
        if fr < vals[n - 1] {
            pts[n] = xr;
            vals[n] = fr;
            continue;
        }
        let (xc, fc) = if fr < vals[n] {
            let xc = along(RHO);
            let fc = f(&xc);
            (xc, fc)
        } else {
            let xc = along(-RHO);
            let fc = f(&xc);
            (xc, fc)
        };
        evaluations += 1;
        if fc < vals[n].min(fr) {
            pts[n] = xc;
            vals[n] = fc;
            continue;
        }
        // shrink toward the best vertex
        for i in 1..=n {
            let shrunk: Vec<f64> = pts[0]
                .iter()
                .zip(&pts[i])
                .map(|(b, x)| b + SIGMA * (x - b))
                .collect();
            vals[i] = f(&shrunk);
            pts[i] = shrunk;
        }
        evaluations += n;
    }

    let best = (0..=n)
        .min_by(|&a, &b| vals[a].total_cmp(&vals[b]))
        .unwrap();
    Optimum {
        x: pts[best].clone(),
        value: vals[best],
        evaluations,
    }
}

/// Coarse grid over `[0, 2pi)^dims` followed by Nelder-Mead from the best
/// `starts` grid points.
#[derive(Clone, Copy, Debug)]
pub struct TorusSearch {
    pub grid: usize,
    pub starts: usize,
    pub simplex: NelderMeadOptions,
}

impl Default for TorusSearch {
    fn default() -> Self {
        Self {
            grid: 24,
            starts: 5,
            simplex: NelderMeadOptions::default(),
        }
    }
}

pub fn maximize_on_torus<F>(f: F, dims: usize, search: &TorusSearch) -> Optimum
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    assert!(dims > 0 && search.grid > 0);
    let total = search.grid.pow(dims as u32);
    let step = TAU / search.grid as f64;
    let point = |mut idx: usize| -> Vec<f64> {
        let mut x = vec![0.0; dims];
        for xi in x.iter_mut() {
            *xi = (idx % search.grid) as f64 * step;
            idx /= search.grid;
        }
        x
    };
    let mut scored: Vec<(usize, f64)> = (0..total)
        .into_par_iter()
        .map(|i| (i, f(&point(i))))
        .collect();
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));

    let mut best = Optimum {
        x: point(scored[0].0),
        value: scored[0].1,
        evaluations: total,
    };
    for &(idx, _) in scored.iter().take(search.starts.max(1)) {
        let o = maximize(&f, &point(idx), &search.simplex);
        best.evaluations += o.evaluations;
        if o.value > best.value {
            best.x = o.x;
            best.value = o.value;
        }
    }
    for x in best.x.iter_mut() {
        *x = x.rem_euclid(TAU);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let opts = NelderMeadOptions {
            f_tol: 1e-16,
            max_iter: 10_000,
            ..Default::default()
        };
        let o = minimize(f, &[-1.2, 1.0], &opts);
        assert!(
            (o.x[0] - 1.0).abs() < 1e-4 && (o.x[1] - 1.0).abs() < 1e-4,
            "{:?}",
            o.x
        );
    }

    #[test]
    fn torus_search_finds_global_max() {
        // several local maxima; global at (pi/3, 5pi/4) with value 2
        let f = |x: &[f64]| {
            (x[0] - std::f64::consts::FRAC_PI_3).cos()
                + (3.0 * (x[1] - 1.25 * std::f64::consts::PI)).cos()
        };
        let o = maximize_on_torus(f, 2, &TorusSearch::default());
        assert!((o.value - 2.0).abs() < 1e-9);
    }
}

//! Locality criteria.
//!
//! `M(rho)` is the sum of the two largest eigenvalues of `T^T T`; a state is
//! CHSH-local iff `M <= 1` and its maximal CHSH value is `2 sqrt(M)`.
//! `F(rho)` is the supremum of `M` over all global unitaries, which depends
//! only on the sorted spectrum:
//!
//! `F = (2a1 + 2a2 - 1)^2 + (2a1 + 2a3 - 1)^2 = 2 [(a1 - a4)^2 + (a2 - a3)^2]`.

use nalgebra::Matrix3;
use serde::Serialize;

use crate::cartan::{act_bloch, CartanAngles};
use crate::optim::{maximize_on_torus, Optimum, TorusSearch};
use crate::qmat::{BlochForm, DensityMatrix, PureThreeQubitState, Spectrum};
use crate::{Error, Result};

pub const DEFAULT_EPSILON: f64 = 1e-7;

/// Sparsity tolerance for the Bloch-parameter criteria.
pub const SPARSITY_TOL: f64 = 1e-9;

/// Three-valued comparison of a quantity against the threshold 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Boundary,
    Fail,
}

impl Verdict {
    /// `Pass` if `value <= 1 - eps`, `Fail` if `value >= 1 + eps`.
    pub fn against_one(value: f64, eps: f64) -> Self {
        if value <= 1.0 - eps {
            Verdict::Pass
        } else if value >= 1.0 + eps {
            Verdict::Fail
        } else {
            Verdict::Boundary
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Boundary => "BOUNDARY",
            Verdict::Fail => "FAIL",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Eigenvalues of `T^T T`, descending.
pub fn correlation_eigenvalues(b: &BlochForm) -> [f64; 3] {
    let g = b.correlation_gram();
    let m = Matrix3::from_fn(|i, j| g[i][j]);
    let ev = m.symmetric_eigenvalues();
    let mut out = [ev[0].max(0.0), ev[1].max(0.0), ev[2].max(0.0)];
    out.sort_by(|x, y| y.total_cmp(x));
    out
}

pub fn horodecki_m_bloch(b: &BlochForm) -> f64 {
    let ev = correlation_eigenvalues(b);
    ev[0] + ev[1]
}

/// Horodecki function `M(rho)`.
pub fn horodecki_m(rho: &DensityMatrix) -> f64 {
    horodecki_m_bloch(&rho.to_bloch())
}

pub fn chsh_max(m: f64) -> f64 {
    2.0 * m.max(0.0).sqrt()
}

/// `F` from the sorted spectrum, written with the three largest eigenvalues.
pub fn f_spectral(s: &Spectrum) -> f64 {
    let [a1, a2, a3, _] = s.values();
    let f = (2.0 * a1 + 2.0 * a2 - 1.0).powi(2) + (2.0 * a1 + 2.0 * a3 - 1.0).powi(2);
    debug_assert!(
        (f - f_spectral_gaps(s)).abs() <= 1e-12,
        "F forms disagree for {s:?}"
    );
    f
}

/// The same quantity written with eigenvalue gaps: `2 [(a1-a4)^2 + (a2-a3)^2]`.
pub fn f_spectral_gaps(s: &Spectrum) -> f64 {
    let [a1, a2, a3, a4] = s.values();
    2.0 * ((a1 - a4).powi(2) + (a2 - a3).powi(2))
}

pub fn is_absolutely_local(rho: &DensityMatrix, eps: f64) -> Verdict {
    Verdict::against_one(f_spectral(&rho.spectrum()), eps)
}

pub fn bell_local(rho: &DensityMatrix, eps: f64) -> Verdict {
    Verdict::against_one(horodecki_m(rho), eps)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LocalityReport {
    #[serde(rename = "M")]
    pub m: f64,
    pub chsh_max: f64,
    #[serde(rename = "F")]
    pub f: f64,
    pub bell_local: Verdict,
    pub absolutely_local: Verdict,
    pub epsilon: f64,
}

impl LocalityReport {
    pub fn new(rho: &DensityMatrix, eps: f64) -> Self {
        let m = horodecki_m(rho);
        let f = f_spectral(&rho.spectrum());
        Self {
            m,
            chsh_max: chsh_max(m),
            f,
            bell_local: Verdict::against_one(m, eps),
            absolutely_local: Verdict::against_one(f, eps),
            epsilon: eps,
        }
    }
}

/// Checks `u = v = 0` and off-diagonal `T = 0`; returns the diagonal.
pub fn bell_diagonal_correlations(b: &BlochForm) -> Result<[f64; 3]> {
    let mut residual = 0.0f64;
    for i in 0..3 {
        residual = residual.max(b.u[i].abs()).max(b.v[i].abs());
        for j in 0..3 {
            if i != j {
                residual = residual.max(b.t[i][j].abs());
            }
        }
    }
    if residual > SPARSITY_TOL {
        return Err(Error::NotBellDiagonal { residual });
    }
    Ok([b.t[0][0], b.t[1][1], b.t[2][2]])
}

/// Bell-diagonal criterion: the largest pairwise sum of squared diagonal
/// correlations, compared with 1.
pub fn bell_diag_criterion(b: &BlochForm, eps: f64) -> Result<(Verdict, f64)> {
    let [t1, t2, t3] = bell_diagonal_correlations(b)?.map(|t| t * t);
    let value = (t1 + t2).max(t1 + t3).max(t2 + t3);
    Ok((Verdict::against_one(value, eps), value))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CompDiagOutcome {
    pub verdict: Verdict,
    pub max: f64,
    pub angles: CartanAngles,
}

/// Correlations `c11`, `c22` generated by `U_d` from a computational-diagonal
/// state with local Bloch components `u3`, `v3`.
pub fn comp_diag_correlations(u3: f64, v3: f64, angles: &CartanAngles) -> (f64, f64) {
    let [t1, t2, _] = angles.thetas();
    let (s1, c1) = t1.sin_cos();
    let (s2, c2) = t2.sin_cos();
    let c11 = u3 * c2 * s1 - v3 * s2 * c1;
    let c22 = v3 * c2 * s1 - u3 * s2 * c1;
    (c11, c22)
}

/// Criterion for states diagonal in the computational basis: only `u3`, `v3`
/// and `t33` may be non-zero. Maximizes
/// `max(t33^2 + c11^2, t33^2 + c22^2, c11^2 + c22^2)` over the Cartan angles.
pub fn comp_diag_criterion(
    b: &BlochForm,
    search: &TorusSearch,
    eps: f64,
) -> Result<CompDiagOutcome> {
    let mut residual = 0.0f64;
    for i in 0..3 {
        if i != 2 {
            residual = residual.max(b.u[i].abs()).max(b.v[i].abs());
        }
        for j in 0..3 {
            if (i, j) != (2, 2) {
                residual = residual.max(b.t[i][j].abs());
            }
        }
    }
    if residual > SPARSITY_TOL {
        return Err(Error::NotComputationalDiagonal { residual });
    }
    let (u3, v3, t33) = (b.u[2], b.v[2], b.t[2][2]);
    let objective = |x: &[f64]| {
        let (c11, c22) = comp_diag_correlations(u3, v3, &CartanAngles::new(x[0], x[1], x[2]));
        let (a, b, c) = (c11 * c11, c22 * c22, t33 * t33);
        (c + a).max(c + b).max(a + b)
    };
    let Optimum { x, value, .. } = maximize_on_torus(objective, 3, search);
    Ok(CompDiagOutcome {
        verdict: Verdict::against_one(value, eps),
        max: value,
        angles: CartanAngles::new(x[0], x[1], x[2]),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Sufficiency {
    SufficientPass,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceOutcome {
    pub result: Sufficiency,
    pub max_trace: f64,
    pub angles: CartanAngles,
}

/// One-sided trace test: if `Tr(T'^T T')` stays `<= 1` for every Cartan
/// angle triple the state is absolutely local. Never reports failure.
pub fn trace_sufficient(rho: &DensityMatrix, search: &TorusSearch) -> TraceOutcome {
    let b = rho.to_bloch();
    let objective = |x: &[f64]| {
        let moved = act_bloch(&b, &CartanAngles::new(x[0], x[1], x[2]));
        moved.t.iter().flatten().map(|t| t * t).sum::<f64>()
    };
    let Optimum { x, value, .. } = maximize_on_torus(objective, 3, search);
    TraceOutcome {
        result: if value <= 1.0 {
            Sufficiency::SufficientPass
        } else {
            Sufficiency::Inconclusive
        },
        max_trace: value,
        angles: CartanAngles::new(x[0], x[1], x[2]),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CorollaryOutcome {
    /// `Pass` iff the Bloch length of the third qubit is `<= eps`.
    pub verdict: Verdict,
    pub bloch_length: f64,
    /// Spectral verdict on the two-qubit marginal.
    pub marginal_verdict: Verdict,
    /// The two verdicts do not contradict each other.
    pub consistent: bool,
}

/// The two-qubit marginal of a pure three-qubit state is absolutely local
/// iff the third qubit is maximally mixed.
pub fn corollary_reduced_test(psi: &PureThreeQubitState, eps: f64) -> CorollaryOutcome {
    let r = psi.reduced_states();
    let verdict = if r.bloch_length <= eps {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let marginal_verdict = is_absolutely_local(&r.ab, eps);
    let consistent = match verdict {
        Verdict::Pass => marginal_verdict != Verdict::Fail,
        _ => marginal_verdict != Verdict::Pass,
    };
    CorollaryOutcome {
        verdict,
        bloch_length: r.bloch_length,
        marginal_verdict,
        consistent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn spec(a: [f64; 4]) -> Spectrum {
        Spectrum::new(a).unwrap()
    }

    #[test]
    fn verdict_thresholds() {
        assert_eq!(Verdict::against_one(0.5, 1e-7), Verdict::Pass);
        assert_eq!(Verdict::against_one(1.0, 1e-7), Verdict::Boundary);
        assert_eq!(Verdict::against_one(1.0 + 2e-7, 1e-7), Verdict::Fail);
    }

    #[test]
    fn f_spectral_examples() {
        assert_eq!(f_spectral(&spec([0.25; 4])), 0.0);
        assert!((f_spectral(&spec([1.0, 0.0, 0.0, 0.0])) - 2.0).abs() < 1e-15);
        assert!((f_spectral(&spec([0.5, 0.5, 0.0, 0.0])) - 1.0).abs() < 1e-15);
        assert_eq!(
            Verdict::against_one(f_spectral(&spec([0.5, 0.5, 0.0, 0.0])), 1e-7),
            Verdict::Boundary
        );
    }

    #[test]
    fn horodecki_examples() {
        let p = 0.6;
        let w = zoo::werner(p).unwrap();
        assert!((horodecki_m(&w) - 2.0 * p * p).abs() < 1e-12);
        let singlet = zoo::werner(1.0).unwrap();
        let r = LocalityReport::new(&singlet, DEFAULT_EPSILON);
        assert!((r.m - 2.0).abs() < 1e-12);
        assert!((r.chsh_max - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(horodecki_m(&DensityMatrix::maximally_mixed()), 0.0);
    }

    #[test]
    fn absolutely_local_examples() {
        let eps = DEFAULT_EPSILON;
        assert_eq!(
            is_absolutely_local(&zoo::werner(0.5).unwrap(), eps),
            Verdict::Pass
        );
        assert_eq!(
            is_absolutely_local(&zoo::werner(0.8).unwrap(), eps),
            Verdict::Fail
        );
        for theta in [0.3, 0.7, 1.2] {
            let g = zoo::gisin(std::f64::consts::FRAC_1_SQRT_2, theta).unwrap();
            assert_eq!(is_absolutely_local(&g, eps), Verdict::Boundary);
        }
    }

    #[test]
    fn bell_diag_examples() {
        let mut b = BlochForm::zero();
        b.t = [[-0.5, 0.0, 0.0], [0.0, -0.5, 0.0], [0.0, 0.0, -0.5]];
        assert_eq!(
            bell_diag_criterion(&b, DEFAULT_EPSILON).unwrap(),
            (Verdict::Pass, 0.5)
        );
        b.t = [[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]];
        assert_eq!(
            bell_diag_criterion(&b, DEFAULT_EPSILON).unwrap(),
            (Verdict::Fail, 2.0)
        );
        assert_eq!(
            bell_diag_criterion(&BlochForm::zero(), DEFAULT_EPSILON)
                .unwrap()
                .0,
            Verdict::Pass
        );
        b.u[0] = 0.1;
        assert!(matches!(
            bell_diag_criterion(&b, DEFAULT_EPSILON),
            Err(Error::NotBellDiagonal { .. })
        ));
    }

    #[test]
    fn comp_diag_examples() {
        let search = TorusSearch::default();
        let mix = zoo::comp_diagonal([0.5, 0.0, 0.0, 0.5]).unwrap().to_bloch();
        let o = comp_diag_criterion(&mix, &search, DEFAULT_EPSILON).unwrap();
        assert!((o.max - 1.0).abs() < 1e-9);
        assert_eq!(o.verdict, Verdict::Boundary);

        let pure = zoo::comp_diagonal([1.0, 0.0, 0.0, 0.0]).unwrap().to_bloch();
        let o = comp_diag_criterion(&pure, &search, DEFAULT_EPSILON).unwrap();
        assert!((o.max - 2.0).abs() < 1e-9);
        assert_eq!(o.verdict, Verdict::Fail);

        let o = comp_diag_criterion(&BlochForm::zero(), &search, DEFAULT_EPSILON).unwrap();
        assert_eq!((o.verdict, o.max), (Verdict::Pass, 0.0));

        let werner = zoo::werner(0.3).unwrap().to_bloch();
        assert!(matches!(
            comp_diag_criterion(&werner, &search, DEFAULT_EPSILON),
            Err(Error::NotComputationalDiagonal { .. })
        ));
    }

    #[test]
    fn trace_examples() {
        let search = TorusSearch::default();
        let o = trace_sufficient(&DensityMatrix::maximally_mixed(), &search);
        assert_eq!(o.result, Sufficiency::SufficientPass);
        assert!(o.max_trace.abs() < 1e-15);

        let o = trace_sufficient(&zoo::werner(0.5).unwrap(), &search);
        assert_eq!(o.result, Sufficiency::SufficientPass);
        assert!((o.max_trace - 0.75).abs() < 1e-12);

        let o = trace_sufficient(&zoo::werner(1.0).unwrap(), &search);
        assert_eq!(o.result, Sufficiency::Inconclusive);
        assert!((o.max_trace - 3.0).abs() < 1e-12);
    }

    #[test]
    fn three_qubit_marginal_examples() {
        let eps = DEFAULT_EPSILON;
        let ghz = corollary_reduced_test(&PureThreeQubitState::ghz(), eps);
        assert_eq!(ghz.verdict, Verdict::Pass);
        assert_eq!(ghz.marginal_verdict, Verdict::Boundary);
        assert!(ghz.consistent);

        let w = corollary_reduced_test(&PureThreeQubitState::w(), eps);
        assert_eq!(w.verdict, Verdict::Fail);
        assert_eq!(w.marginal_verdict, Verdict::Fail);
        assert!((w.bloch_length - 1.0 / 3.0).abs() < 1e-12);

        let prod = corollary_reduced_test(&PureThreeQubitState::basis(0), eps);
        assert_eq!(prod.verdict, Verdict::Fail);
        assert!(prod.consistent);
        let r = PureThreeQubitState::basis(0).reduced_states();
        assert!((f_spectral(&r.ab.spectrum()) - 2.0).abs() < 1e-12);
    }
}

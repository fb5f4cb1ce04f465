//! The nonlocal part of the two-qubit Cartan decomposition.
//!
//! Every `U` in SU(4) factors as `(U_A (x) U_B) U_d (V_A (x) V_B)` with
//!
//! `U_d(theta) = exp[i/2 (theta1 s1(x)s1 + theta2 s2(x)s2 + theta3 s3(x)s3)]`.
//!
//! `U_d` is diagonal in the Bell basis, `U_d = sum_k exp(-i lambda_k) |phi_k><phi_k|`
//! with `lambda_1 = x - y + z`, `lambda_2 = -x + y + z`, `lambda_3 = -x - y - z`,
//! `lambda_4 = x + y - z`. With the Bell numbering of [`crate::qmat`] the two
//! parameterizations agree for `(x, y, z) = -(theta1, theta2, theta3) / 2`.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::criteria::horodecki_m;
use crate::optim::{maximize, NelderMeadOptions};
use crate::qmat::{
    bell_projector, identity2, identity4, kron, pauli, pauli_product, BlochForm, DensityMatrix,
    Mat2, Mat4, Spectrum, C64,
};
use crate::{Error, Result};

const UNITARY_TOL: f64 = 1e-10;

/// Angles of `U_d`, canonicalized into `[0, 2pi)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CartanAngles {
    theta: [f64; 3],
}

impl CartanAngles {
    pub fn new(theta1: f64, theta2: f64, theta3: f64) -> Self {
        Self {
            theta: [theta1, theta2, theta3].map(|t| t.rem_euclid(TAU)),
        }
    }

    pub fn zero() -> Self {
        Self { theta: [0.0; 3] }
    }

    pub fn thetas(&self) -> [f64; 3] {
        self.theta
    }

    /// Bell-phase parameters `(x, y, z)`.
    pub fn bell_phases(&self) -> [f64; 3] {
        self.theta.map(|t| -0.5 * t)
    }

    /// `lambda_1..lambda_4`.
    pub fn lambdas(&self) -> [f64; 4] {
        let [x, y, z] = self.bell_phases();
        [x - y + z, -x + y + z, -x - y - z, x + y - z]
    }
}

/// A 4x4 unitary.
#[derive(Clone, Debug, PartialEq)]
pub struct GlobalUnitary(Mat4);

impl GlobalUnitary {
    pub fn new(m: Mat4) -> Result<Self> {
        let residual = (m.adjoint() * m - identity4())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if residual.is_nan() || residual > UNITARY_TOL {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(identity4())
    }

    /// `U_A (x) U_B`.
    pub fn local(a: &Mat2, b: &Mat2) -> Result<Self> {
        Self::new(kron(a, b))
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn compose(&self, other: &GlobalUnitary) -> Self {
        Self(self.0 * other.0)
    }

    /// `U rho U^dag`.
    pub fn conjugate(&self, rho: &DensityMatrix) -> DensityMatrix {
        rho.conjugate(&self.0)
    }

    /// Largest `|(U^dag U - I)_ij|`.
    pub fn unitarity_residual(&self) -> f64 {
        (self.0.adjoint() * self.0 - identity4())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// `U_d` built from its Bell-basis eigen-decomposition.
pub fn build_ud(angles: &CartanAngles) -> GlobalUnitary {
    let mut m = Mat4::zeros();
    for (k, lambda) in angles.lambdas().iter().enumerate() {
        m += bell_projector(k + 1) * C64::from_polar(1.0, -lambda);
    }
    GlobalUnitary(m)
}

/// `U_d` as a product of the three commuting exponentials
/// `exp(i theta/2 s_k(x)s_k) = cos(theta/2) I + i sin(theta/2) s_k(x)s_k`.
pub fn build_ud_exponential(angles: &CartanAngles) -> GlobalUnitary {
    let mut m = identity4();
    for (k, t) in angles.thetas().iter().enumerate() {
        let (s, c) = (0.5 * t).sin_cos();
        m *= identity4() * C64::new(c, 0.0) + pauli_product(k, k) * C64::new(0.0, s);
    }
    GlobalUnitary(m)
}

/// Single-qubit `exp(i w.s) = cos|w| I + i sin|w| (w/|w|).s`.
pub fn su2(w: [f64; 3]) -> Mat2 {
    let n = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
    if n == 0.0 {
        return identity2();
    }
    let (s, c) = n.sin_cos();
    let mut m = identity2() * C64::new(c, 0.0);
    for (k, wk) in w.iter().enumerate() {
        m += pauli(k) * C64::new(0.0, s * wk / n);
    }
    m
}

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Bloch parameters of `U_d rho U_d^dag`, computed from the parameters of
/// `rho` without forming any matrix.
pub fn act_bloch(b: &BlochForm, angles: &CartanAngles) -> BlochForm {
    let theta = angles.thetas();
    let cs = theta.map(f64::cos);
    let sn = theta.map(f64::sin);
    let (u, v, t) = (&b.u, &b.v, &b.t);
    let mut out = BlochForm::zero();
    for k in 0..3 {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        let e = levi_civita(i, j, k);
        out.u[k] = u[k] * cs[i] * cs[j]
            + v[k] * sn[i] * sn[j]
            + e * (t[i][j] * cs[i] * sn[j] - t[j][i] * sn[i] * cs[j]);
        out.v[k] = v[k] * cs[i] * cs[j]
            + u[k] * sn[i] * sn[j]
            + e * (t[j][i] * cs[i] * sn[j] - t[i][j] * sn[i] * cs[j]);
    }
    for i in 0..3 {
        for j in 0..3 {
            let base = t[i][j] * cs[i] * cs[j] + t[j][i] * sn[i] * sn[j];
            out.t[i][j] = if i == j {
                base
            } else {
                let k = 3 - i - j;
                base - levi_civita(i, j, k) * (u[k] * cs[i] * sn[j] - v[k] * sn[i] * cs[j])
            };
        }
    }
    out
}

/// Closed-form eigenvalues `(A, B, C)` of `T'^T T'` for `diag(a1..a4)` in the
/// computational basis after `U_d` with Bell phases `x`, `y`.
pub fn eigvals_comp_diag(s: &Spectrum, x: f64, y: f64) -> [f64; 3] {
    let [a1, a2, a3, _] = s.values();
    let p = 2.0 * a1 + a2 + a3 - 1.0;
    let q = a2 - a3;
    let (d, e) = ((2.0 * x - 2.0 * y).sin(), (2.0 * x + 2.0 * y).sin());
    [
        (d * p + e * q).powi(2),
        (d * p - e * q).powi(2),
        (2.0 * a2 + 2.0 * a3 - 1.0).powi(2),
    ]
}

/// Haar-distributed unitary from a complex Ginibre matrix: QR, then the
/// phases of `diag(R)` moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R) -> GlobalUnitary {
    let g = Mat4::from_fn(|_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im) * FRAC_1_SQRT_2
    });
    let (q, r) = g.qr().unpack();
    let mut u = q;
    for k in 0..4 {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        let col = u.column(k) * phase;
        u.set_column(k, &col);
    }
    GlobalUnitary(u)
}

/// Deterministic Haar sample for a seed.
pub fn haar_random_unitary(seed: u64) -> GlobalUnitary {
    haar_unitary(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// Haar-distributed `U_A (x) U_B`.
pub fn haar_local_unitary<R: Rng + ?Sized>(rng: &mut R) -> GlobalUnitary {
    let mut one = || {
        let g = Mat2::from_fn(|_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            C64::new(re, im)
        });
        let (q, r) = g.qr().unpack();
        let mut u = q;
        for k in 0..2 {
            let d = r[(k, k)];
            let col = u.column(k) * (d / d.norm());
            u.set_column(k, &col);
        }
        u
    };
    let a = one();
    let b = one();
    GlobalUnitary(kron(&a, &b))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UnitarySearch {
    /// Best `M` among the Haar samples.
    pub sampled_max: f64,
    /// Best `M` after local refinement, when requested.
    pub refined_max: Option<f64>,
}

impl UnitarySearch {
    pub fn best(&self) -> f64 {
        self.refined_max
            .map_or(self.sampled_max, |r| r.max(self.sampled_max))
    }
}

/// Number of best samples used as refinement seeds.
const REFINE_SEEDS: usize = 5;

/// Random search for `sup_U M(U rho U^dag)`. The identity counts as a sample.
///
/// Refinement climbs from the best samples over `U_d(theta) (V_A (x) V_B)`,
/// nine parameters that reach every left-local coset of SU(4) near the seed;
/// left local factors never change `M`.
pub fn search_unitaries(
    rho: &DensityMatrix,
    n_samples: usize,
    refine: bool,
    seed: u64,
) -> UnitarySearch {
    assert!(n_samples >= 1, "n_samples must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut top: Vec<(f64, GlobalUnitary)> = Vec::with_capacity(REFINE_SEEDS + 1);
    top.push((horodecki_m(rho), GlobalUnitary::identity()));
    for _ in 0..n_samples {
        let u = haar_unitary(&mut rng);
        let m = horodecki_m(&u.conjugate(rho));
        if top.len() < REFINE_SEEDS || m > top[top.len() - 1].0 {
            top.push((m, u));
            top.sort_by(|a, b| b.0.total_cmp(&a.0));
            top.truncate(REFINE_SEEDS);
        }
    }
    let sampled_max = top[0].0;
    if !refine {
        return UnitarySearch {
            sampled_max,
            refined_max: None,
        };
    }
    let opts = NelderMeadOptions {
        max_iter: 4000,
        f_tol: 1e-13,
        initial_step: 0.3,
        restarts: 4,
    };
    let refined = top
        .iter()
        .map(|(_, u)| {
            let seeded = u.conjugate(rho);
            let objective = |p: &[f64]| {
                let ud = build_ud(&CartanAngles::new(p[0], p[1], p[2]));
                let local = kron(&su2([p[3], p[4], p[5]]), &su2([p[6], p[7], p[8]]));
                horodecki_m(&seeded.conjugate(&(ud.matrix() * local)))
            };
            maximize(objective, &[0.0; 9], &opts).value
        })
        .fold(sampled_max, f64::max);
    UnitarySearch {
        sampled_max,
        refined_max: Some(refined),
    }
}

/// Best `M(U rho U^dag)` found over `n_samples` Haar unitaries, optionally
/// refined.
pub fn max_m_over_unitaries(rho: &DensityMatrix, n_samples: usize, refine: bool, seed: u64) -> f64 {
    search_unitaries(rho, n_samples, refine, seed).best()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::f_spectral;
    use crate::zoo;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn zero_angles_give_identity() {
        assert!((build_ud(&CartanAngles::zero()).matrix() - identity4()).norm() < 1e-15);
        let b = zoo::gisin(0.6, 0.4).unwrap().to_bloch();
        assert_eq!(act_bloch(&b, &CartanAngles::zero()).max_abs_diff(&b), 0.0);
    }

    #[test]
    fn two_constructions_agree() {
        let a = CartanAngles::new(0.3, -1.1, 2.5);
        assert!((build_ud(&a).matrix() - build_ud_exponential(&a).matrix()).norm() < 1e-14);
    }

    #[test]
    fn angles_are_canonical() {
        let a = CartanAngles::new(-0.5, 7.0, TAU);
        let t = a.thetas();
        assert!(t.iter().all(|x| (0.0..TAU).contains(x)));
        assert!((t[0] - (TAU - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn bell_diagonal_is_invariant() {
        let rho = zoo::bell_diagonal([0.4, 0.3, 0.2, 0.1]).unwrap();
        let moved = build_ud(&CartanAngles::new(1.0, 2.0, 3.0)).conjugate(&rho);
        assert!((moved.matrix() - rho.matrix()).norm() < 1e-14);
    }

    #[test]
    fn product_state_reaches_full_correlation() {
        // exp(i pi/4 XX)|00> is maximally entangled
        let rho = zoo::comp_diagonal([1.0, 0.0, 0.0, 0.0]).unwrap();
        let a = CartanAngles::new(FRAC_PI_2, 0.0, 0.0);
        let direct = build_ud_exponential(&a).conjugate(&rho);
        let rules = act_bloch(&rho.to_bloch(), &a);
        assert!(rules.max_abs_diff(&direct.to_bloch()) < 1e-12);
        assert!((crate::criteria::horodecki_m(&direct) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn comp_diagonal_correlations_appear() {
        // sigma_mix after U_d: T'_21 = c11 and T'_12 = c22
        let mix = zoo::comp_diagonal([0.6, 0.2, 0.15, 0.05]).unwrap();
        let b = mix.to_bloch();
        let a = CartanAngles::new(0.7, 1.9, 0.4);
        let moved = act_bloch(&b, &a);
        let (c11, c22) = crate::criteria::comp_diag_correlations(b.u[2], b.v[2], &a);
        assert!((moved.t[1][0] - c11).abs() < 1e-14);
        assert!((moved.t[0][1] - c22).abs() < 1e-14);
        let direct = build_ud(&a).conjugate(&mix).to_bloch();
        assert!(moved.max_abs_diff(&direct) < 1e-12);
    }

    #[test]
    fn gisin_sparsity_pattern() {
        let g = zoo::gisin(0.6, 0.5).unwrap();
        let b = g.to_bloch();
        let a = CartanAngles::new(0.9, 0.2, 1.3);
        let moved = act_bloch(&b, &a);
        let (s1, c1) = a.thetas()[0].sin_cos();
        let (s2, c2) = a.thetas()[1].sin_cos();
        assert!((moved.t[0][0] - b.t[0][0]).abs() < 1e-14);
        assert!((moved.t[1][1] - b.t[1][1]).abs() < 1e-14);
        assert!((moved.t[2][2] - b.t[2][2]).abs() < 1e-14);
        assert!((moved.t[0][1] - (b.v[2] * c2 * s1 - b.u[2] * s2 * c1)).abs() < 1e-14);
        assert!((moved.t[1][0] - (b.u[2] * c2 * s1 - b.v[2] * s2 * c1)).abs() < 1e-14);
        for (i, j) in [(0, 2), (2, 0), (1, 2), (2, 1)] {
            assert!(moved.t[i][j].abs() < 1e-14);
        }
        assert!(moved.max_abs_diff(&build_ud(&a).conjugate(&g).to_bloch()) < 1e-12);
    }

    #[test]
    fn comp_diag_closed_form_at_origin() {
        let s = Spectrum::new([0.5, 0.3, 0.15, 0.05]).unwrap();
        let [a, b, c] = eigvals_comp_diag(&s, 0.0, 0.0);
        assert_eq!((a, b), (0.0, 0.0));
        assert!((c - (2.0 * 0.3 + 2.0 * 0.15 - 1.0f64).powi(2)).abs() < 1e-15);
    }

    #[test]
    fn haar_is_deterministic_and_unitary() {
        let u = haar_random_unitary(42);
        assert_eq!(u, haar_random_unitary(42));
        assert_ne!(u, haar_random_unitary(43));
        assert!(u.unitarity_residual() < 1e-10);
        assert!((u.matrix().determinant().norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_non_unitary() {
        assert!(matches!(
            GlobalUnitary::new(identity4() * C64::new(2.0, 0.0)),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn unitary_search_examples() {
        let bd = zoo::bell_diagonal([0.5, 0.3, 0.15, 0.05]).unwrap();
        let m = crate::criteria::horodecki_m(&bd);
        let found = max_m_over_unitaries(&bd, 200, false, 1);
        assert!((found - m).abs() < 1e-10, "{found} vs {m}");

        let prod = zoo::comp_diagonal([1.0, 0.0, 0.0, 0.0]).unwrap();
        let found = max_m_over_unitaries(&prod, 200, true, 2);
        assert!((found - 2.0).abs() < 1e-4, "{found}");
        assert!(found <= f_spectral(&prod.spectrum()) + 1e-9);

        assert!(max_m_over_unitaries(&DensityMatrix::maximally_mixed(), 50, true, 3).abs() < 1e-14);
    }
}

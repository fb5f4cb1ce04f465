//! Named state families and the local-filtering predicates they are
//! compared against.
//!
//! Two conventions for `|psi_theta>` appear: the Gisin family uses
//! `sin(theta)|01> + cos(theta)|10>`, the noisy partially entangled family
//! `rho_g` uses `cos(theta)|01> + sin(theta)|10>`. Spectra, and therefore
//! all absolute-locality verdicts, do not depend on the choice.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::criteria::{f_spectral, Verdict};
use crate::qmat::{bell_projector, identity4, DensityMatrix, Mat4, Spectrum, Vec4, C64};
use crate::{Error, Result};

const WEIGHT_TOL: f64 = 1e-9;

fn check(name: &'static str, value: f64, lo: f64, hi: f64, domain: &'static str) -> Result<()> {
    if value.is_finite() && (lo..=hi).contains(&value) {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            domain,
        })
    }
}

fn check_weights(a: &[f64; 4]) -> Result<()> {
    for &x in a {
        check("a_i", x, -WEIGHT_TOL, 1.0 + WEIGHT_TOL, "[0, 1]")?;
    }
    let sum: f64 = a.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_TOL {
        return Err(Error::Domain {
            name: "sum a_i",
            value: sum,
            domain: "{1}",
        });
    }
    Ok(())
}

fn projector(psi: Vec4) -> Mat4 {
    psi * psi.adjoint()
}

fn ket(amps: [f64; 4]) -> Vec4 {
    Vec4::new(
        C64::new(amps[0], 0.0),
        C64::new(amps[1], 0.0),
        C64::new(amps[2], 0.0),
        C64::new(amps[3], 0.0),
    )
}

fn computational(k: usize) -> Mat4 {
    let mut m = Mat4::zeros();
    m[(k, k)] = C64::new(1.0, 0.0);
    m
}

fn singlet() -> Mat4 {
    bell_projector(3)
}

/// `p |psi-><psi-| + (1 - p)/4 I`, `p` in `[0, 1]`.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    check("p", p, 0.0, 1.0, "[0, 1]")?;
    Ok(DensityMatrix::mixture(&[
        (p, singlet()),
        ((1.0 - p) / 4.0, identity4()),
    ]))
}

/// `(|00><00| + |11><11|)/2`.
pub fn sigma_mix() -> DensityMatrix {
    DensityMatrix::mixture(&[(0.5, computational(0)), (0.5, computational(3))])
}

/// `lambda |psi_theta><psi_theta| + (1 - lambda) sigma_mix` with
/// `|psi_theta> = sin(theta)|01> + cos(theta)|10>`, `theta` in `(0, pi/2)`.
pub fn gisin(lambda: f64, theta: f64) -> Result<DensityMatrix> {
    check("lambda", lambda, 0.0, 1.0, "[0, 1]")?;
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(Error::Domain {
            name: "theta",
            value: theta,
            domain: "(0, pi/2)",
        });
    }
    let psi = ket([0.0, theta.sin(), theta.cos(), 0.0]);
    Ok(DensityMatrix::mixture(&[
        (lambda, projector(psi)),
        ((1.0 - lambda) / 2.0, computational(0)),
        ((1.0 - lambda) / 2.0, computational(3)),
    ]))
}

/// `sum a_k |phi_k><phi_k|` over the Bell basis.
pub fn bell_diagonal(a: [f64; 4]) -> Result<DensityMatrix> {
    check_weights(&a)?;
    let parts: Vec<(f64, Mat4)> = (0..4)
        .map(|k| (a[k].max(0.0), bell_projector(k + 1)))
        .collect();
    Ok(DensityMatrix::mixture(&parts))
}

/// `diag(a1, a2, a3, a4)` in the computational basis.
pub fn comp_diagonal(a: [f64; 4]) -> Result<DensityMatrix> {
    check_weights(&a)?;
    let parts: Vec<(f64, Mat4)> = (0..4).map(|k| (a[k].max(0.0), computational(k))).collect();
    Ok(DensityMatrix::mixture(&parts))
}

/// The Bell-diagonal state with this spectrum; it attains `F` as its own `M`.
pub fn bell_diagonal_with_spectrum(s: &Spectrum) -> DensityMatrix {
    bell_diagonal(s.values()).expect("spectrum is a valid weight vector")
}

/// `q |psi-><psi-| + (1 - q)/2 (|00><00| + |01><01|)`.
pub fn rho_f(q: f64) -> Result<DensityMatrix> {
    check("q", q, 0.0, 1.0, "[0, 1]")?;
    Ok(DensityMatrix::mixture(&[
        (q, singlet()),
        ((1.0 - q) / 2.0, computational(0)),
        ((1.0 - q) / 2.0, computational(1)),
    ]))
}

/// `p |psi_theta><psi_theta| + (1 - p)/4 I` with
/// `|psi_theta> = cos(theta)|01> + sin(theta)|10>`, `theta` in `[0, pi/2]`.
pub fn rho_g(p: f64, theta: f64) -> Result<DensityMatrix> {
    check("p", p, 0.0, 1.0, "[0, 1]")?;
    check("theta", theta, 0.0, FRAC_PI_2, "[0, pi/2]")?;
    let psi = ket([0.0, theta.cos(), theta.sin(), 0.0]);
    Ok(DensityMatrix::mixture(&[
        (p, projector(psi)),
        ((1.0 - p) / 4.0, identity4()),
    ]))
}

/// `|a><a| (x) |b><b|` for single-qubit Bloch directions given in polar
/// angles `(theta, phi)`.
pub fn pure_product(a: (f64, f64), b: (f64, f64)) -> Result<DensityMatrix> {
    let qubit = |(t, p): (f64, f64)| {
        [
            C64::new((t / 2.0).cos(), 0.0),
            C64::from_polar((t / 2.0).sin(), p),
        ]
    };
    if ![a.0, a.1, b.0, b.1].iter().all(|x| x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let (x, y) = (qubit(a), qubit(b));
    let psi = Vec4::new(x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]);
    DensityMatrix::pure(&psi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    Werner,
    Gisin,
    BellDiagonal,
    CompDiagonal,
    RhoF,
    RhoG,
    PureProduct,
}

/// A member of one of the named families.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FamilyPoint {
    Werner { p: f64 },
    Gisin { lambda: f64, theta: f64 },
    BellDiagonal { a: [f64; 4] },
    CompDiagonal { a: [f64; 4] },
    RhoF { q: f64 },
    RhoG { p: f64, theta: f64 },
    PureProduct { a: (f64, f64), b: (f64, f64) },
}

impl FamilyPoint {
    pub fn family(&self) -> Family {
        match self {
            FamilyPoint::Werner { .. } => Family::Werner,
            FamilyPoint::Gisin { .. } => Family::Gisin,
            FamilyPoint::BellDiagonal { .. } => Family::BellDiagonal,
            FamilyPoint::CompDiagonal { .. } => Family::CompDiagonal,
            FamilyPoint::RhoF { .. } => Family::RhoF,
            FamilyPoint::RhoG { .. } => Family::RhoG,
            FamilyPoint::PureProduct { .. } => Family::PureProduct,
        }
    }

    pub fn state(&self) -> Result<DensityMatrix> {
        match *self {
            FamilyPoint::Werner { p } => werner(p),
            FamilyPoint::Gisin { lambda, theta } => gisin(lambda, theta),
            FamilyPoint::BellDiagonal { a } => bell_diagonal(a),
            FamilyPoint::CompDiagonal { a } => comp_diagonal(a),
            FamilyPoint::RhoF { q } => rho_f(q),
            FamilyPoint::RhoG { p, theta } => rho_g(p, theta),
            FamilyPoint::PureProduct { a, b } => pure_product(a, b),
        }
    }
}

/// No-violation condition after optimal local filtering for a Bell-diagonal
/// state. It coincides with the absolute-locality condition.
pub fn filter_local_bell_diag(s: &Spectrum, eps: f64) -> Verdict {
    let [a1, a2, a3, _] = s.values();
    let value = (2.0 * a1 + 2.0 * a2 - 1.0).powi(2) + (2.0 * a1 + 2.0 * a3 - 1.0).powi(2);
    Verdict::against_one(value, eps)
}

/// Filtering condition for `rho_g`, as published:
/// `q^2 (1 - cos 4 theta) > 2 sqrt(1 + 2q - q^2 - 2 q^2 cos 4 theta)`.
/// The mixing weight `p` of [`rho_g`] plays the role of `q`.
pub fn filter_nonlocal_rho_g(q: f64, theta: f64) -> bool {
    let c = (4.0 * theta).cos();
    let lhs = q * q * (1.0 - c);
    let radicand = (1.0 + 2.0 * q - q * q - 2.0 * q * q * c).max(0.0);
    lhs > 2.0 * radicand.sqrt()
}

/// Bisection on `F(state(x)) - 1` over `[lo, hi]`, where the state is
/// absolutely local at `lo` and not at `hi`.
pub fn bisect_threshold(
    f_of: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    iterations: usize,
) -> f64 {
    debug_assert!(
        f_of(lo) <= 1.0 && f_of(hi) > 1.0,
        "bracket does not straddle F = 1"
    );
    for _ in 0..iterations {
        let mid = 0.5 * (lo + hi);
        if f_of(mid) <= 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `F` of a family state, for threshold searches.
pub fn family_f(state: Result<DensityMatrix>) -> Result<f64> {
    Ok(f_spectral(&state?.spectrum()))
}

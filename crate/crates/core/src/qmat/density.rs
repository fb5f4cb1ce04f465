use nalgebra::SymmetricEigen;

use super::basis::{identity4, Mat4, Vec4, C64};
use super::bloch::BlochForm;
use super::spectrum::Spectrum;
use crate::{Error, Result};

pub const HERMITIAN_TOL: f64 = 1e-8;
pub const TRACE_TOL: f64 = 1e-8;
pub const PSD_TOL: f64 = 1e-10;

/// A two-qubit density operator: 4x4, Hermitian, positive semi-definite,
/// unit trace.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(Mat4);

impl DensityMatrix {
    /// Checks the three state invariants and returns the symmetrized matrix.
    ///
    /// Eigenvalues in `[-PSD_TOL, 0)` are clamped to zero and the state is
    /// renormalized; anything more negative is rejected.
    pub fn validate(raw: Mat4) -> Result<Self> {
        if raw.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let residual = hermitian_residual(&raw);
        if residual > HERMITIAN_TOL {
            return Err(Error::NotHermitian { residual });
        }
        let m = hermitize(&raw);
        let trace = m.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne {
                residual: (trace - 1.0).abs(),
            });
        }
        let eig = SymmetricEigen::new(m);
        let min = eig.eigenvalues.min();
        if min < -PSD_TOL {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
            });
        }
        if min < 0.0 {
            let clamped = eig.eigenvalues.map(|x| x.max(0.0));
            let total = clamped.sum();
            let mut out = Mat4::zeros();
            for k in 0..4 {
                let v = eig.eigenvectors.column(k);
                out += v * v.adjoint() * C64::new(clamped[k] / total, 0.0);
            }
            return Ok(Self(hermitize(&out)));
        }
        Ok(Self(m / C64::new(trace, 0.0)))
    }

    pub fn from_entries(entries: [[C64; 4]; 4]) -> Result<Self> {
        Self::validate(Mat4::from_fn(|i, j| entries[i][j]))
    }

    /// Wraps a matrix produced by operations that preserve the state
    /// invariants exactly (unitary conjugation, convex mixtures).
    pub(crate) fn from_trusted(m: Mat4) -> Self {
        Self(hermitize(&m))
    }

    pub fn maximally_mixed() -> Self {
        Self(identity4() * C64::new(0.25, 0.0))
    }

    /// `|psi><psi|` for a non-zero vector (normalized internally).
    pub fn pure(psi: &Vec4) -> Result<Self> {
        let n = psi.norm();
        if !n.is_finite() || n == 0.0 {
            return Err(Error::NotNormalized { norm_sqr: n * n });
        }
        let v = psi / C64::new(n, 0.0);
        Ok(Self::from_trusted(v * v.adjoint()))
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn entries(&self) -> [[C64; 4]; 4] {
        let mut out = [[C64::new(0.0, 0.0); 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, z) in row.iter_mut().enumerate() {
                *z = self.0[(i, j)];
            }
        }
        out
    }

    /// `U rho U^dag` for a unitary `u`. The caller guarantees unitarity.
    pub fn conjugate(&self, u: &Mat4) -> Self {
        Self::from_trusted(u * self.0 * u.adjoint())
    }

    /// Raw eigenvalues, unordered.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let ev = self.0.symmetric_eigenvalues();
        [ev[0], ev[1], ev[2], ev[3]]
    }

    pub fn spectrum(&self) -> Spectrum {
        Spectrum::from_eigenvalues(self.eigenvalues())
    }

    pub fn to_bloch(&self) -> BlochForm {
        BlochForm::from_density(self)
    }

    /// Convex combination `sum w_k rho_k`; weights must be non-negative and
    /// sum to one.
    pub(crate) fn mixture(parts: &[(f64, Mat4)]) -> Self {
        let mut m = Mat4::zeros();
        for (w, p) in parts {
            m += p * C64::new(*w, 0.0);
        }
        Self::from_trusted(m)
    }
}

fn hermitian_residual(m: &Mat4) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in i..4 {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn hermitize(m: &Mat4) -> Mat4 {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

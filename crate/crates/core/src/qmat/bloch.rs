use serde::{Deserialize, Serialize};

use super::basis::{identity2, kron, pauli, Mat4, C64};
use super::density::DensityMatrix;
use crate::Result;

/// Hilbert-Schmidt parameters of a two-qubit state:
///
/// `rho = 1/4 [I(x)I + u.s (x) I + I (x) v.s + sum_ij T_ij s_i (x) s_j]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochForm {
    pub u: [f64; 3],
    pub v: [f64; 3],
    #[serde(rename = "T")]
    pub t: [[f64; 3]; 3],
}

impl BlochForm {
    pub fn zero() -> Self {
        Self {
            u: [0.0; 3],
            v: [0.0; 3],
            t: [[0.0; 3]; 3],
        }
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        let expect = |op: Mat4| (m * op).trace().re;
        let mut out = Self::zero();
        for i in 0..3 {
            out.u[i] = expect(kron(&pauli(i), &identity2()));
            out.v[i] = expect(kron(&identity2(), &pauli(i)));
            for j in 0..3 {
                out.t[i][j] = expect(kron(&pauli(i), &pauli(j)));
            }
        }
        out
    }

    /// Reconstructs the operator without checking positivity.
    pub fn operator(&self) -> Mat4 {
        let r = |x: f64| C64::new(x, 0.0);
        let mut m = Mat4::identity();
        for i in 0..3 {
            m += kron(&pauli(i), &identity2()) * r(self.u[i]);
            m += kron(&identity2(), &pauli(i)) * r(self.v[i]);
            for j in 0..3 {
                m += kron(&pauli(i), &pauli(j)) * r(self.t[i][j]);
            }
        }
        m * r(0.25)
    }

    /// Reconstructs and validates the state; fails with `NotPsd` when the
    /// parameters do not describe a density matrix.
    pub fn to_density(&self) -> Result<DensityMatrix> {
        DensityMatrix::validate(self.operator())
    }

    /// `T^T T` as a row-major 3x3 array.
    pub fn correlation_gram(&self) -> [[f64; 3]; 3] {
        let mut g = [[0.0; 3]; 3];
        for (i, row) in g.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..3).map(|k| self.t[k][i] * self.t[k][j]).sum();
            }
        }
        g
    }

    /// Largest absolute difference over all 15 parameters.
    pub fn max_abs_diff(&self, other: &BlochForm) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..3 {
            worst = worst.max((self.u[i] - other.u[i]).abs());
            worst = worst.max((self.v[i] - other.v[i]).abs());
            for j in 0..3 {
                worst = worst.max((self.t[i][j] - other.t[i][j]).abs());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.u
            .iter()
            .chain(self.v.iter())
            .chain(self.t.iter().flatten())
            .all(|x| x.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::super::basis::{bell_projector, identity4};
    use super::*;
    use crate::Error;

    #[test]
    fn maximally_mixed_has_no_parameters() {
        let b = DensityMatrix::maximally_mixed().to_bloch();
        assert_eq!(b.max_abs_diff(&BlochForm::zero()), 0.0);
        let back = BlochForm::zero().to_density().unwrap();
        assert!((back.matrix() - identity4() * C64::new(0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn computational_mixture_has_only_t33() {
        let mut m = Mat4::zeros();
        m[(0, 0)] = C64::new(0.5, 0.0);
        m[(3, 3)] = C64::new(0.5, 0.0);
        let b = DensityMatrix::validate(m).unwrap().to_bloch();
        let mut expect = BlochForm::zero();
        expect.t[2][2] = 1.0;
        assert!(b.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn singlet_from_correlations() {
        let mut b = BlochForm::zero();
        b.t = [[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]];
        let rho = b.to_density().unwrap();
        assert!((rho.matrix() - bell_projector(3)).norm() < 1e-12);
    }

    #[test]
    fn tetrahedron_vertex_is_a_pure_bell_state() {
        let mut b = BlochForm::zero();
        b.t = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]];
        let rho = b.to_density().unwrap();
        assert!((rho.matrix() - bell_projector(4)).norm() < 1e-12);
    }

    #[test]
    fn outside_tetrahedron_is_not_psd() {
        let mut b = BlochForm::zero();
        b.t = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        match b.to_density() {
            Err(Error::NotPsd { min_eigenvalue }) => assert!((min_eigenvalue + 0.5).abs() < 1e-12),
            other => panic!("expected NotPsd, got {other:?}"),
        }
    }
}

use super::basis::{Mat2, Mat4, C64};
use super::density::DensityMatrix;
use crate::{Error, Result};

const NORM_TOL: f64 = 1e-10;

/// Pure state of qubits A, B, C; amplitude index is `4a + 2b + c`.
#[derive(Clone, Debug, PartialEq)]
pub struct PureThreeQubitState([C64; 8]);

/// Marginals of a pure three-qubit state.
#[derive(Clone, Debug)]
pub struct ReducedStates {
    pub ab: DensityMatrix,
    pub c: Mat2,
    /// Length of the Bloch vector of `c`.
    pub bloch_length: f64,
}

impl PureThreeQubitState {
    pub fn new(amplitudes: [C64; 8]) -> Result<Self> {
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self(amplitudes))
    }

    /// Normalizes any non-zero amplitude vector.
    pub fn normalized(amplitudes: [C64; 8]) -> Result<Self> {
        let n: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !n.is_finite() || n == 0.0 {
            return Err(Error::NotNormalized { norm_sqr: n * n });
        }
        Ok(Self(amplitudes.map(|z| z / n)))
    }

    pub fn ghz() -> Self {
        let mut a = [C64::new(0.0, 0.0); 8];
        a[0] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        a[7] = a[0];
        Self(a)
    }

    pub fn w() -> Self {
        let mut a = [C64::new(0.0, 0.0); 8];
        let x = C64::new(1.0 / 3f64.sqrt(), 0.0);
        a[1] = x;
        a[2] = x;
        a[4] = x;
        Self(a)
    }

    pub fn basis(index: usize) -> Self {
        let mut a = [C64::new(0.0, 0.0); 8];
        a[index] = C64::new(1.0, 0.0);
        Self(a)
    }

    pub fn amplitudes(&self) -> &[C64; 8] {
        &self.0
    }

    pub fn reduced_states(&self) -> ReducedStates {
        let psi = &self.0;
        let mut ab = Mat4::zeros();
        for r in 0..4 {
            for s in 0..4 {
                ab[(r, s)] = (0..2).map(|c| psi[2 * r + c] * psi[2 * s + c].conj()).sum();
            }
        }
        let mut c = Mat2::zeros();
        for x in 0..2 {
            for y in 0..2 {
                c[(x, y)] = (0..4).map(|r| psi[2 * r + x] * psi[2 * r + y].conj()).sum();
            }
        }
        let bx = 2.0 * c[(0, 1)].re;
        let by = -2.0 * c[(0, 1)].im;
        let bz = (c[(0, 0)] - c[(1, 1)]).re;
        ReducedStates {
            ab: DensityMatrix::from_trusted(ab),
            c,
            bloch_length: (bx * bx + by * by + bz * bz).sqrt(),
        }
    }
}

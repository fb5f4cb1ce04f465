use serde::Serialize;

use crate::{Error, Result};

const SUM_TOL: f64 = 1e-9;
const RANGE_TOL: f64 = 1e-10;

/// The four eigenvalues of a two-qubit state, sorted descending and summing
/// to one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Spectrum([f64; 4]);

impl Spectrum {
    /// Accepts any ordering; rejects values that cannot be a state spectrum.
    pub fn new(values: [f64; 4]) -> Result<Self> {
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidSpectrum("non-finite eigenvalue".into()));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidSpectrum(format!("eigenvalues sum to {sum}")));
        }
        if let Some(x) = values
            .iter()
            .find(|&&x| !(-RANGE_TOL..=1.0 + RANGE_TOL).contains(&x))
        {
            return Err(Error::InvalidSpectrum(format!(
                "eigenvalue {x} outside [0, 1]"
            )));
        }
        Ok(Self::from_eigenvalues(values))
    }

    /// Sorts, clamps round-off negatives to zero and renormalizes.
    pub(crate) fn from_eigenvalues(values: [f64; 4]) -> Self {
        let mut a = values.map(|x| x.max(0.0));
        a.sort_by(|x, y| y.total_cmp(x));
        let sum: f64 = a.iter().sum();
        Self(a.map(|x| x / sum))
    }

    pub fn values(&self) -> [f64; 4] {
        self.0
    }

    pub fn a1(&self) -> f64 {
        self.0[0]
    }
    pub fn a2(&self) -> f64 {
        self.0[1]
    }
    pub fn a3(&self) -> f64 {
        self.0[2]
    }
    pub fn a4(&self) -> f64 {
        self.0[3]
    }

    /// `sum a_i^2`, the purity of any state with this spectrum.
    pub fn purity(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn max_abs_diff(&self, other: &Spectrum) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

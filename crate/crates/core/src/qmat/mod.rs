//! Exact small-matrix foundation for two-qubit states.

mod basis;
mod bloch;
mod density;
mod spectrum;
pub mod state_file;
mod three_qubit;

pub use basis::{
    bell_projector, bell_state, identity2, identity4, kron, pauli, pauli_product, Mat2, Mat4, Vec4,
    C64,
};
pub use bloch::BlochForm;
pub use density::{DensityMatrix, HERMITIAN_TOL, PSD_TOL, TRACE_TOL};
pub use spectrum::Spectrum;
pub use three_qubit::{PureThreeQubitState, ReducedStates};

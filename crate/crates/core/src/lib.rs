//! Absolute Bell-CHSH locality of two-qubit states.
//!
//! A two-qubit state is *absolutely Bell-CHSH local* when no global unitary
//! change of basis can make it violate the CHSH inequality. This crate decides
//! that property from the spectrum of the density matrix, provides the Bloch
//! parameter criteria for Bell-diagonal and computational-diagonal states,
//! implements the nonlocal part of the two-qubit Cartan decomposition that
//! drives those criteria, and locates the set inside the purity ball.
//!
//! Module map:
//!
//! - [`qmat`]: density matrices, Bloch form, spectra, three-qubit partial traces
//! - [`criteria`]: Horodecki `M`, spectral function `F`, verdicts and reports
//! - [`cartan`]: the nonlocal unitary `U_d`, its Bloch action, Haar sampling
//! - [`purity`]: purity, distance to `I/4`, the two purity optimizations
//! - [`zoo`]: named state families and local-filtering predicates
//! - [`app`]: the command-line surface

#![forbid(unsafe_code)]

pub mod app;
pub mod cartan;
pub mod criteria;
mod error;
pub mod optim;
pub mod purity;
pub mod qmat;
pub mod random;
pub mod zoo;

pub use error::{Error, Result};

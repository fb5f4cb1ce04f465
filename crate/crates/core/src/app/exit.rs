//! Process exit codes.
//!
//! `0`, `1`, `2` carry the absolute-locality verdict of `analyze`
//! (absolutely local, not absolutely local, boundary). `oracle` and
//! `ensemble` exit `1` when a checked inclusion is violated. Codes above 2
//! are errors.

use crate::criteria::Verdict;
use crate::Error;

pub const ABSOLUTELY_LOCAL: i32 = 0;
pub const NOT_ABSOLUTELY_LOCAL: i32 = 1;
pub const BOUNDARY: i32 = 2;
pub const CHECK_FAILED: i32 = 1;

/// Malformed JSON or a state file with the wrong keys.
pub const PARSE: i32 = 64;
/// Well-formed input that is not a valid state or parameter.
pub const INVALID: i32 = 65;
/// Unreadable input file.
pub const IO: i32 = 66;
/// Bad command line.
pub const USAGE: i32 = 67;
pub const INTERNAL: i32 = 70;

pub fn for_verdict(v: Verdict) -> i32 {
    match v {
        Verdict::Pass => ABSOLUTELY_LOCAL,
        Verdict::Fail => NOT_ABSOLUTELY_LOCAL,
        Verdict::Boundary => BOUNDARY,
    }
}

pub fn for_error(e: &Error) -> i32 {
    match e {
        Error::StateFile(_) => PARSE,
        Error::Io(_) => IO,
        Error::NonFinite
        | Error::NotHermitian { .. }
        | Error::TraceNotOne { .. }
        | Error::NotPsd { .. }
        | Error::NotNormalized { .. }
        | Error::InvalidSpectrum(_)
        | Error::NotBellDiagonal { .. }
        | Error::NotComputationalDiagonal { .. }
        | Error::Domain { .. } => INVALID,
        Error::NotUnitary { .. } => INTERNAL,
    }
}

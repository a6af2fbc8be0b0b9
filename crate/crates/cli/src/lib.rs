//! Library half of the `twistvol` CLI: argument plumbing, record types, and
//! the emitters, kept separate so integration tests can exercise the exact
//! formatting that the binary prints.

pub mod angles;
pub mod checks;
pub mod output;
pub mod records;
pub mod run;

/// Stable exit codes: 0 success, 1 usage, 2 out of the hyperbolic regime,
/// 3 check-suite failure.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_OUT_OF_REGIME: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

//! Finite-field ground truth for the symbolic theta bimodule: exhaustive
//! Iwahori orbit censuses on truncated windows, double-coset enumeration
//! in affine flag varieties, function-level Hecke convolution, and the
//! named verification checks that compare measured q-exponents against
//! the symbolic bookkeeping.

pub mod checks;
pub mod convolve;
pub mod flag;
pub mod points;
pub mod trunc;

pub use checks::{Check, DEFAULT_BUDGET};
pub use convolve::{compare, convolve, Comparison, Func, Side};
pub use flag::{coset_reps, OracleError};
pub use points::{enumerate_orbits, expected_orbit_table, match_census, Window};

//! Exact computation of set-partition statistics.
//!
//! * [`exactnum`]: big integers, rationals, Bell and Stirling numbers.
//! * [`partitions`]: restricted-growth-string enumeration and codings.
//! * [`statistics`]: pattern-defined statistics and their products.
//! * [`recursions`]: marked-partition dynamic programs for the dimension and
//!   intertwining exponents.
//! * [`shifted_bell`]: shifted Bell polynomials and exact fitting.
//! * [`asymptotics`]: saddle-point estimates for Bell numbers and moments.

pub mod asymptotics;
pub mod error;
pub mod exactnum;
pub mod partitions;
pub mod recursions;
pub mod shifted_bell;
pub mod statistics;

pub use error::{Error, Result};
pub use exactnum::{Integer, Rational};
pub use partitions::{MarkedSetPartition, SetPartition};

//! Exact, brute-force and simulated analysis of the comparison-optimal
//! dual-pivot quicksort strategy "Count" and its oracle variant
//! "Clairvoyant".
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`] and [`expansion`]: rational arithmetic, harmonic numbers and
//!   asymptotic expansions with symbolic constants.
//! * [`paths`]: the random lattice-path model (two-stage and urn samplers,
//!   zero statistics, exact expectations and distributions).
//! * [`classify`] and [`sort`]: partitioning strategies, the abstract
//!   classifier and the instrumented in-place sorting algorithms.
//! * [`analysis`]: expected partitioning and sorting costs, the recurrence
//!   solver and the closed forms.
//! * [`optimality`]: dynamic programs over partitioning strategies.
//! * [`sweep`] and [`montecarlo`]: permutation sweeps and seeded
//!   simulations used by the command-line driver.

pub mod analysis;
pub mod classify;
mod error;
pub mod exact;
pub mod expansion;
pub mod montecarlo;
pub mod optimality;
pub mod paths;
pub mod sort;
pub mod sweep;

pub use error::{Error, Result};
pub use exact::Rational;

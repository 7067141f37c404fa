//! Exact computation, verification, and certification of two-color
//! off-diagonal Rado numbers for `x1 + x2 + ... + xm = x0`.
//!
//! Red guards the `k`-variable equation and blue the `l`-variable one,
//! `2 <= k <= l`. The crate covers:
//!
//! * closed-form values ([`equations`]),
//! * interval-set colorings of real intervals checked by Minkowski sumsets
//!   ([`interval`], [`coloring`]),
//! * exact discrete values by propagation search ([`discrete`]),
//! * forcing-chain certificates for the continuous upper bound
//!   ([`forcing`]),
//! * the command-line driver behind the `rado` binary ([`cli`]).
//!
//! All arithmetic is exact ([`Rational`]).

// Errors carry exact witnesses for diagnostics; they are cold paths.
#![allow(clippy::result_large_err)]

pub mod cli;
pub mod coloring;
pub mod discrete;
pub mod equations;
pub mod forcing;
pub mod interval;
pub mod rational;
pub mod reproduce;

pub use coloring::{ContinuousColoring, Verdict};
pub use equations::{check_witness, Color, ProblemSpec, SolutionWitness};
pub use interval::{Interval, IntervalSet};
pub use rational::Rational;

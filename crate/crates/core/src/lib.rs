//! Exact solver for `C1 x^2 + C2 = y^n` in coprime positive integers.
//!
//! The pipeline: [`sieve`] bounds the odd prime exponents through primitive
//! divisors of Lehmer sequences ([`lehmer`]) and arithmetic of
//! `Q(sqrt(-c))` ([`quadfield`]); [`solver`] then resolves each exponent
//! exactly; [`oracle`] is an independent brute-force cross-check holding the
//! published solution table.

pub mod cli;
pub mod error;
pub mod intmath;
pub mod lehmer;
pub mod oracle;
pub mod poly;
pub mod quadfield;
pub mod sieve;
pub mod solver;

pub use error::{Error, Result};
pub use sieve::{exponent_set, make_instance, EquationInstance, ExponentReport};
pub use solver::{solve, CaseTag, Solution, SolveOptions};

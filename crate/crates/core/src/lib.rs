//! Approximation of continuous 2π-periodic functions by de la Vallée Poussin means.
//!
//! The crate implements the summation operators S_k, σ_{n-1} and V_{n,p} together
//! with the machinery needed to bound the deviation f − V_{n,n/2}(f): modulus-of-
//! continuity estimation over a deterministic test corpus, a discrete minimax
//! oracle for best uniform approximation, the sine integral and the auxiliary
//! function g(x) whose zeros partition the deviation integral, and calculators
//! for the deviation bounds these operators satisfy.

pub mod bounds;
pub mod deviation;
mod error;
pub mod modulus;
pub mod quad;
pub mod specfun;
pub mod trigsum;

pub use error::{Error, Result};

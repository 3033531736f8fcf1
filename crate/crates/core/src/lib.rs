//! fibkit-core: exact arithmetic for the two-parameter Fibonacci and Lucas
//! polynomial families, their binomial analogues, and the number theory
//! built on top of them.
//!
//! The polynomials {n} and <n> are defined by the shared recursion
//! p(n) = s*p(n-1) + t*p(n-2) with seeds {0} = 0, {1} = 1 and <0> = 2,
//! <1> = s. Everything else in the crate derives from them: Fibonomial and
//! Lucanomial coefficients, Catalan analogues, 2-adic and d-adic valuation
//! formulas, and certified floors of reciprocal series tails. All
//! arithmetic is exact; no floating point appears anywhere.

pub mod exactmath;
pub mod fibonomials;
pub mod identities;
pub mod sequences;
pub mod series;
pub mod valuations;

pub use exactmath::{Integer, Rational};

//! Squareplus: rectifier numerics around `(x + sqrt(x^2 + b))/2`.
//!
//! Squareplus is an algebraic stand-in for softplus: one multiply, one add,
//! one square root — no `exp`, no `log` — while keeping the properties that
//! make softplus useful as a smooth rectifier. This crate packages:
//!
//! - [`activations`]: the scalar function, its first and second derivatives
//!   in closed form, the `b` reparameterization under input scaling, and the
//!   comparison set (stable/naive softplus, relu, elu, swish);
//! - [`kernels`]: allocation-free elementwise batch kernels in `f32`/`f64`,
//!   with a deterministic parallel mode that is bit-identical to sequential;
//! - [`bench`]: a paired-input microbenchmark harness for the runtime
//!   comparison across activations, with table/CSV/JSON reports;
//! - [`verify`]: executable checks for every identity, bound, and stability
//!   claim the crate makes, plus the scan that locates where naive softplus
//!   collapses to the identity function.
//!
//! The claims worth remembering: squareplus upper-bounds relu everywhere and
//! equals it at `b = 0` (bit-exactly here); at `b = 4 ln^2 2` it matches
//! softplus at the origin in value and slope, at `b = 4` in slope and
//! curvature; its first
//! derivative is an algebraic sigmoid strictly inside `(0, 1)`; its second
//! derivative at `b = 2` is the Student's t (two degrees of freedom) density;
//! and `squareplus(a*x, b)/a == squareplus(x, b/a^2)` lets one fold input
//! scaling into `b`.

pub mod activations;
pub mod bench;
pub mod fmt;
pub mod kernels;
pub mod real;
pub mod verify;

pub use activations::{
    elu, relu, rescale_b, sigmoid, softplus_naive, softplus_stable, squareplus, squareplus_d1,
    squareplus_d2, swish, Activation, ActivationError, B_SOFTPLUS_MATCH, B_UNIT,
};
pub use real::{Precision, Real};

//! Exact and asymptotic analysis of the first swap of a uniform random
//! sorting network.
//!
//! A sorting network on `n` wires is a reduced decomposition of the
//! reverse permutation `n, n-1, ..., 1`: a sequence of `C(n,2)` adjacent
//! transpositions whose product is the reverse permutation with every
//! prefix reduced. The location `X` of the first transposition of a
//! uniformly chosen network has an explicit product-form law, and the
//! rescaled variable `2X/n - 1` converges to the semicircle distribution.
//!
//! This crate provides:
//!
//! - [`first_letter`]: the exact rational law of `X`, its discrete score
//!   `psi`, the weight function `c`, and exact moment identities;
//! - [`stein_discrete`]: zero-mean functional identities for integer-interval
//!   probability mass functions, evaluated in exact rational arithmetic;
//! - [`continuous`]: the semicircle and Beta densities, CDFs, and moments;
//! - [`stein_beta`]: a solver for the Beta Stein equation with sup-norm
//!   bound checks;
//! - [`wasserstein`]: the 1-D Wasserstein distance between the rescaled
//!   discrete law and its continuous limit, with certified two-sided bounds;
//! - [`words`]: exhaustive enumeration of sorting networks at small `n`,
//!   Yang–Baxter statistics, and seeded sampling — the combinatorial ground
//!   truth everything else is checked against;
//! - [`selfcheck`]: the end-to-end verification sweep behind the CLI's
//!   `report` subcommand.
//!
//! Everything discrete is exact (`num-rational` big rationals, no rounding);
//! everything continuous is double precision with explicit tolerances.
//!
//! With the default `parallel` feature the sweeps over `n` and the
//! enumeration folds run on rayon; disabling it gives a fully sequential
//! build with identical results.

pub mod continuous;
pub mod error;
pub mod first_letter;
pub mod quadrature;
pub mod rational;
pub mod rng;
pub mod selfcheck;
pub mod special;
pub mod stein_beta;
pub mod stein_discrete;
pub mod wasserstein;
pub mod words;

pub use error::{Error, Result};
pub use rational::Rat;

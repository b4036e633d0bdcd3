//! Exact certification of error bounds for piecewise affine functions.
//!
//! Functions are given in min-max form
//! `f(x) = min_i max_j (a_ij + <v_ij, x>)` with rational data. The crate
//! decides the existence of error bounds `tau * dist(x, S(f)) <= [f]_+(x)`
//! on bounded sets, cones and finite unions of polyhedra, and cross-checks
//! every verdict with exact LP distances and seeded sampling.
//!
//! The crate is `no_std` (with `alloc`); the `std` feature only adds
//! `std::error::Error` impls.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod certify;
pub mod error;
pub mod numeric;
pub mod polyhedra;
pub mod pwa;

pub use error::{Error, Result};
pub use numeric::Rational;

//! Rényi entropies of finite discrete distributions and the exact joint
//! range of two or three entropy orders.
//!
//! The crate is organized around a small set of domain types:
//!
//! - [`Order`] — an extended non-negative real α ∈ [0, ∞] selecting which
//!   Rényi entropy H_α is meant, with the limit cases 0, 1 and ∞ first-class.
//! - [`ProbVector`] — a finite probability distribution p₁,…,pₙ.
//! - [`UniformMixture`] — a convex combination of uniform distributions
//!   U_k on nested supports; the boundary of every joint entropy range is
//!   parametrized by such mixtures.
//! - [`EntropyValue`] — an entropy in natural-log units with base
//!   conversion at the presentation boundary.
//!
//! On top of these, [`diagram2`] computes tight upper/lower bounds and the
//! boundary curve for the joint range of two orders, [`diagram3`] does the
//! same for three orders (boundary surfaces, 2-D inversion, bound queries),
//! [`vandermonde`] provides the generalized Vandermonde determinant and the
//! orientation-sign diagnostic that underpins the boundary argument, and
//! [`verify`] is an independent brute-force oracle (simplex enumeration and
//! Monte-Carlo sampling) used to validate the analytic bounds.
//!
//! All numeric work is done in natural-log units on `f64`, with summation
//! order canonicalized so results are reproducible bit-for-bit across runs
//! and platforms. The crate is `no_std` (it allocates, but performs no IO);
//! float transcendentals come from `libm`.

#![no_std]
#![deny(missing_docs)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod diagram2;
pub mod diagram3;
mod dist;
mod entropy;
mod error;
mod math;
mod order;
mod solve;
pub mod vandermonde;
pub mod verify;

pub use diagram2::{BoundQuery2, BoundResult, CurveSegment, DiagramCurve};
pub use diagram3::{
    BoundQuery3, DiagramSurface, SimplexGrid, SurfaceCell, SurfaceKind,
};
pub use dist::{
    product_distribution, realize_mixture, uniform, MixtureComponent, ProbVector, UniformMixture,
};
pub use entropy::{mixture_entropy, renyi_entropy, EntropyValue, LogBase};
pub use error::{Error, Result};
pub use order::{Order, OrderKind};

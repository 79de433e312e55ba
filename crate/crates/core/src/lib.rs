//! Exact constructions of convex partitions of ℝ^d in which every piece
//! captures a positive amount (or a guaranteed fraction) of many measures.
//!
//! Everything here is pure computation over exact rationals and needs only
//! `alloc`. File formats, rendering and the command line live in the
//! companion `fairfan` crate.
//!
//! * [`geometry`]: points, hyperplanes, convex regions, orientation, ridge
//!   discovery and angular projection about a codimension-two flat.
//! * [`measures`]: weighted atom clouds with bump supports and mass
//!   evaluation against partitions.
//! * [`fan`]: the rotating-hyperplane fan construction.
//! * [`hamsandwich`]: planar ham-sandwich cuts with fractional boundary
//!   shares and their recursion into `2^k` pieces.
//! * [`pipelines`]: aggregate-measure reductions, the pigeonhole selector
//!   and the ε/α group planners.
//! * [`adversarial`]: lower-bound instances and interval oracles.
//! * [`arrangement`]: zero-pattern intersection posets and chain dimensions.
#![no_std]

extern crate alloc;

pub mod adversarial;
pub mod arrangement;
mod error;
pub mod fan;
pub mod geometry;
pub mod hamsandwich;
mod linalg;
pub mod measures;
pub mod partition;
pub mod pipelines;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;

//! Exact intersection-lattice calculus for smooth projective surfaces with
//! simple normal crossing boundaries.
//!
//! The crate is `no_std` (it needs `alloc`). Every number is an exact
//! rational; there is no floating point anywhere.
//!
//! Layers, bottom up:
//!
//! * [`lattice`]: intersection lattices, divisor classes, rational divisors.
//! * [`model`]: tracked curves on a lattice, validation, blow-ups and
//!   contractions.
//! * [`peeling`]: twigs, bark, superfluous components, minimalization.
//! * [`classification`]: nefness, Zariski decomposition, log Kodaira
//!   dimension.
//! * [`extraction`]: reading fibration data off a model.
//! * [`fibration`]: the degree of the base divisor `δ_m`, the fibration
//!   criterion, exact thresholds and the exhaustive case verification.

#![no_std]

extern crate alloc;

pub mod classification;
pub mod extraction;
pub mod fibration;
pub mod lattice;
pub mod linalg;
pub mod model;
pub mod peeling;
pub mod rational;

pub use lattice::{DivisorClass, IntersectionLattice, LatticeError, QDivisor};
pub use model::{BaseSurface, BlowUpRecord, BlowUpTarget, Curve, ModelError, SurfaceModel};
pub use num_bigint::BigInt;
pub use num_rational::Rational64;
pub use rational::Rational;

//! Unicellular (one-face) maps as permutation triples.
//!
//! The crate covers the combinatorics of rooted one-face maps: validation and
//! canonical forms ([`map`]), trisections ([`trisect`]), the gluing/slicing
//! bijections that move between genera ([`surgery`]), exact enumeration
//! ([`count`]), exhaustive enumeration for small sizes ([`oracle`]) and exact
//! uniform random generation ([`sampler`]).
//!
//! Everything here is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod count;
pub mod labels;
pub mod map;
pub mod oracle;
pub mod perm;
mod poly;
pub mod sampler;
pub mod surgery;
pub mod trisect;

pub use labels::{LabelError, LabeledUnicellularMap};
pub use map::{MapError, TourRank, UnicellularMap};
pub use perm::Permutation;
pub use poly::Polynomial;
pub use surgery::{MarkedTrisection, MarkedVertices, PsiInput, SurgeryError};
pub use trisect::{StepKind, TrisectionInfo, TrisectionKind};

/// Arbitrary-precision integer used for every count.
pub type ExactInt = num_bigint::BigInt;
/// Reduced fraction of [`ExactInt`]s.
pub type ExactRational = num_rational::BigRational;

//! Exact computations for the monoid algebra of all relations on a finite set.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure
//! algorithms. File formats, parallel drivers and the command-line front end
//! live in the companion `relmon` crate.
//!
//! Layout:
//!
//! * [`relation`]: relations as bit-matrices, composition, conjugation,
//!   boolean rank and essentiality.
//! * [`perm`]: permutations of `{0, .., n-1}`.
//! * [`poset`]: canonical forms, automorphism groups and isomorph-free
//!   generation of partial orders.
//! * [`lattice`]: the downset lattice of a poset and the invariant `g`.
//! * [`dims`]: simple-module dimensions and the Jacobson radical dimension.
//! * [`functor`]: the lattice functor action on maps `X -> T` and the sets `B`.
//! * [`oracle`]: the trace-form radical for `n <= 3`, by exact elimination.

#![no_std]

extern crate alloc;

pub mod dims;
pub mod error;
pub mod functor;
pub mod lattice;
pub mod oracle;
pub mod perm;
pub mod poset;
pub mod relation;

pub use dims::{BigCount, Catalog, ClassData};
pub use error::{Error, Result};
pub use functor::LatticeMap;
pub use lattice::{DownsetLattice, GInfo};
pub use perm::Permutation;
pub use poset::PosetClass;
pub use relation::Relation;

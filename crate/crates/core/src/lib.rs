//! Exact symbolic computations around the minimal operad `M`.
//!
//! The crate covers
//!
//! * admissible labeled planar trees, their enumeration and angle combinatorics ([`trees`]),
//! * Koszul sign bookkeeping for orientation words ([`signs`]),
//! * the dg-operad `M` itself: degrees, partial compositions and the differential
//!   ([`minimal_operad`]),
//! * Hochschild cochains of finite dimensional A∞-algebras with the Gerstenhaber
//!   bracket ([`hochschild`]) and the action of `M` on them ([`action`]),
//! * the cofree-tree resolution `P_R` of `R ∈ {M, As}` ([`resolution`]) and the
//!   horizontal/vertical orders carried by its generators ([`orders`]),
//! * exact Betti numbers of the resulting complexes ([`homology`]),
//! * a command line driver ([`cli`]).
//!
//! All arithmetic is exact over the rationals.

pub mod action;
pub mod chain;
pub mod cli;
pub mod hochschild;
pub mod homology;
pub mod minimal_operad;
pub mod operad;
pub mod orders;
pub mod resolution;
pub mod scalar;
pub mod signs;
pub mod trees;
pub mod verify;

pub use chain::Chain;
pub use scalar::Scalar;

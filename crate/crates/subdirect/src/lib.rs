//! Subdirect products of 2- and 3-factor direct products of finite groups.
//!
//! The crate builds fully enumerated finite groups (symmetric groups up to
//! S8 and anything generated from permutations), enumerates their subgroup
//! lattices, and studies the subgroups of direct products `G1 x G2` and
//! `G1 x G2 x G3` with surjective projections:
//!
//! - [`goursat2`] — the classic two-factor correspondence between subgroups
//!   and section-isomorphism tuples, in both directions;
//! - [`product`] — the projection/injectivity vocabulary for three factors
//!   and the derived subgroup systems of a subdirect product;
//! - [`structure3`] — example constructions, the structure theorem for
//!   2-factor injective subdirect products, the two correspondence theorems
//!   (the `Delta = H` case and the degenerate case), and the semidirect
//!   injection;
//! - [`counting`] — closed-form counts of subdirect products of two and
//!   three symmetric groups;
//! - [`oracle`] — theory-independent brute-force censuses that validate all
//!   of the above at desk scale;
//! - [`verify`] — the named invariant suites wired into the CLI.

pub mod bits;
pub mod counting;
pub mod error;
pub mod goursat2;
pub mod group;
pub mod oracle;
pub mod perm;
pub mod product;
pub mod structure3;
pub mod verify;

pub use error::{Error, Result};

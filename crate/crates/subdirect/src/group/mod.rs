//! Fully enumerated finite groups: construction, subgroup lattices,
//! quotients, and isomorphism search.

mod finite_group;
mod hom;
mod lattice;
mod spec;
mod subgroup;

pub use finite_group::{FiniteGroup, MAX_ORDER};
pub use hom::{are_isomorphic, find_isomorphisms, min_generating_set, Homomorphism};
pub use lattice::{
    all_subgroups, all_subgroups_naive, normal_subgroups, DEFAULT_LATTICE_BOUND,
    LATTICE_SOFT_WARN, NAIVE_BOUND,
};
pub use spec::parse_group_spec;
pub use subgroup::{quotient, Quotient, Subgroup};

//! Constructions and structure theory of 2-factor injective subdirect
//! products of three factors: the example families, the structure theorem
//! witness, the two correspondence theorems, and the semidirect injection.

pub mod degenerate;
pub mod examples;
pub mod nondiagonal;
pub mod semidirect;
pub mod witness;

pub use degenerate::{graph_tuple, DegenerateTuple};
pub use examples::{
    build_abc_group, build_diagonal, build_interleaved, build_semidirect_example,
    lift_through_cover,
};
pub use nondiagonal::NonDiagonalTuple;
pub use semidirect::{
    extract_semidirect_data, realize_semidirect_pair, reference_delta, SemidirectData,
};
pub use witness::{build_structure_witness, check_h_equations, StructureWitness};

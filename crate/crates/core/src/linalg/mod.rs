//! Exact integer linear algebra: sparse matrices, Smith normal form,
//! lattices and finitely generated abelian groups.

pub mod group;
pub mod lattice;
pub mod matrix;
pub mod snf;

pub use group::{is_exact_at, AbelianGroupInvariants, GroupMap, PresentedGroup};
pub use lattice::{
    cokernel_invariants, kernel_basis, lattice_basis, lattice_contains, lattice_eq, preimage,
    rank, subquotient_invariants, Solver, Subquotient,
};
pub use matrix::SparseIntMatrix;
pub use snf::{smith_normal_form, SnfResult};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("column {column} of the boundary is not an integral combination of the cycle basis")]
    Containment { column: usize },
    #[error("vector is not in the lattice")]
    NotInLattice,
    #[error("relation of source generator {generator} does not map to a relation")]
    IllDefinedMap { generator: usize },
    #[error("matrix shapes do not match")]
    ShapeMismatch,
}

//! Finite element machinery: quadrature, the nodal space, sparse assembly,
//! Dirichlet elimination and the SPD solvers.

pub mod assembly;
pub mod banded;
pub mod dirichlet;
pub mod quadrature;
pub mod solver;
pub mod space;
pub mod sparse;

pub use assembly::{
    assemble_joule_load, assemble_load, assemble_mass, assemble_stiffness, assemble_weighted_stiffness, CoeffField,
};
pub use banded::BandedCholesky;
pub use dirichlet::{apply_dirichlet, reassemble, ReducedSystem};
pub use quadrature::QuadRule;
pub use solver::{solve_spd, solve_spd_from, SolveStats};
pub use space::FeSpace;
pub use sparse::SparseOperator;

//! Representation theory of the symmetric and general linear groups.

mod gl2;
mod gt;
mod irrep;
mod lie;
mod partition;
mod schur;

pub use gl2::{gl2_irrep, symmetric_power};
pub use gt::{gt_patterns, pattern_index, GtPattern};
pub use irrep::{gl_irrep, irrep_context, GlIrrep, GL2_EXPLICIT_MAX_DEGREE};
pub use lie::{LieGenerators, SparseOp};
pub use partition::{
    checked_dim_sym_irrep, dim_gl_irrep, dim_sym_irrep, log2_dim_gl_irrep, log2_dim_sym_irrep, partitions_of,
    Partition,
};
pub use schur::{schur_poly, schur_poly_bialternant, schur_poly_branching, schur_poly_real, schur_poly_tableaux};

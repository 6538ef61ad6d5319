//! The horizontal and vertical differentials, windows of the resulting
//! double complex, total cohomology and classical reference computations.

mod assemble;
mod cohomology;
mod diff;
mod oracles;

pub use assemble::{Bicomplex, Slot, Window};
pub use cohomology::{slot_offset, total_cohomology, total_differential, total_dim, CohomologyTable};
pub use diff::{bracket_with_m_decomposition, d1, d2, iota};
pub use oracles::{bar_complex, bar_homology, gerstenhaber_oracle, hochschild_oracle_differential};

//! Checks of the structures carried by the complex: vanishing for unital
//! algebras, the exterior-algebra answer for polynomials without constant
//! term and its Clifford bracket, and the Maurer–Cartan / Q-complex toolkit.

mod clifford;
mod lie;
mod mc;
mod vanishing;

pub use lie::{
    binomial, ce_differential, gauge_invariants, q_complex_check, random_invertible, sort_with_sign, subsets,
    LieStructure, QComplex, QReport,
};
pub use vanishing::{verify_sv0_cohomology, verify_unital_vanishing, CliffordTable, Sv0Report, UnitalReport};
pub use clifford::{
    clifford_bracket_table, clifford_representatives, clifford_supercommutator, representative,
    representatives_independent, BracketEntry, CliffordBracketReport, CliffordElement,
};
pub use mc::{gutt_first_order, mc_check, mc_check_weighted, McComponent, McReport};

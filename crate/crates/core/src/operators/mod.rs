//! Multilinear operators `A^{⊗k} -> A^{⊗l}`, their insertion into tensor
//! powers, and the bracket obtained by commuting insertions.

mod bracket;
mod op;
mod sum;

pub use bracket::{
    bracket, bracket_ops, bracket_with, compose_overlap, connected_bracket, insertion, insertion_commutator_oracle,
    insertion_sum, oracle_identity_holds, Overlaps,
};
pub use op::{MultilinearOp, OpRecord};
pub(crate) use op::sign_of_product;
pub use sum::{OpSum, OpSumRecord};

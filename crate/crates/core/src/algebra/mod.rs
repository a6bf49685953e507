//! Exact arithmetic in towers of simple algebraic extensions of ℚ and 2×2
//! matrices over them.

mod matrix;
mod representation;
mod ring;

pub use matrix::Matrix2;
pub use representation::{
    build_representation, nonabelian_witness, verify_representation, Branch, Commutator,
    RelationCheck, RepError, Representation, RepresentationReport,
};
pub use ring::{AlgebraError, Elem, QuotientRing};

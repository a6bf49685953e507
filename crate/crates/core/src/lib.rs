//! Positive homogeneous monoid presentations: word problem, divisibility,
//! fundamental and quasi-central elements, exact matrix representations and
//! discriminant checks.
//!
//! The crate is `no_std` with `alloc`. File IO and the command line live in
//! the `posmon` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod catalog;
pub mod discriminant;
pub mod divisibility;
pub mod presentation;
pub mod rewrite;
pub mod structure;
pub mod word;

pub use catalog::{catalog_lookup, CatalogError, Family, ListedFundamental, TypeLabel};
pub use divisibility::{DivisionWitness, LcmCertificate, MultipleSet, Side};
pub use presentation::{Presentation, PresentationError, Relation};
pub use rewrite::{
    Derivation, DerivationStep, Direction, EquivClass, MemberRef, Partition, ReplayError,
    Rewriter, SearchBudget,
};
pub use word::{Letter, Packing, Word};

/// Failure of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("search budget exhausted after visiting {visited} words")]
    BudgetExceeded { visited: u64 },
    #[error("cannot enumerate all words of length {len} over {alphabet} letters")]
    TooLarge { len: usize, alphabet: usize },
}

/// Three-valued answer of a budgeted decision procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Inconclusive { visited: u64 },
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn inconclusive(e: SearchError) -> Self {
        match e {
            SearchError::BudgetExceeded { visited } => Verdict::Inconclusive { visited },
            SearchError::TooLarge { .. } => Verdict::Inconclusive { visited: 0 },
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

//! The seventeen presentations over `a, b, c`, plus the alternative two-letter
//! presentation of `B_ii`, and the listed fundamental elements of each type.
//!
//! Presentation data lives in `data/catalog/*.pres` and is parsed on lookup;
//! parsing audits homogeneity of every relation, so a transcription error
//! surfaces as a [`CatalogError`] rather than a silently wrong monoid.

use core::fmt;
use core::str::FromStr;

use crate::presentation::{Presentation, PresentationError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeLabel {
    Ai,
    Aii,
    Bi,
    Bii,
    Biii,
    Biv,
    Bv,
    Bvi,
    Bvii,
    Hi,
    Hii,
    Hiii,
    Hiv,
    Hv,
    Hvi,
    Hvii,
    Hviii,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    A,
    B,
    H,
}

impl TypeLabel {
    pub const ALL: [TypeLabel; 17] = [
        TypeLabel::Ai,
        TypeLabel::Aii,
        TypeLabel::Bi,
        TypeLabel::Bii,
        TypeLabel::Biii,
        TypeLabel::Biv,
        TypeLabel::Bv,
        TypeLabel::Bvi,
        TypeLabel::Bvii,
        TypeLabel::Hi,
        TypeLabel::Hii,
        TypeLabel::Hiii,
        TypeLabel::Hiv,
        TypeLabel::Hv,
        TypeLabel::Hvi,
        TypeLabel::Hvii,
        TypeLabel::Hviii,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TypeLabel::Ai => "A_i",
            TypeLabel::Aii => "A_ii",
            TypeLabel::Bi => "B_i",
            TypeLabel::Bii => "B_ii",
            TypeLabel::Biii => "B_iii",
            TypeLabel::Biv => "B_iv",
            TypeLabel::Bv => "B_v",
            TypeLabel::Bvi => "B_vi",
            TypeLabel::Bvii => "B_vii",
            TypeLabel::Hi => "H_i",
            TypeLabel::Hii => "H_ii",
            TypeLabel::Hiii => "H_iii",
            TypeLabel::Hiv => "H_iv",
            TypeLabel::Hv => "H_v",
            TypeLabel::Hvi => "H_vi",
            TypeLabel::Hvii => "H_vii",
            TypeLabel::Hviii => "H_viii",
        }
    }

    pub fn family(self) -> Family {
        match self.as_str().as_bytes()[0] {
            b'A' => Family::A,
            b'B' => Family::B,
            _ => Family::H,
        }
    }

    fn source(self) -> &'static str {
        match self {
            TypeLabel::Ai => include_str!("../data/catalog/A_i.pres"),
            TypeLabel::Aii => include_str!("../data/catalog/A_ii.pres"),
            TypeLabel::Bi => include_str!("../data/catalog/B_i.pres"),
            TypeLabel::Bii => include_str!("../data/catalog/B_ii.pres"),
            TypeLabel::Biii => include_str!("../data/catalog/B_iii.pres"),
            TypeLabel::Biv => include_str!("../data/catalog/B_iv.pres"),
            TypeLabel::Bv => include_str!("../data/catalog/B_v.pres"),
            TypeLabel::Bvi => include_str!("../data/catalog/B_vi.pres"),
            TypeLabel::Bvii => include_str!("../data/catalog/B_vii.pres"),
            TypeLabel::Hi => include_str!("../data/catalog/H_i.pres"),
            TypeLabel::Hii => include_str!("../data/catalog/H_ii.pres"),
            TypeLabel::Hiii => include_str!("../data/catalog/H_iii.pres"),
            TypeLabel::Hiv => include_str!("../data/catalog/H_iv.pres"),
            TypeLabel::Hv => include_str!("../data/catalog/H_v.pres"),
            TypeLabel::Hvi => include_str!("../data/catalog/H_vi.pres"),
            TypeLabel::Hvii => include_str!("../data/catalog/H_vii.pres"),
            TypeLabel::Hviii => include_str!("../data/catalog/H_viii.pres"),
        }
    }

    /// The catalog presentation as written (not normalized).
    pub fn presentation(self) -> Result<Presentation, CatalogError> {
        Presentation::parse(self.source()).map_err(|source| CatalogError::Corrupt {
            label: self.as_str(),
            source,
        })
    }

    /// Fundamental elements listed for this type with their permutations.
    pub fn listed_fundamentals(self) -> &'static [ListedFundamental] {
        listed_fundamentals(self)
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TypeLabel {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TypeLabel::ALL
            .iter()
            .copied()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| CatalogError::UnknownType(s.into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown type label {0:?}")]
    UnknownType(alloc::string::String),
    #[error("catalog entry {label} failed to load: {source}")]
    Corrupt {
        label: &'static str,
        #[source]
        source: PresentationError,
    },
}

/// Label of the alternative presentation of `B_ii`.
pub const B_II_ALT: &str = "B_ii_alt";

/// Look up one of the seventeen type labels or [`B_II_ALT`].
pub fn catalog_lookup(name: &str) -> Result<Presentation, CatalogError> {
    if name.eq_ignore_ascii_case(B_II_ALT) {
        return Presentation::parse(include_str!("../data/catalog/B_ii_alt.pres")).map_err(
            |source| CatalogError::Corrupt {
                label: B_II_ALT,
                source,
            },
        );
    }
    name.parse::<TypeLabel>()?.presentation()
}

/// A listed fundamental element. Words and permutation images use the letter
/// names `a b c`; `sigma` gives the images of `a`, `b`, `c` in that order
/// (a letter identified with another takes its representative's image).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ListedFundamental {
    pub name: &'static str,
    pub word: &'static str,
    /// Other words listed as equivalent to `word`.
    pub aliases: &'static [&'static str],
    pub sigma: &'static str,
}

const fn lf(
    name: &'static str,
    word: &'static str,
    aliases: &'static [&'static str],
    sigma: &'static str,
) -> ListedFundamental {
    ListedFundamental {
        name,
        word,
        aliases,
        sigma,
    }
}

const ID: &str = "abc";
const ONE_CLASS: &str = "aaa";

fn listed_fundamentals(t: TypeLabel) -> &'static [ListedFundamental] {
    use TypeLabel::*;
    const A_I: &[ListedFundamental] = &[lf("Delta_A_i", "cbacba", &[], "cba")];
    const A_II: &[ListedFundamental] = &[lf("Delta_A_ii", "aba", &[], "baa")];
    const B_I: &[ListedFundamental] = &[lf("Delta_B_i", "cbacbacba", &[], ID)];
    const B_II: &[ListedFundamental] = &[
        lf("Delta_B_ii1", "ababab", &[], ID),
        lf("Delta_B_ii2", "bccbccbcc", &["cbacbacba"], ID),
    ];
    const B_III: &[ListedFundamental] = &[lf("Delta_B_iii", "ac", &[], "aac")];
    const B_IV: &[ListedFundamental] = &[lf("Delta_B_iv", "abcb", &[], "acb")];
    const B_V: &[ListedFundamental] = &[lf("Delta_B_v", "a", &[], ONE_CLASS)];
    const B_VI: &[ListedFundamental] = &[
        lf("Delta_B_vi1", "aaaaa", &["bbbbb", "ccccc"], ID),
        lf("Delta_B_vi2", "abaaba", &[], ID),
        lf("Delta_B_vi3", "bccabcb", &[], ID),
        lf("Delta_B_vi4", "bbacbbac", &[], ID),
        lf("Delta_B_vi5", "acacaacaca", &[], ID),
        lf("Delta_B_vi6", "cbacbacba", &[], ID),
        lf("Delta_B_vi7", "cabcabcabcabcab", &[], ID),
    ];
    const B_VII: &[ListedFundamental] = &[lf("Delta_B_vii", "a", &[], ONE_CLASS)];
    const H_I: &[ListedFundamental] = &[lf("Delta_H_i", "cbacbacbacbacba", &[], ID)];
    const H_II: &[ListedFundamental] = &[
        lf("Delta_H_ii1", "acacaacaca", &["acacacacac"], ID),
        lf("Delta_H_ii2", "babacbabacbabac", &["cbacbacbacbacba"], ID),
    ];
    const H_III: &[ListedFundamental] = &[
        lf("Delta_H_iii1", "aaaaa", &["bbbbb", "ccccc"], ID),
        lf("Delta_H_iii2", "abaaba", &[], ID),
        lf("Delta_H_iii3", "accbaca", &[], ID),
        lf("Delta_H_iii4", "bcbabcba", &[], ID),
        lf("Delta_H_iii5", "bcbcbbcbcb", &["bcbcbcbcbc"], ID),
        lf("Delta_H_iii6", "abcabcabc", &[], ID),
        lf(
            "Delta_H_iii7",
            "cbacbacbacbacba",
            &["acbacbacbacbacb", "bacbacbacbacbac"],
            ID,
        ),
    ];
    const H_IV: &[ListedFundamental] = &[lf("Delta_H_iv", "a", &[], ONE_CLASS)];
    const H_V: &[ListedFundamental] = &[lf("Delta_H_v", "a", &[], ONE_CLASS)];
    const H_VI: &[ListedFundamental] = &[lf("Delta_H_vi", "a", &[], ONE_CLASS)];
    const H_VII: &[ListedFundamental] = &[lf("Delta_H_vii", "a", &[], ONE_CLASS)];
    const H_VIII: &[ListedFundamental] = &[lf("Delta_H_viii", "a", &[], ONE_CLASS)];
    match t {
        Ai => A_I,
        Aii => A_II,
        Bi => B_I,
        Bii => B_II,
        Biii => B_III,
        Biv => B_IV,
        Bv => B_V,
        Bvi => B_VI,
        Bvii => B_VII,
        Hi => H_I,
        Hii => H_II,
        Hiii => H_III,
        Hiv => H_IV,
        Hv => H_V,
        Hvi => H_VI,
        Hvii => H_VII,
        Hviii => H_VIII,
    }
}

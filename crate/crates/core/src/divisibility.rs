//! Left and right divisibility, quotients and common multiples.
//!
//! `u` left-divides `w` when some member of the class of `w` starts with a
//! member of the class of `u`; the right side is symmetric with suffixes.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::rewrite::{EquivClass, MemberRef, Rewriter, SearchBudget};
use crate::word::Word;
use crate::SearchError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }

    /// Concatenate with `factor` on this side of `rest`.
    pub fn join(self, factor: &Word, rest: &Word) -> Word {
        match self {
            Side::Left => factor.concat(rest),
            Side::Right => rest.concat(factor),
        }
    }
}

/// A factorization `multiple = divisor·quotient` (left) or
/// `multiple = quotient·divisor` (right) with `multiple` in the class of the
/// dividend and `divisor` in the class of the divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionWitness {
    pub multiple: Word,
    pub divisor: Word,
    pub quotient: Word,
}

/// Canonical representatives of the classes of a fixed length divisible by
/// both factors on one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipleSet {
    pub side: Side,
    pub factors: (Word, Word),
    pub length: usize,
    pub multiples: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LcmCertificate {
    /// `lcm` divides every common multiple up to `checked_up_to`.
    LcmFound { lcm: Word, checked_up_to: usize },
    /// `minimal` is a common multiple of least length and does not divide the
    /// common multiple `other` of length `length`.
    NoLcmUpTo {
        length: usize,
        minimal: Word,
        other: Word,
    },
    /// No common multiple exists up to `length`.
    NoCommonMultipleUpTo { length: usize },
}

pub(crate) fn factor_in(m: MemberRef<'_>, n: usize, side: Side, target: &EquivClass) -> bool {
    match m {
        MemberRef::Packed { packing, len, code } => {
            let part = match side {
                Side::Left => packing.prefix(code, len, n),
                Side::Right => packing.suffix(code, n),
            };
            target.contains_code(part).unwrap_or(false)
        }
        MemberRef::Plain(w) => {
            let part = match side {
                Side::Left => w.prefix(n),
                Side::Right => w.suffix(n),
            };
            target.contains(&part)
        }
    }
}

/// Split a word into (factor of length `n` on `side`, remainder).
pub(crate) fn split(w: &Word, n: usize, side: Side) -> (Word, Word) {
    match side {
        Side::Left => (w.prefix(n), w.suffix(w.len() - n)),
        Side::Right => (w.suffix(n), w.prefix(w.len() - n)),
    }
}

/// Decide whether `u` divides `w` on `side`; `Ok(None)` is a proof of
/// non-divisibility.
pub fn divides(
    rw: &Rewriter,
    u: &Word,
    w: &Word,
    side: Side,
    budget: SearchBudget,
) -> Result<Option<DivisionWitness>, SearchError> {
    let n = u.len();
    if n > w.len() {
        return Ok(None);
    }
    let cu = rw.class(u, budget)?;
    let hit = rw.find_member(w, budget, |m| {
        factor_in(m, n, side, &cu).then(|| m.to_word())
    })?;
    Ok(hit.map(|multiple| {
        let (divisor, quotient) = split(&multiple, n, side);
        DivisionWitness {
            multiple,
            divisor,
            quotient,
        }
    }))
}

/// Canonical representatives of all classes of `x` with `u·x ≃ w` (left) or
/// `x·u ≃ w` (right), sorted.
pub fn quotients(
    rw: &Rewriter,
    u: &Word,
    w: &Word,
    side: Side,
    budget: SearchBudget,
) -> Result<Vec<Word>, SearchError> {
    let n = u.len();
    if n > w.len() {
        return Ok(Vec::new());
    }
    let cu = rw.class(u, budget)?;
    let cw = rw.class(w, budget)?;
    let mut rest: BTreeSet<Word> = cw
        .iter()
        .filter(|m| factor_in(*m, n, side, &cu))
        .map(|m| split(&m.to_word(), n, side).1)
        .collect();
    let mut out = Vec::new();
    while let Some(x) = rest.pop_first() {
        let cx = rw.class(&x, budget)?;
        for y in cx.words() {
            rest.remove(&y);
        }
        out.push(cx.canonical());
    }
    out.sort();
    Ok(out)
}

/// Common multiples of `u` and `v` of length `length` on `side`.
pub fn common_multiples(
    rw: &Rewriter,
    u: &Word,
    v: &Word,
    side: Side,
    length: usize,
    budget: SearchBudget,
) -> Result<MultipleSet, SearchError> {
    let mut multiples = Vec::new();
    if length >= u.len() && length >= v.len() {
        let cu = rw.class(u, budget)?;
        let cv = rw.class(v, budget)?;
        let part = rw.partition(length, budget)?;
        let packing = part.packing();
        for id in 0..part.num_classes() {
            let divisible_by = |c: &EquivClass, n: usize| {
                part.class_codes(id).iter().any(|&code| {
                    let m = MemberRef::Packed {
                        packing,
                        len: length,
                        code,
                    };
                    factor_in(m, n, side, c)
                })
            };
            if divisible_by(&cu, u.len()) && divisible_by(&cv, v.len()) {
                multiples.push(part.canonical(id));
            }
        }
    }
    Ok(MultipleSet {
        side,
        factors: (u.clone(), v.clone()),
        length,
        multiples,
    })
}

/// Search for a least common multiple up to `max_length`.
///
/// Non-existence is only ever claimed up to the stated length and refers to
/// the monoid defined by the presentation.
pub fn lcm_certificate(
    rw: &Rewriter,
    u: &Word,
    v: &Word,
    side: Side,
    max_length: usize,
    budget: SearchBudget,
) -> Result<LcmCertificate, SearchError> {
    let start = u.len().max(v.len());
    let mut minimal: Option<Word> = None;
    for n in start..=max_length {
        let set = common_multiples(rw, u, v, side, n, budget)?;
        match &minimal {
            None => match set.multiples.len() {
                0 => {}
                1 => minimal = Some(set.multiples[0].clone()),
                _ => {
                    return Ok(LcmCertificate::NoLcmUpTo {
                        length: n,
                        minimal: set.multiples[0].clone(),
                        other: set.multiples[1].clone(),
                    })
                }
            },
            Some(m1) => {
                for m in &set.multiples {
                    if divides(rw, m1, m, side, budget)?.is_none() {
                        return Ok(LcmCertificate::NoLcmUpTo {
                            length: n,
                            minimal: m1.clone(),
                            other: m.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(match minimal {
        Some(lcm) => LcmCertificate::LcmFound {
            lcm,
            checked_up_to: max_length,
        },
        None => LcmCertificate::NoCommonMultipleUpTo { length: max_length },
    })
}

//! Positive homogeneous presentations: parsing, validation and normalization.
//!
//! A presentation is an alphabet together with relations `lhs = rhs` between
//! positive words of equal length. Relations of length one identify letters;
//! [`Presentation::normalize`] folds them into an identification map so that
//! every other module works over representative letters only.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("inhomogeneous relation at line {line}: lengths {lhs_len} and {rhs_len} differ")]
    Inhomogeneous {
        line: usize,
        lhs_len: usize,
        rhs_len: usize,
    },
    #[error("unknown letter at line {line}, column {column}: {found:?}")]
    UnknownLetter {
        line: usize,
        column: usize,
        found: String,
    },
    #[error("empty word in relation at line {line}")]
    EmptyRelationSide { line: usize },
    #[error("alphabet declared twice or letter {0:?} repeated")]
    DuplicateLetter(String),
    #[error("no `letters:` declaration before the first relation")]
    MissingAlphabet,
    #[error("alphabet of {0} letters exceeds the supported 255")]
    AlphabetTooLarge(usize),
}

/// A defining relation `lhs = rhs` with `l(lhs) = l(rhs) >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    pub fn new(lhs: Word, rhs: Word) -> Option<Self> {
        (lhs.len() == rhs.len() && !lhs.is_empty()).then_some(Relation { lhs, rhs })
    }

    pub fn len(&self) -> usize {
        self.lhs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lhs.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    /// Same relation up to swapping sides.
    fn key(&self) -> (Word, Word) {
        if self.lhs <= self.rhs {
            (self.lhs.clone(), self.rhs.clone())
        } else {
            (self.rhs.clone(), self.lhs.clone())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relations: Vec<Relation>,
    identification: Vec<Letter>,
}

impl Presentation {
    /// Build from parts; every relation must be homogeneous and use declared letters.
    pub fn new(names: Vec<String>, relations: Vec<Relation>) -> Result<Self, PresentationError> {
        if names.len() > 255 {
            return Err(PresentationError::AlphabetTooLarge(names.len()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(PresentationError::DuplicateLetter(n.clone()));
            }
        }
        let k = names.len();
        for (i, r) in relations.iter().enumerate() {
            if r.lhs.len() != r.rhs.len() {
                return Err(PresentationError::Inhomogeneous {
                    line: i + 1,
                    lhs_len: r.lhs.len(),
                    rhs_len: r.rhs.len(),
                });
            }
            for l in r.lhs.letters().iter().chain(r.rhs.letters()) {
                if l.index() >= k {
                    return Err(PresentationError::UnknownLetter {
                        line: i + 1,
                        column: 0,
                        found: alloc::format!("#{}", l.index()),
                    });
                }
            }
        }
        let identification = (0..k as u8).map(Letter).collect();
        Ok(Presentation {
            names,
            relations,
            identification,
        })
    }

    /// Parse the line-oriented presentation format.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        parse_presentation(text)
    }

    pub fn alphabet_len(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter.index()]
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Letter(i as u8))
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Representative of a letter's class in `L/~`.
    pub fn rep(&self, letter: Letter) -> Letter {
        self.identification[letter.index()]
    }

    pub fn identification(&self) -> &[Letter] {
        &self.identification
    }

    /// Representative letters, in index order.
    pub fn generators(&self) -> Vec<Letter> {
        (0..self.names.len() as u8)
            .map(Letter)
            .filter(|&l| self.rep(l) == l)
            .collect()
    }

    /// Rewrite a word over representative letters.
    pub fn canonical_letters(&self, word: &Word) -> Word {
        word.map_letters(|l| self.rep(l))
    }

    pub fn is_normalized(&self) -> bool {
        self.relations.iter().all(|r| {
            r.len() > 1
                && !r.is_trivial()
                && r
                    .lhs
                    .letters()
                    .iter()
                    .chain(r.rhs.letters())
                    .all(|&l| self.rep(l) == l)
        })
    }

    /// Absorb length-one relations into the identification map (union-find
    /// closure, smallest index as representative), rewrite every remaining
    /// relation over representatives and drop trivial or repeated relations.
    pub fn normalize(&self) -> Presentation {
        let k = self.names.len();
        let mut parent: Vec<usize> = self.identification.iter().map(|l| l.index()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for r in self.relations.iter().filter(|r| r.len() == 1) {
            let a = find(&mut parent, r.lhs.letters()[0].index());
            let b = find(&mut parent, r.rhs.letters()[0].index());
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi] = lo;
        }
        let identification: Vec<Letter> =
            (0..k).map(|i| Letter(find(&mut parent, i) as u8)).collect();

        let mut seen: Vec<(Word, Word)> = Vec::new();
        let mut relations = Vec::new();
        for r in self.relations.iter().filter(|r| r.len() > 1) {
            let lhs = r.lhs.map_letters(|l| identification[l.index()]);
            let rhs = r.rhs.map_letters(|l| identification[l.index()]);
            let rel = Relation { lhs, rhs };
            if rel.is_trivial() {
                continue;
            }
            let key = rel.key();
            if seen.contains(&key) {
                continue;
            }
            seen.push(key);
            relations.push(rel);
        }
        Presentation {
            names: self.names.clone(),
            relations,
            identification,
        }
    }

    /// Parse a word written with this alphabet's letter names. Whitespace is
    /// ignored; names are matched greedily, longest first.
    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        parse_word(&self.names, text, 1, 1)
    }

    pub fn format_word(&self, word: &Word) -> String {
        let spaced = self.names.iter().any(|n| n.chars().count() != 1);
        let mut out = String::new();
        for (i, l) in word.letters().iter().enumerate() {
            if spaced && i > 0 {
                out.push(' ');
            }
            out.push_str(&self.names[l.index()]);
        }
        out
    }

    pub fn format_relation(&self, r: &Relation) -> String {
        alloc::format!("{} = {}", self.format_word(&r.lhs), self.format_word(&r.rhs))
    }

    /// Stable 64-bit FNV-1a digest of alphabet, identification and relations.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |b: u8| {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        };
        for n in &self.names {
            n.bytes().for_each(&mut eat);
            eat(0xff);
        }
        for l in &self.identification {
            eat(l.0);
        }
        for r in &self.relations {
            eat(0xfe);
            r.lhs.letters().iter().for_each(|l| eat(l.0));
            eat(0xfd);
            r.rhs.letters().iter().for_each(|l| eat(l.0));
        }
        h
    }

    /// Serialize back to the text format.
    pub fn to_text(&self) -> String {
        let mut out = String::from("letters:");
        for n in &self.names {
            out.push(' ');
            out.push_str(n);
        }
        out.push('\n');
        for l in 0..self.names.len() as u8 {
            let rep = self.rep(Letter(l));
            if rep != Letter(l) {
                out.push_str(&alloc::format!(
                    "rel: {} = {}\n",
                    self.names[l as usize],
                    self.names[rep.index()]
                ));
            }
        }
        for r in &self.relations {
            out.push_str("rel: ");
            out.push_str(&self.format_relation(r));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn parse_word(
    names: &[String],
    text: &str,
    line: usize,
    col0: usize,
) -> Result<Word, PresentationError> {
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by_key(|&i| core::cmp::Reverse(names[i].len()));
    let mut letters = Vec::new();
    let mut rest = text;
    let mut col = col0;
    loop {
        let trimmed = rest.trim_start();
        col += rest[..rest.len() - trimmed.len()].chars().count();
        rest = trimmed;
        if rest.is_empty() {
            break;
        }
        match order.iter().find(|&&i| rest.starts_with(names[i].as_str())) {
            Some(&i) => {
                letters.push(Letter(i as u8));
                col += names[i].chars().count();
                rest = &rest[names[i].len()..];
            }
            None => {
                let found: String = rest
                    .chars()
                    .take_while(|c| !c.is_whitespace())
                    .collect();
                return Err(PresentationError::UnknownLetter {
                    line,
                    column: col,
                    found,
                });
            }
        }
    }
    Ok(Word::from_letters(letters))
}

fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut names: Option<Vec<String>> = None;
    let mut relations = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let lead = line.len() - line.trim_start().len();
        let body = line.trim_start();
        if let Some(rest) = body.strip_prefix("letters:") {
            if names.is_some() {
                return Err(PresentationError::DuplicateLetter("letters:".to_owned()));
            }
            let list: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
            if list.len() > 255 {
                return Err(PresentationError::AlphabetTooLarge(list.len()));
            }
            for (i, n) in list.iter().enumerate() {
                if list[..i].contains(n) {
                    return Err(PresentationError::DuplicateLetter(n.clone()));
                }
                if n.contains('=') || n.contains(':') {
                    return Err(PresentationError::Syntax {
                        line: line_no,
                        column: lead + 1,
                        message: alloc::format!("invalid letter name {n:?}"),
                    });
                }
            }
            names = Some(list);
        } else if let Some(rest) = body.strip_prefix("rel:") {
            let names = names.as_ref().ok_or(PresentationError::MissingAlphabet)?;
            let mut col = lead + "rel:".len() + 1;
            let mut sides = Vec::new();
            for part in rest.split('=') {
                let w = parse_word(names, part, line_no, col)?;
                if w.is_empty() {
                    return Err(PresentationError::EmptyRelationSide { line: line_no });
                }
                sides.push(w);
                col += part.chars().count() + 1;
            }
            if sides.len() < 2 {
                return Err(PresentationError::Syntax {
                    line: line_no,
                    column: lead + 1,
                    message: "relation needs `=`".to_owned(),
                });
            }
            for pair in sides.windows(2) {
                if pair[0].len() != pair[1].len() {
                    return Err(PresentationError::Inhomogeneous {
                        line: line_no,
                        lhs_len: pair[0].len(),
                        rhs_len: pair[1].len(),
                    });
                }
                relations.push(Relation {
                    lhs: pair[0].clone(),
                    rhs: pair[1].clone(),
                });
            }
        } else {
            return Err(PresentationError::Syntax {
                line: line_no,
                column: lead + 1,
                message: "expected `letters:` or `rel:`".to_owned(),
            });
        }
    }
    let names = names.ok_or(PresentationError::MissingAlphabet)?;
    Presentation::new(names, relations)
}

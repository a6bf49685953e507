//! Quasi-central and fundamental elements, cancellation scans, morphisms and
//! divisor-set checks.
//!
//! `Δ` is quasi-central when `a·Δ ≃ Δ·σ(a)` for every generator class `a` and
//! some permutation `σ`; it is fundamental when additionally every `a` admits a
//! single `Δ_a` with `Δ ≃ a·Δ_a ≃ Δ_a·σ(a)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::catalog::{ListedFundamental, TypeLabel};
use crate::divisibility::{split, Side};
use crate::presentation::{Presentation, PresentationError};
use crate::rewrite::{EquivClass, Partition, Rewriter, SearchBudget};
use crate::word::{Letter, Word};
use crate::{SearchError, Verdict};

/// A permutation of generator classes, stored as the image of every letter of
/// the alphabet (identified letters share their representative's image).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermutationSigma {
    images: Vec<Letter>,
}

impl PermutationSigma {
    pub fn identity(pres: &Presentation) -> Self {
        PermutationSigma {
            images: (0..pres.alphabet_len() as u8)
                .map(|l| pres.rep(Letter(l)))
                .collect(),
        }
    }

    /// Build from images of the representative letters, in generator order.
    /// Returns `None` unless the images form a bijection of the generators.
    pub fn from_generator_images(pres: &Presentation, images: &[Letter]) -> Option<Self> {
        let gens = pres.generators();
        if images.len() != gens.len() {
            return None;
        }
        let mut seen = BTreeSet::new();
        for &img in images {
            if !gens.contains(&img) || !seen.insert(img) {
                return None;
            }
        }
        let out = (0..pres.alphabet_len() as u8)
            .map(|l| {
                let r = pres.rep(Letter(l));
                let i = gens.iter().position(|&g| g == r).unwrap();
                images[i]
            })
            .collect();
        Some(PermutationSigma { images: out })
    }

    /// Parse images of every alphabet letter, written as letter names in
    /// alphabet order (e.g. `baa` for a three-letter alphabet).
    pub fn parse_images(pres: &Presentation, text: &str) -> Result<Option<Self>, PresentationError> {
        let w = pres.parse_word(text)?;
        if w.len() != pres.alphabet_len() {
            return Ok(None);
        }
        let images: Vec<Letter> = w.letters().iter().map(|&l| pres.rep(l)).collect();
        for l in 0..pres.alphabet_len() as u8 {
            if images[l as usize] != images[pres.rep(Letter(l)).index()] {
                return Ok(None);
            }
        }
        let gens = pres.generators();
        let gen_images: Vec<Letter> = gens.iter().map(|g| images[g.index()]).collect();
        Ok(Self::from_generator_images(pres, &gen_images))
    }

    pub fn apply(&self, l: Letter) -> Letter {
        self.images[l.index()]
    }

    pub fn apply_word(&self, w: &Word) -> Word {
        w.map_letters(|l| self.apply(l))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PermutationSigma) -> PermutationSigma {
        PermutationSigma {
            images: other.images.iter().map(|&l| self.apply(l)).collect(),
        }
    }

    pub fn is_identity(&self, pres: &Presentation) -> bool {
        *self == Self::identity(pres)
    }

    /// Images of every alphabet letter by name, e.g. `baa`.
    pub fn images_text(&self, pres: &Presentation) -> String {
        self.images.iter().map(|&l| pres.name(l)).collect()
    }

    /// Map notation over generators, e.g. `a->b b->a`.
    pub fn describe(&self, pres: &Presentation) -> String {
        let mut s = String::new();
        for (i, g) in pres.generators().into_iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{}->{}", pres.name(g), pres.name(self.apply(g)));
        }
        s
    }
}

/// Every bijection `gens[i] -> gens[j]` with `allowed[i][j]`, in
/// lexicographic order of image positions.
fn bijections(allowed: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn go(i: usize, allowed: &[Vec<bool>], used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == allowed.len() {
            out.push(cur.clone());
            return;
        }
        for j in 0..allowed.len() {
            if allowed[i][j] && !used[j] {
                used[j] = true;
                cur.push(j);
                go(i + 1, allowed, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(0, allowed, &mut vec![false; allowed.len()], &mut Vec::new(), &mut out);
    out
}

fn sigma_from_positions(pres: &Presentation, gens: &[Letter], pos: &[usize]) -> PermutationSigma {
    let images: Vec<Letter> = pos.iter().map(|&j| gens[j]).collect();
    PermutationSigma::from_generator_images(pres, &images).unwrap()
}

/// All `σ` with `a·Δ ≃ Δ·σ(a)` for every generator `a`, sorted. The empty word
/// yields the identity.
pub fn is_quasi_central(
    rw: &Rewriter,
    delta: &Word,
    budget: SearchBudget,
) -> Result<Vec<PermutationSigma>, SearchError> {
    let pres = rw.presentation();
    let delta = pres.canonical_letters(delta);
    let gens = rw.generators();
    let mut allowed = vec![vec![false; gens.len()]; gens.len()];
    for (i, &a) in gens.iter().enumerate() {
        let left = rw.class(&Word::single(a).concat(&delta), budget)?;
        for (j, &b) in gens.iter().enumerate() {
            allowed[i][j] = left.contains(&delta.concat(&Word::single(b)));
        }
    }
    Ok(bijections(&allowed)
        .iter()
        .map(|p| sigma_from_positions(pres, &gens, p))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WitnessMode {
    /// One `Δ_a` serves both equations.
    #[default]
    Shared,
    /// Non-standard: `a·X ≃ Δ` and `Y·σ(a) ≃ Δ` with `X` and `Y` chosen
    /// independently.
    Independent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalWitness {
    pub delta: Word,
    pub sigma: PermutationSigma,
    /// `(a, Δ_a, Δ'_a)` with `a·Δ_a ≃ Δ` and `Δ'_a·σ(a) ≃ Δ`; in shared mode
    /// `Δ_a = Δ'_a`.
    pub per_generator: Vec<(Letter, Word, Word)>,
    pub mode: WitnessMode,
}

impl FundamentalWitness {
    /// Re-check every stated equivalence through the rewriting engine.
    pub fn replay(&self, rw: &Rewriter, budget: SearchBudget) -> Verdict {
        let mut inconclusive = None;
        for (a, left_q, right_q) in &self.per_generator {
            if self.mode == WitnessMode::Shared && left_q != right_q {
                return Verdict::No;
            }
            let lhs = Word::single(*a).concat(left_q);
            let rhs = right_q.concat(&Word::single(self.sigma.apply(*a)));
            for x in [lhs, rhs] {
                match rw.are_equivalent(&x, &self.delta, budget) {
                    Verdict::Yes => {}
                    Verdict::No => return Verdict::No,
                    v @ Verdict::Inconclusive { .. } => inconclusive = Some(v),
                }
            }
        }
        inconclusive.unwrap_or(Verdict::Yes)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FundamentalOutcome {
    /// One witness per admissible permutation, sorted by permutation.
    Fundamental(Vec<FundamentalWitness>),
    /// Some generator does not left-divide `Δ`.
    NotLeftDivisible(Letter),
    /// Every generator left-divides `Δ` but no permutation completes it.
    NoPermutation,
    /// The empty word is never fundamental.
    Empty,
}

impl FundamentalOutcome {
    pub fn witnesses(&self) -> &[FundamentalWitness] {
        match self {
            FundamentalOutcome::Fundamental(w) => w,
            _ => &[],
        }
    }

    pub fn is_fundamental(&self) -> bool {
        matches!(self, FundamentalOutcome::Fundamental(_))
    }
}

/// Candidate quotients of `Δ` by a generator on one side, as sorted words,
/// with a fast membership test against the class of `Δ`.
struct DeltaView<'a> {
    class: &'a EquivClass,
}

impl DeltaView<'_> {
    /// Sorted, deduplicated `x` with `a·x ∈ class(Δ)` (left) or `x·a` (right).
    fn quotients_by_letter(&self, a: Letter, side: Side) -> Vec<Word> {
        let single = Word::single(a);
        let mut out: Vec<Word> = self
            .class
            .iter()
            .filter(|m| match side {
                Side::Left => m.first_letter() == Some(a),
                Side::Right => m.last_letter() == Some(a),
            })
            .map(|m| split(&m.to_word(), 1, side).1)
            .collect();
        debug_assert!(out.iter().all(|x| self.class.contains(&side.join(&single, x))));
        out.sort();
        out.dedup();
        out
    }
}

/// Decide whether `Δ` is fundamental and return a witness for every
/// admissible permutation.
pub fn is_fundamental(
    rw: &Rewriter,
    delta: &Word,
    mode: WitnessMode,
    budget: SearchBudget,
) -> Result<FundamentalOutcome, SearchError> {
    let pres = rw.presentation();
    let delta = pres.canonical_letters(delta);
    if delta.is_empty() {
        return Ok(FundamentalOutcome::Empty);
    }
    let class = rw.class(&delta, budget)?;
    let view = DeltaView { class: &class };
    let gens = rw.generators();
    let n = gens.len();
    let left_q: Vec<Vec<Word>> = gens
        .iter()
        .map(|&a| view.quotients_by_letter(a, Side::Left))
        .collect();
    if let Some(i) = left_q.iter().position(Vec::is_empty) {
        return Ok(FundamentalOutcome::NotLeftDivisible(gens[i]));
    }
    // shared[i][j]: first Δ_a (a = gens[i]) with Δ_a·gens[j] ≃ Δ.
    let mut choice: Vec<Vec<Option<(Word, Word)>>> = vec![vec![None; n]; n];
    let right_q: Vec<Vec<Word>> = match mode {
        WitnessMode::Shared => Vec::new(),
        WitnessMode::Independent => gens
            .iter()
            .map(|&b| view.quotients_by_letter(b, Side::Right))
            .collect(),
    };
    for i in 0..n {
        for (j, &b) in gens.iter().enumerate() {
            choice[i][j] = match mode {
                WitnessMode::Shared => left_q[i]
                    .iter()
                    .find(|x| class.contains(&x.concat(&Word::single(b))))
                    .map(|x| (x.clone(), x.clone())),
                WitnessMode::Independent => right_q[j]
                    .first()
                    .map(|y| (left_q[i][0].clone(), y.clone())),
            };
        }
    }
    let allowed: Vec<Vec<bool>> = choice
        .iter()
        .map(|row| row.iter().map(Option::is_some).collect())
        .collect();
    let perms = bijections(&allowed);
    if perms.is_empty() {
        return Ok(FundamentalOutcome::NoPermutation);
    }
    let mut out: Vec<FundamentalWitness> = perms
        .iter()
        .map(|p| FundamentalWitness {
            delta: delta.clone(),
            sigma: sigma_from_positions(pres, &gens, p),
            per_generator: (0..n)
                .map(|i| {
                    let (x, y) = choice[i][p[i]].clone().unwrap();
                    (gens[i], x, y)
                })
                .collect(),
            mode,
        })
        .collect();
    out.sort_by(|a, b| a.sigma.cmp(&b.sigma));
    Ok(FundamentalOutcome::Fundamental(out))
}

/// Verification of one listed fundamental element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListedCheck {
    pub name: &'static str,
    pub word: Word,
    pub expected_sigma: PermutationSigma,
    pub class_size: usize,
    pub outcome: FundamentalOutcome,
    /// Listed alternative spellings and whether each is equivalent to `word`.
    pub aliases: Vec<(Word, Verdict)>,
}

impl ListedCheck {
    pub fn sigma_matches(&self) -> bool {
        self.outcome
            .witnesses()
            .iter()
            .any(|w| w.sigma == self.expected_sigma)
    }

    pub fn verified(&self) -> bool {
        self.sigma_matches() && self.aliases.iter().all(|(_, v)| v.is_yes())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListedReport {
    pub label: TypeLabel,
    pub checks: Vec<ListedCheck>,
}

impl ListedReport {
    pub fn all_verified(&self) -> bool {
        self.checks.iter().all(ListedCheck::verified)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ListedError {
    #[error(transparent)]
    Catalog(#[from] crate::catalog::CatalogError),
    #[error("listed data for {label}: {source}")]
    Data {
        label: TypeLabel,
        source: PresentationError,
    },
    #[error("listed permutation for {label} is not a bijection of generator classes")]
    BadSigma { label: TypeLabel },
    #[error("{name}: {source}")]
    Search {
        name: &'static str,
        source: SearchError,
    },
}

/// Run the fundamental-element test on every element listed for `label` and
/// compare the permutations found with the listed ones.
pub fn verify_listed_fundamentals(
    label: TypeLabel,
    budget: SearchBudget,
) -> Result<ListedReport, ListedError> {
    let pres = label.presentation()?;
    let rw = Rewriter::new(&pres);
    let mut checks = Vec::new();
    for lf in label.listed_fundamentals() {
        checks.push(check_listed(&rw, label, lf, budget)?);
    }
    Ok(ListedReport { label, checks })
}

fn check_listed(
    rw: &Rewriter,
    label: TypeLabel,
    lf: &ListedFundamental,
    budget: SearchBudget,
) -> Result<ListedCheck, ListedError> {
    let pres = rw.presentation();
    let data = |source| ListedError::Data { label, source };
    let search = |source| ListedError::Search {
        name: lf.name,
        source,
    };
    let word = pres.canonical_letters(&pres.parse_word(lf.word).map_err(data)?);
    let expected_sigma = PermutationSigma::parse_images(pres, lf.sigma)
        .map_err(data)?
        .ok_or(ListedError::BadSigma { label })?;
    let outcome = is_fundamental(rw, &word, WitnessMode::Shared, budget).map_err(search)?;
    let class_size = rw.class(&word, budget).map_err(search)?.size();
    let mut aliases = Vec::new();
    for a in lf.aliases {
        let aw = pres.parse_word(a).map_err(data)?;
        let v = rw.are_equivalent(&aw, &word, budget);
        aliases.push((aw, v));
    }
    // Class enumerations of long elements are large; release them.
    rw.clear_cache();
    Ok(ListedCheck {
        name: lf.name,
        word,
        expected_sigma,
        class_size,
        outcome,
        aliases,
    })
}

/// Quasi-central classes of length at most `max_length` with their
/// permutations, ordered by length then canonical word. The empty word comes
/// first with the identity.
pub fn quasi_center_scan(
    rw: &Rewriter,
    max_length: usize,
    budget: SearchBudget,
) -> Result<Vec<(Word, Vec<PermutationSigma>)>, SearchError> {
    let pres = rw.presentation();
    let gens = rw.generators();
    let packing = rw.packing();
    let mut out = vec![(Word::empty(), vec![PermutationSigma::identity(pres)])];
    if max_length == 0 {
        return Ok(out);
    }
    let mut cur = rw.partition(1, budget)?;
    for n in 1..=max_length {
        let next = rw.partition(n + 1, budget)?;
        for id in 0..cur.num_classes() {
            let code = cur.class_codes(id)[0];
            let mut allowed = vec![vec![false; gens.len()]; gens.len()];
            for (i, &a) in gens.iter().enumerate() {
                let left = next.class_of_code(packing.concat(a.0 as u32, code, n));
                for (j, &b) in gens.iter().enumerate() {
                    let right = next.class_of_code(packing.concat(code, b.0 as u32, 1));
                    allowed[i][j] = left.is_some() && left == right;
                }
            }
            let sigmas: Vec<PermutationSigma> = bijections(&allowed)
                .iter()
                .map(|p| sigma_from_positions(pres, &gens, p))
                .collect();
            if !sigmas.is_empty() {
                out.push((cur.canonical(id), sigmas));
            }
        }
        cur = next;
    }
    Ok(out)
}

/// A failure of cancellation: `u·x ≃ u·y` (left) or `x·u ≃ y·u` (right) with
/// `x` and `y` inequivalent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub letter: Letter,
    pub side: Side,
    pub product: Word,
    pub x: Word,
    pub y: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CancellationReport {
    pub fingerprint: u64,
    pub max_length: usize,
    pub classes_scanned: usize,
    pub violations: Vec<Violation>,
}

/// Check left and right cancellation of single letters for all words `x` of
/// length at most `max_length`.
pub fn cancellation_scan(
    rw: &Rewriter,
    max_length: usize,
    budget: SearchBudget,
) -> Result<CancellationReport, SearchError> {
    let gens = rw.generators();
    let packing = rw.packing();
    let mut violations = Vec::new();
    let mut classes_scanned = 0;
    let mut cur = rw.partition(0, budget)?;
    for n in 0..=max_length {
        let next = rw.partition(n + 1, budget)?;
        classes_scanned += cur.num_classes();
        for side in [Side::Left, Side::Right] {
            for &u in &gens {
                scan_letter(&cur, &next, u, side, packing, &mut violations);
            }
        }
        cur = next;
    }
    Ok(CancellationReport {
        fingerprint: rw.presentation().fingerprint(),
        max_length,
        classes_scanned,
        violations,
    })
}

fn scan_letter(
    cur: &Partition,
    next: &Partition,
    u: Letter,
    side: Side,
    packing: crate::word::Packing,
    out: &mut Vec<Violation>,
) {
    let n = cur.word_len();
    let mut first: BTreeMap<usize, usize> = BTreeMap::new();
    for id in 0..cur.num_classes() {
        let code = cur.class_codes(id)[0];
        let prod = match side {
            Side::Left => packing.concat(u.0 as u32, code, n),
            Side::Right => packing.concat(code, u.0 as u32, 1),
        };
        let k = next.class_of_code(prod).expect("product over generators");
        match first.get(&k) {
            None => {
                first.insert(k, id);
            }
            Some(&x) => out.push(Violation {
                letter: u,
                side,
                product: next.canonical(k),
                x: cur.canonical(x),
                y: cur.canonical(id),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationImage {
    pub relation: usize,
    pub lhs: Word,
    pub rhs: Word,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub images: Vec<RelationImage>,
}

impl MorphismReport {
    /// `Yes` when every relation maps to an equivalence, `No` on the first
    /// refuted relation, `Inconclusive` otherwise.
    pub fn verdict(&self) -> Verdict {
        if self.images.iter().any(|r| r.verdict == Verdict::No) {
            return Verdict::No;
        }
        self.images
            .iter()
            .find(|r| matches!(r.verdict, Verdict::Inconclusive { .. }))
            .map_or(Verdict::Yes, |r| r.verdict)
    }

    pub fn first_failure(&self) -> Option<&RelationImage> {
        self.images.iter().find(|r| r.verdict == Verdict::No)
    }
}

/// Check that `letter_map` (the image word of every letter of `source`)
/// sends each relation of `source`, as written, to an equivalence in the
/// target.
pub fn check_morphism(
    source: &Presentation,
    target: &Rewriter,
    letter_map: &[Word],
    budget: SearchBudget,
) -> MorphismReport {
    let image = |w: &Word| -> Word {
        w.letters()
            .iter()
            .flat_map(|l| letter_map[l.index()].letters().iter().copied())
            .collect()
    };
    let images = source
        .relations()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let lhs = image(&r.lhs);
            let rhs = image(&r.rhs);
            let verdict = target.are_equivalent(&lhs, &rhs, budget);
            RelationImage {
                relation: i,
                lhs,
                rhs,
                verdict,
            }
        })
        .collect();
    MorphismReport { images }
}

/// Result of checking that every word of length `k` divides `Δ^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenominatorLevel {
    pub k: usize,
    pub words_checked: usize,
    pub left_failures: Vec<Word>,
    pub right_failures: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenominatorReport {
    pub delta: Word,
    pub levels: Vec<DenominatorLevel>,
    /// Largest `k` skipped because `k·l(Δ)` exceeded the length cap.
    pub skipped_from: Option<usize>,
}

impl DenominatorReport {
    pub fn holds(&self) -> bool {
        self.levels
            .iter()
            .all(|l| l.left_failures.is_empty() && l.right_failures.is_empty())
    }
}

pub const DEFAULT_POWER_CAP: usize = 12;

fn all_words(gens: &[Letter], k: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..k {
        out = out
            .iter()
            .flat_map(|w| {
                gens.iter().map(move |&g| {
                    let mut x = w.clone();
                    x.push(g);
                    x
                })
            })
            .collect();
    }
    out
}

fn factor_set(class: &EquivClass, k: usize, side: Side) -> BTreeSet<Word> {
    class
        .iter()
        .map(|m| split(&m.to_word(), k, side).0)
        .collect()
}

/// Check that every word `U` over the generators with `l(U) ≤ max_u_length`
/// divides `Δ^{l(U)}` on both sides, for powers of total length at most
/// `power_cap`.
pub fn universal_denominator_check(
    rw: &Rewriter,
    delta: &Word,
    max_u_length: usize,
    power_cap: usize,
    budget: SearchBudget,
) -> Result<DenominatorReport, SearchError> {
    let delta = rw.presentation().canonical_letters(delta);
    let gens = rw.generators();
    let mut levels = Vec::new();
    let mut skipped_from = None;
    for k in 1..=max_u_length {
        if k * delta.len() > power_cap {
            skipped_from = Some(k);
            break;
        }
        let class = rw.equivalence_class(&delta.pow(k), budget)?;
        let lefts = factor_set(&class, k, Side::Left);
        let rights = factor_set(&class, k, Side::Right);
        let words = all_words(&gens, k);
        levels.push(DenominatorLevel {
            k,
            words_checked: words.len(),
            left_failures: words.iter().filter(|u| !lefts.contains(*u)).cloned().collect(),
            right_failures: words.iter().filter(|u| !rights.contains(*u)).cloned().collect(),
        });
    }
    Ok(DenominatorReport {
        delta,
        levels,
        skipped_from,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorSets {
    pub delta: Word,
    /// Canonical representatives of the left divisors, by length then word.
    pub left: Vec<Word>,
    pub right: Vec<Word>,
}

impl DivisorSets {
    pub fn symmetric(&self) -> bool {
        self.left == self.right
    }
}

fn divisor_classes(
    rw: &Rewriter,
    class: &EquivClass,
    side: Side,
    budget: SearchBudget,
) -> Result<Vec<Word>, SearchError> {
    let mut out = Vec::new();
    for k in 0..=class.word_len() {
        let mut pending = factor_set(class, k, side);
        while let Some(x) = pending.pop_first() {
            let cx = rw.class(&x, budget)?;
            for y in cx.words() {
                pending.remove(&y);
            }
            out.push(cx.canonical());
        }
    }
    Ok(out)
}

/// Left and right divisor classes of `Δ`.
pub fn divisor_symmetry(
    rw: &Rewriter,
    delta: &Word,
    budget: SearchBudget,
) -> Result<DivisorSets, SearchError> {
    let delta = rw.presentation().canonical_letters(delta);
    let class = rw.class(&delta, budget)?;
    Ok(DivisorSets {
        left: divisor_classes(rw, &class, Side::Left, budget)?,
        right: divisor_classes(rw, &class, Side::Right, budget)?,
        delta,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PowerSearch {
    Found { k: usize, witness: FundamentalWitness },
    NotFound { max_k: usize },
}

/// Least `k ≤ max_k` such that `base^k` is fundamental.
pub fn coxeter_power_search(
    rw: &Rewriter,
    base: &Word,
    max_k: usize,
    budget: SearchBudget,
) -> Result<PowerSearch, SearchError> {
    for k in 1..=max_k {
        let outcome = is_fundamental(rw, &base.pow(k), WitnessMode::Shared, budget)?;
        if let FundamentalOutcome::Fundamental(mut ws) = outcome {
            return Ok(PowerSearch::Found {
                k,
                witness: ws.swap_remove(0),
            });
        }
    }
    Ok(PowerSearch::NotFound { max_k })
}

/// Relations whose letterwise image under `σ` is not an equivalence.
pub fn sigma_relation_failures(
    rw: &Rewriter,
    sigma: &PermutationSigma,
    budget: SearchBudget,
) -> Vec<(usize, Verdict)> {
    rw.presentation()
        .relations()
        .iter()
        .enumerate()
        .filter_map(|(i, r)| {
            let v = rw.are_equivalent(&sigma.apply_word(&r.lhs), &sigma.apply_word(&r.rhs), budget);
            (v != Verdict::Yes).then_some((i, v))
        })
        .collect()
}

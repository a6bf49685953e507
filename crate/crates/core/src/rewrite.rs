//! Equivalence classes of words under length-preserving rewriting.
//!
//! Homogeneity makes every class finite, so breadth-first closure under single
//! relation applications decides the word problem. Words that fit the packed
//! 32-bit code run on a table-driven fast path with a dense visited bitmap;
//! longer words use plain letter vectors with a hash set.

use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::hash::Hash;

use hashbrown::{HashMap, HashSet};

use crate::presentation::Presentation;
use crate::word::{Letter, Packing, Word};
use crate::{SearchError, Verdict};

/// Limit on `alphabet^len` for dense bitmaps and full-length partitions.
pub const DENSE_LIMIT: usize = 1 << 26;

const DENSE_WINDOW_BITS: u32 = 20;
const CACHE_MAX_CLASS: usize = 1 << 22;
const CACHE_MAX_TOTAL: usize = 1 << 24;
const CACHE_INDEX_ALL_BELOW: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SearchBudget {
    max_nodes: Option<u64>,
}

impl SearchBudget {
    pub const fn unlimited() -> Self {
        SearchBudget { max_nodes: None }
    }

    /// `None` when `max_nodes` is zero.
    pub const fn nodes(max_nodes: u64) -> Option<Self> {
        if max_nodes == 0 {
            None
        } else {
            Some(SearchBudget {
                max_nodes: Some(max_nodes),
            })
        }
    }

    pub fn max_nodes(&self) -> Option<u64> {
        self.max_nodes
    }

    fn check(&self, visited: u64) -> Result<(), SearchError> {
        match self.max_nodes {
            Some(m) if visited > m => Err(SearchError::BudgetExceeded { visited }),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// Replace the left-hand side by the right-hand side.
    Forward,
    Backward,
}

/// One directed use of a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub relation: usize,
    pub direction: Direction,
    pub from: Word,
    pub to: Word,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Step {
    pos: u8,
    rule: u16,
}

/// Window lookup for all rules of one length on the packed path.
struct WindowTable {
    len: usize,
    mask: u32,
    lookup: WindowLookup,
}

enum WindowLookup {
    Dense {
        offsets: Vec<u32>,
        entries: Vec<(u32, u16)>,
    },
    Sparse(HashMap<u32, Vec<(u32, u16)>>),
}

impl WindowTable {
    #[inline]
    fn get(&self, window: u32) -> &[(u32, u16)] {
        match &self.lookup {
            WindowLookup::Dense { offsets, entries } => {
                let w = window as usize;
                &entries[offsets[w] as usize..offsets[w + 1] as usize]
            }
            WindowLookup::Sparse(map) => map.get(&window).map_or(&[], |v| v.as_slice()),
        }
    }
}

/// A finite class of equivalent words, members sorted index-lexicographically.
#[derive(Clone, Debug)]
pub struct EquivClass {
    seed: Word,
    members: Members,
}

#[derive(Clone, Debug)]
enum Members {
    Packed {
        packing: Packing,
        len: usize,
        codes: Vec<u32>,
    },
    Plain(Vec<Word>),
}

/// Borrowed view of one class member.
#[derive(Clone, Copy, Debug)]
pub enum MemberRef<'a> {
    Packed {
        packing: Packing,
        len: usize,
        code: u32,
    },
    Plain(&'a Word),
}

impl MemberRef<'_> {
    pub fn to_word(self) -> Word {
        match self {
            MemberRef::Packed { packing, len, code } => packing.unpack(code, len),
            MemberRef::Plain(w) => w.clone(),
        }
    }

    pub fn len(self) -> usize {
        match self {
            MemberRef::Packed { len, .. } => len,
            MemberRef::Plain(w) => w.len(),
        }
    }

    pub fn is_empty(self) -> bool {
        self.len() == 0
    }

    pub fn first_letter(self) -> Option<Letter> {
        match self {
            MemberRef::Packed { len: 0, .. } => None,
            MemberRef::Packed { packing, len, code } => Some(packing.letter_at(code, len, 0)),
            MemberRef::Plain(w) => w.letters().first().copied(),
        }
    }

    pub fn last_letter(self) -> Option<Letter> {
        match self {
            MemberRef::Packed { len: 0, .. } => None,
            MemberRef::Packed { packing, len, code } => {
                Some(packing.letter_at(code, len, len - 1))
            }
            MemberRef::Plain(w) => w.letters().last().copied(),
        }
    }
}

impl EquivClass {
    pub fn seed(&self) -> &Word {
        &self.seed
    }

    /// Index-lexicographically least member.
    pub fn canonical(&self) -> Word {
        self.member(0).to_word()
    }

    pub fn size(&self) -> usize {
        match &self.members {
            Members::Packed { codes, .. } => codes.len(),
            Members::Plain(ws) => ws.len(),
        }
    }

    /// Common length of all members.
    pub fn word_len(&self) -> usize {
        self.seed.len()
    }

    pub fn member(&self, i: usize) -> MemberRef<'_> {
        match &self.members {
            Members::Packed {
                packing,
                len,
                codes,
            } => MemberRef::Packed {
                packing: *packing,
                len: *len,
                code: codes[i],
            },
            Members::Plain(ws) => MemberRef::Plain(&ws[i]),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = MemberRef<'_>> + '_ {
        (0..self.size()).map(move |i| self.member(i))
    }

    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        self.iter().map(MemberRef::to_word)
    }

    pub fn contains(&self, word: &Word) -> bool {
        if word.len() != self.word_len() {
            return false;
        }
        match &self.members {
            Members::Packed { packing, codes, .. } => match packing.pack(word) {
                Some(c) => codes.binary_search(&c).is_ok(),
                None => false,
            },
            Members::Plain(ws) => ws.binary_search(word).is_ok(),
        }
    }

    /// Membership of a packed code of this class's length.
    pub fn contains_code(&self, code: u32) -> Option<bool> {
        match &self.members {
            Members::Packed { codes, .. } => Some(codes.binary_search(&code).is_ok()),
            Members::Plain(_) => None,
        }
    }

    /// Sorted packed codes, when the class lives on the packed path.
    pub fn codes(&self) -> Option<&[u32]> {
        match &self.members {
            Members::Packed { codes, .. } => Some(codes),
            Members::Plain(_) => None,
        }
    }

    pub fn packing(&self) -> Option<Packing> {
        match &self.members {
            Members::Packed { packing, .. } => Some(*packing),
            Members::Plain(_) => None,
        }
    }

    /// True when `other` has the same members.
    pub fn same_class(&self, other: &EquivClass) -> bool {
        self.word_len() == other.word_len() && self.canonical() == other.canonical()
    }
}

/// A replayable chain of elementary equivalences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub source: Word,
    pub target: Word,
    pub steps: Vec<DerivationStep>,
}

/// Applying `relation` in `direction` at `position` to the previous word
/// yields `word`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationStep {
    pub word: Word,
    pub position: usize,
    pub relation: usize,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error("step {step}: relation {relation} does not exist")]
    UnknownRelation { step: usize, relation: usize },
    #[error("step {step}: relation side does not occur at position {position}")]
    NoMatch { step: usize, position: usize },
    #[error("step {step}: recorded word differs from the rewrite result")]
    WrongResult { step: usize },
    #[error("derivation does not end at its target")]
    WrongTarget,
}

impl Derivation {
    /// Re-apply every step through the presentation's relations.
    pub fn replay(&self, rewriter: &Rewriter) -> Result<(), ReplayError> {
        let rels = rewriter.presentation().relations();
        let mut current = rewriter.presentation().canonical_letters(&self.source);
        for (i, s) in self.steps.iter().enumerate() {
            let rel = rels.get(s.relation).ok_or(ReplayError::UnknownRelation {
                step: i,
                relation: s.relation,
            })?;
            let (from, to) = match s.direction {
                Direction::Forward => (&rel.lhs, &rel.rhs),
                Direction::Backward => (&rel.rhs, &rel.lhs),
            };
            let end = s.position + from.len();
            if end > current.len() || &current.letters()[s.position..end] != from.letters() {
                return Err(ReplayError::NoMatch {
                    step: i,
                    position: s.position,
                });
            }
            let mut letters = current.letters().to_vec();
            letters[s.position..end].copy_from_slice(to.letters());
            current = Word::from_letters(letters);
            if current != s.word {
                return Err(ReplayError::WrongResult { step: i });
            }
        }
        if current != rewriter.presentation().canonical_letters(&self.target) {
            return Err(ReplayError::WrongTarget);
        }
        Ok(())
    }
}

/// A normalized presentation compiled for rewriting, with a class cache.
///
/// The rewriter is single-threaded (the cache uses interior mutability);
/// build one per thread from a shared [`Presentation`].
pub struct Rewriter {
    pres: Presentation,
    rules: Vec<Rule>,
    packing: Packing,
    tables: Vec<WindowTable>,
    cache: RefCell<ClassCache>,
}

#[derive(Default)]
struct ClassCache {
    classes: Vec<Rc<EquivClass>>,
    index: HashMap<Word, usize>,
    total: usize,
}

impl ClassCache {
    fn get(&self, w: &Word) -> Option<Rc<EquivClass>> {
        self.index.get(w).map(|&i| self.classes[i].clone())
    }

    fn insert(&mut self, class: Rc<EquivClass>) {
        let size = class.size();
        if size > CACHE_MAX_CLASS {
            return;
        }
        if self.total + size > CACHE_MAX_TOTAL {
            self.classes.clear();
            self.index.clear();
            self.total = 0;
        }
        let id = self.classes.len();
        self.index.insert(class.seed().clone(), id);
        if size <= CACHE_INDEX_ALL_BELOW {
            for w in class.words() {
                self.index.insert(w, id);
            }
        } else {
            self.index.insert(class.canonical(), id);
        }
        self.total += size;
        self.classes.push(class);
    }
}

/// Visited-set used during breadth-first search.
trait VisitSet<C> {
    fn insert(&mut self, code: &C) -> bool;
}

struct DenseSet {
    packing: Packing,
    len: usize,
    bits: Vec<u64>,
}

impl VisitSet<u32> for DenseSet {
    #[inline]
    fn insert(&mut self, code: &u32) -> bool {
        let r = self.packing.rank(*code, self.len);
        let (w, b) = (r / 64, r % 64);
        let fresh = self.bits[w] & (1 << b) == 0;
        self.bits[w] |= 1 << b;
        fresh
    }
}

impl<C: Eq + Hash + Clone> VisitSet<C> for HashSet<C> {
    fn insert(&mut self, code: &C) -> bool {
        HashSet::insert(self, code.clone())
    }
}

/// Partition-building visited set: records the class id of each rank.
struct LabelSet<'a> {
    packing: Packing,
    len: usize,
    labels: &'a mut [u32],
    id: u32,
}

impl VisitSet<u32> for LabelSet<'_> {
    #[inline]
    fn insert(&mut self, code: &u32) -> bool {
        let r = self.packing.rank(*code, self.len);
        if self.labels[r] == UNLABELED {
            self.labels[r] = self.id;
            true
        } else {
            false
        }
    }
}

const UNLABELED: u32 = u32::MAX;

enum Bfs<T, C> {
    Stopped(T),
    Complete(Vec<C>),
}

/// All classes of words of one length over the representative letters.
#[derive(Clone, Debug)]
pub struct Partition {
    packing: Packing,
    len: usize,
    labels: Vec<u32>,
    classes: Vec<Vec<u32>>,
}

impl Partition {
    pub fn word_len(&self) -> usize {
        self.len
    }

    pub fn packing(&self) -> Packing {
        self.packing
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Sorted member codes of class `id`; ids follow canonical order.
    pub fn class_codes(&self, id: usize) -> &[u32] {
        &self.classes[id]
    }

    pub fn canonical(&self, id: usize) -> Word {
        self.packing.unpack(self.classes[id][0], self.len)
    }

    /// Class id of a packed word over representative letters.
    pub fn class_of_code(&self, code: u32) -> Option<usize> {
        let l = self.labels[self.packing.rank(code, self.len)];
        (l != UNLABELED).then_some(l as usize)
    }

    pub fn class_of(&self, word: &Word) -> Option<usize> {
        if word.len() != self.len {
            return None;
        }
        self.packing.pack(word).and_then(|c| self.class_of_code(c))
    }

    pub fn class_words(&self, id: usize) -> impl Iterator<Item = Word> + '_ {
        self.classes[id]
            .iter()
            .map(move |&c| self.packing.unpack(c, self.len))
    }
}

impl Rewriter {
    /// Compile a presentation; it is normalized first.
    pub fn new(presentation: &Presentation) -> Self {
        let pres = if presentation.is_normalized() {
            presentation.clone()
        } else {
            presentation.normalize()
        };
        let mut rules = Vec::new();
        for (i, r) in pres.relations().iter().enumerate() {
            rules.push(Rule {
                relation: i,
                direction: Direction::Forward,
                from: r.lhs.clone(),
                to: r.rhs.clone(),
            });
            rules.push(Rule {
                relation: i,
                direction: Direction::Backward,
                from: r.rhs.clone(),
                to: r.lhs.clone(),
            });
        }
        let packing = Packing::for_alphabet(pres.alphabet_len().max(1));
        let mut lens: Vec<usize> = rules.iter().map(|r| r.from.len()).collect();
        lens.sort_unstable();
        lens.dedup();
        let tables = lens
            .into_iter()
            .filter(|&k| packing.fits(k))
            .map(|k| build_table(&rules, packing, k))
            .collect();
        Rewriter {
            pres,
            rules,
            packing,
            tables,
            cache: RefCell::new(ClassCache::default()),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn packing(&self) -> Packing {
        self.packing
    }

    pub fn generators(&self) -> Vec<Letter> {
        self.pres.generators()
    }

    pub fn clear_cache(&self) {
        *self.cache.borrow_mut() = ClassCache::default();
    }

    fn packed(&self, len: usize) -> bool {
        self.packing.fits(len)
    }

    #[inline]
    fn packed_neighbors(&self, code: u32, len: usize, out: &mut Vec<(u32, Step)>) {
        let bits = self.packing.bits();
        for t in &self.tables {
            if t.len > len {
                break;
            }
            for pos in 0..=len - t.len {
                let shift = (len - pos - t.len) as u32 * bits;
                let window = (code >> shift) & t.mask;
                for &(to, rule) in t.get(window) {
                    let next = (code & !(t.mask << shift)) | (to << shift);
                    out.push((
                        next,
                        Step {
                            pos: pos as u8,
                            rule,
                        },
                    ));
                }
            }
        }
    }

    fn plain_neighbors(&self, word: &Word, out: &mut Vec<(Word, Step)>) {
        let letters = word.letters();
        for (ri, rule) in self.rules.iter().enumerate() {
            let k = rule.from.len();
            if k > letters.len() {
                continue;
            }
            for pos in 0..=letters.len() - k {
                if &letters[pos..pos + k] == rule.from.letters() {
                    let mut next = letters.to_vec();
                    next[pos..pos + k].copy_from_slice(rule.to.letters());
                    out.push((
                        Word::from_letters(next),
                        Step {
                            pos: pos.min(u8::MAX as usize) as u8,
                            rule: ri as u16,
                        },
                    ));
                }
            }
        }
    }

    /// Words reachable by exactly one relation application, in either
    /// direction at any position; sorted, without duplicates, excluding `w`.
    pub fn neighbors(&self, w: &Word) -> Vec<Word> {
        let w = self.pres.canonical_letters(w);
        let mut out: Vec<Word> = match self.packing.pack(&w) {
            Some(code) => {
                let mut buf = Vec::new();
                self.packed_neighbors(code, w.len(), &mut buf);
                buf.into_iter()
                    .map(|(c, _)| self.packing.unpack(c, w.len()))
                    .collect()
            }
            None => {
                let mut buf = Vec::new();
                self.plain_neighbors(&w, &mut buf);
                buf.into_iter().map(|(x, _)| x).collect()
            }
        };
        out.sort();
        out.dedup();
        out.retain(|x| *x != w);
        out
    }

    fn bfs<C, V, T>(
        &self,
        seed: C,
        visited: &mut V,
        budget: SearchBudget,
        neighbors: impl Fn(&C, &mut Vec<(C, Step)>),
        mut visit: impl FnMut(&C) -> Option<T>,
    ) -> Result<Bfs<T, C>, SearchError>
    where
        C: Clone,
        V: VisitSet<C>,
    {
        visited.insert(&seed);
        if let Some(t) = visit(&seed) {
            return Ok(Bfs::Stopped(t));
        }
        let mut members = vec![seed];
        let mut head = 0;
        let mut buf = Vec::new();
        while head < members.len() {
            buf.clear();
            neighbors(&members[head], &mut buf);
            head += 1;
            for (next, _) in buf.drain(..) {
                if visited.insert(&next) {
                    budget.check(members.len() as u64 + 1)?;
                    if let Some(t) = visit(&next) {
                        return Ok(Bfs::Stopped(t));
                    }
                    members.push(next);
                }
            }
        }
        Ok(Bfs::Complete(members))
    }

    /// Breadth-first exploration of the class of `seed`, calling `visit` on
    /// every member as it is discovered. Stops early with `Ok(Err(t))` when
    /// `visit` returns `Some(t)`; otherwise returns the complete class.
    pub fn explore<T>(
        &self,
        seed: &Word,
        budget: SearchBudget,
        mut visit: impl FnMut(MemberRef<'_>) -> Option<T>,
    ) -> Result<Result<EquivClass, T>, SearchError> {
        let seed = self.pres.canonical_letters(seed);
        let len = seed.len();
        if let Some(code) = self.packing.pack(&seed) {
            let packing = self.packing;
            let nb = |c: &u32, out: &mut Vec<(u32, Step)>| self.packed_neighbors(*c, len, out);
            let vis = |c: &u32| {
                visit(MemberRef::Packed {
                    packing,
                    len,
                    code: *c,
                })
            };
            let res = if dense_size(packing.alphabet(), len).is_some() {
                let mut set = DenseSet {
                    packing,
                    len,
                    bits: vec![0u64; dense_size(packing.alphabet(), len).unwrap().div_ceil(64)],
                };
                self.bfs(code, &mut set, budget, nb, vis)?
            } else {
                let mut set: HashSet<u32> = HashSet::new();
                self.bfs(code, &mut set, budget, nb, vis)?
            };
            Ok(match res {
                Bfs::Stopped(t) => Err(t),
                Bfs::Complete(mut codes) => {
                    codes.sort_unstable();
                    Ok(EquivClass {
                        seed,
                        members: Members::Packed {
                            packing,
                            len,
                            codes,
                        },
                    })
                }
            })
        } else {
            let mut set: HashSet<Word> = HashSet::new();
            let nb = |w: &Word, out: &mut Vec<(Word, Step)>| self.plain_neighbors(w, out);
            let res = self.bfs(seed.clone(), &mut set, budget, nb, |w: &Word| {
                visit(MemberRef::Plain(w))
            })?;
            Ok(match res {
                Bfs::Stopped(t) => Err(t),
                Bfs::Complete(mut words) => {
                    words.sort_unstable();
                    Ok(EquivClass {
                        seed,
                        members: Members::Plain(words),
                    })
                }
            })
        }
    }

    /// The complete class of `w`, uncached.
    pub fn equivalence_class(
        &self,
        w: &Word,
        budget: SearchBudget,
    ) -> Result<EquivClass, SearchError> {
        match self.explore(w, budget, |_| None::<()>)? {
            Ok(c) => Ok(c),
            Err(()) => unreachable!(),
        }
    }

    /// The class of `w`, served from the cache when possible.
    pub fn class(&self, w: &Word, budget: SearchBudget) -> Result<Rc<EquivClass>, SearchError> {
        let w = self.pres.canonical_letters(w);
        if let Some(c) = self.cache.borrow().get(&w) {
            return Ok(c);
        }
        let c = Rc::new(self.equivalence_class(&w, budget)?);
        self.cache.borrow_mut().insert(c.clone());
        Ok(c)
    }

    /// The cached class of `w`, if present.
    pub fn cached(&self, w: &Word) -> Option<Rc<EquivClass>> {
        self.cache.borrow().get(&self.pres.canonical_letters(w))
    }

    /// Search the class of `w` for a member accepted by `f`, reusing a cached
    /// class when available and caching the class after a full enumeration.
    pub fn find_member<T>(
        &self,
        w: &Word,
        budget: SearchBudget,
        mut f: impl FnMut(MemberRef<'_>) -> Option<T>,
    ) -> Result<Option<T>, SearchError> {
        if let Some(c) = self.cached(w) {
            return Ok(c.iter().find_map(f));
        }
        match self.explore(w, budget, &mut f)? {
            Err(t) => Ok(Some(t)),
            Ok(class) => {
                self.cache.borrow_mut().insert(Rc::new(class));
                Ok(None)
            }
        }
    }

    pub fn are_equivalent(&self, u: &Word, v: &Word, budget: SearchBudget) -> Verdict {
        if u.len() != v.len() {
            return Verdict::No;
        }
        let v = self.pres.canonical_letters(v);
        if let Some(c) = self.cache.borrow().get(&self.pres.canonical_letters(u)) {
            return Verdict::from_bool(c.contains(&v));
        }
        let target = self.packing.pack(&v);
        let found = self.explore(u, budget, |m| {
            let hit = match (m, target) {
                (MemberRef::Packed { code, .. }, Some(t)) => code == t,
                (m, _) => m.to_word() == v,
            };
            hit.then_some(())
        });
        match found {
            Ok(Err(())) => Verdict::Yes,
            Ok(Ok(class)) => {
                let class = Rc::new(class);
                self.cache.borrow_mut().insert(class);
                Verdict::No
            }
            Err(e) => Verdict::inconclusive(e),
        }
    }

    /// A shortest chain of elementary equivalences from `u` to `v`;
    /// `Ok(None)` proves non-equivalence.
    pub fn derivation(
        &self,
        u: &Word,
        v: &Word,
        budget: SearchBudget,
    ) -> Result<Option<Derivation>, SearchError> {
        let u0 = self.pres.canonical_letters(u);
        let v0 = self.pres.canonical_letters(v);
        if u0.len() != v0.len() {
            return Ok(None);
        }
        let len = u0.len();
        let chain = if let (Some(s), Some(t)) = (self.packing.pack(&u0), self.packing.pack(&v0)) {
            let nb = |c: &u32, out: &mut Vec<(u32, Step)>| self.packed_neighbors(*c, len, out);
            shortest_chain(s, t, budget, nb)?.map(|steps| {
                steps
                    .into_iter()
                    .map(|(c, st)| (self.packing.unpack(c, len), st))
                    .collect::<Vec<_>>()
            })
        } else {
            let nb = |w: &Word, out: &mut Vec<(Word, Step)>| self.plain_neighbors(w, out);
            shortest_chain(u0.clone(), v0.clone(), budget, nb)?
        };
        Ok(chain.map(|steps| Derivation {
            source: u0,
            target: v0,
            steps: steps
                .into_iter()
                .map(|(word, st)| {
                    let rule = &self.rules[st.rule as usize];
                    DerivationStep {
                        word,
                        position: st.pos as usize,
                        relation: rule.relation,
                        direction: rule.direction,
                    }
                })
                .collect(),
        }))
    }

    /// Partition all words of length `len` over representative letters into
    /// classes, in canonical order.
    pub fn partition(&self, len: usize, budget: SearchBudget) -> Result<Partition, SearchError> {
        let k = self.packing.alphabet();
        let total = dense_size(k, len)
            .filter(|_| self.packed(len))
            .ok_or(SearchError::TooLarge { len, alphabet: k })?;
        let mut labels = vec![UNLABELED; total];
        let reps: Vec<bool> = (0..k as u8)
            .map(|l| self.pres.rep(Letter(l)) == Letter(l))
            .collect();
        let mut classes: Vec<Vec<u32>> = Vec::new();
        let mut visited = 0u64;
        for rank in 0..total {
            if labels[rank] != UNLABELED {
                continue;
            }
            let code = self.packing.unrank(rank, len);
            let w = self.packing.unpack(code, len);
            if !w.letters().iter().all(|l| reps[l.index()]) {
                continue;
            }
            let mut set = LabelSet {
                packing: self.packing,
                len,
                labels: &mut labels,
                id: classes.len() as u32,
            };
            let nb = |c: &u32, out: &mut Vec<(u32, Step)>| self.packed_neighbors(*c, len, out);
            let remaining = budget
                .max_nodes()
                .map(|m| SearchBudget::nodes(m.saturating_sub(visited).max(1)).unwrap())
                .unwrap_or_default();
            let members = match self.bfs(code, &mut set, remaining, nb, |_| None::<()>) {
                Ok(Bfs::Complete(m)) => m,
                Ok(Bfs::Stopped(())) => unreachable!(),
                Err(SearchError::BudgetExceeded { visited: v }) => {
                    return Err(SearchError::BudgetExceeded {
                        visited: visited + v,
                    })
                }
                Err(e) => return Err(e),
            };
            visited += members.len() as u64;
            budget.check(visited)?;
            let mut members = members;
            members.sort_unstable();
            classes.push(members);
        }
        Ok(Partition {
            packing: self.packing,
            len,
            labels,
            classes,
        })
    }
}

fn dense_size(alphabet: usize, len: usize) -> Option<usize> {
    let mut n: usize = 1;
    for _ in 0..len {
        n = n.checked_mul(alphabet)?;
        if n > DENSE_LIMIT {
            return None;
        }
    }
    Some(n)
}

fn build_table(rules: &[Rule], packing: Packing, k: usize) -> WindowTable {
    let mut entries: Vec<(u32, u32, u16)> = rules
        .iter()
        .enumerate()
        .filter(|(_, r)| r.from.len() == k)
        .map(|(i, r)| {
            (
                packing.pack(&r.from).unwrap(),
                packing.pack(&r.to).unwrap(),
                i as u16,
            )
        })
        .collect();
    entries.sort_unstable();
    let bits = packing.bits() * k as u32;
    let lookup = if bits <= DENSE_WINDOW_BITS {
        let size = 1usize << bits;
        let mut offsets = vec![0u32; size + 1];
        for &(from, _, _) in &entries {
            offsets[from as usize + 1] += 1;
        }
        for i in 0..size {
            offsets[i + 1] += offsets[i];
        }
        WindowLookup::Dense {
            offsets,
            entries: entries.iter().map(|&(_, to, r)| (to, r)).collect(),
        }
    } else {
        let mut map: HashMap<u32, Vec<(u32, u16)>> = HashMap::new();
        for (from, to, r) in entries {
            map.entry(from).or_default().push((to, r));
        }
        WindowLookup::Sparse(map)
    };
    WindowTable {
        len: k,
        mask: packing.window_mask(k),
        lookup,
    }
}

/// Breadth-first search with parent links; returns the steps after `source`.
#[allow(clippy::type_complexity)]
fn shortest_chain<C: Clone + Eq + Hash>(
    source: C,
    target: C,
    budget: SearchBudget,
    neighbors: impl Fn(&C, &mut Vec<(C, Step)>),
) -> Result<Option<Vec<(C, Step)>>, SearchError> {
    if source == target {
        return Ok(Some(Vec::new()));
    }
    let mut nodes: Vec<(C, usize, Step)> = vec![(source.clone(), usize::MAX, Step { pos: 0, rule: 0 })];
    let mut seen: HashSet<C> = HashSet::new();
    seen.insert(source);
    let mut head = 0;
    let mut buf = Vec::new();
    while head < nodes.len() {
        buf.clear();
        neighbors(&nodes[head].0, &mut buf);
        for (next, st) in buf.drain(..) {
            if seen.insert(next.clone()) {
                budget.check(nodes.len() as u64 + 1)?;
                let hit = next == target;
                nodes.push((next, head, st));
                if hit {
                    let mut chain = Vec::new();
                    let mut i = nodes.len() - 1;
                    while nodes[i].1 != usize::MAX {
                        chain.push((nodes[i].0.clone(), nodes[i].2));
                        i = nodes[i].1;
                    }
                    chain.reverse();
                    return Ok(Some(chain));
                }
            }
        }
        head += 1;
    }
    Ok(None)
}

//! Brute-force oracle: union-find over every word of a fixed length, joining
//! words that differ by one relation application. Shares no code with the
//! packed-word search.

#![allow(dead_code)]

use std::collections::BTreeMap;

use posmon_core::{Letter, Rewriter, Word};

pub struct Oracle {
    pub gens: Vec<u8>,
    pub len: usize,
    parent: Vec<usize>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Oracle {
    pub fn new(rw: &Rewriter, len: usize) -> Self {
        let gens: Vec<u8> = rw.generators().iter().map(|l| l.0).collect();
        let rels: Vec<(Vec<u8>, Vec<u8>)> = rw
            .presentation()
            .relations()
            .iter()
            .map(|r| (raw(&r.lhs), raw(&r.rhs)))
            .collect();
        let total = gens.len().pow(len as u32);
        let mut parent: Vec<usize> = (0..total).collect();
        let mut oracle = Oracle { gens, len, parent: Vec::new() };
        for i in 0..total {
            let w = oracle.word_at(i);
            for (l, r) in &rels {
                for (from, to) in [(l, r), (r, l)] {
                    if from.len() > len {
                        continue;
                    }
                    for p in 0..=len - from.len() {
                        if &w[p..p + from.len()] == from.as_slice() {
                            let mut v = w.clone();
                            v[p..p + to.len()].copy_from_slice(to);
                            let j = oracle.index_of(&v);
                            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                            parent[a.max(b)] = a.min(b);
                        }
                    }
                }
            }
        }
        oracle.parent = parent;
        oracle
    }

    pub fn word_at(&self, mut i: usize) -> Vec<u8> {
        let k = self.gens.len();
        let mut out = vec![0; self.len];
        for slot in out.iter_mut().rev() {
            *slot = self.gens[i % k];
            i /= k;
        }
        out
    }

    pub fn index_of(&self, w: &[u8]) -> usize {
        let k = self.gens.len();
        w.iter().fold(0, |acc, c| {
            acc * k + self.gens.iter().position(|g| g == c).expect("letter")
        })
    }

    pub fn size(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&mut self, i: usize) -> usize {
        find(&mut self.parent, i)
    }

    pub fn same(&mut self, u: &[u8], v: &[u8]) -> bool {
        let (i, j) = (self.index_of(u), self.index_of(v));
        self.root(i) == self.root(j)
    }

    /// Classes as sorted lists of words, keyed by their least member.
    pub fn classes(&mut self) -> BTreeMap<Vec<u8>, Vec<Vec<u8>>> {
        let mut by_root: BTreeMap<usize, Vec<Vec<u8>>> = BTreeMap::new();
        for i in 0..self.size() {
            let r = self.root(i);
            by_root.entry(r).or_default().push(self.word_at(i));
        }
        by_root
            .into_values()
            .map(|mut ws| {
                ws.sort();
                (ws[0].clone(), ws)
            })
            .collect()
    }
}

pub fn raw(w: &Word) -> Vec<u8> {
    w.letters().iter().map(|l| l.0).collect()
}

pub fn word(raw: &[u8]) -> Word {
    Word::from_letters(raw.iter().map(|&b| Letter(b)).collect())
}

/// Every word of length `len` over `gens`, lexicographic.
pub fn all_words(gens: &[u8], len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
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

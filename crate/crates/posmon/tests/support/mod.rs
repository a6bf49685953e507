//! Helpers shared by the command-line test targets: running the binary and a
//! union-find oracle over all words of one length.

#![allow(dead_code)]

use std::process::Command;

use posmon_core::{Letter, Presentation, Word};
use serde_json::Value;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn posmon(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_posmon"))
        .args(args)
        .output()
        .expect("spawn posmon");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn posmon_json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let r = posmon(&all);
    let v = serde_json::from_str(&r.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\nstdout: {}\nstderr: {}", r.stdout, r.stderr));
    (r.code, v)
}

/// Classes of all words of length `len` over the representative letters,
/// found by joining words one relation application apart.
pub struct Oracle {
    gens: Vec<u8>,
    len: usize,
    parent: Vec<usize>,
}

impl Oracle {
    pub fn new(pres: &Presentation, len: usize) -> Self {
        let pres = pres.normalize();
        let gens: Vec<u8> = pres.generators().iter().map(|l| l.0).collect();
        let rels: Vec<(Vec<u8>, Vec<u8>)> = pres
            .relations()
            .iter()
            .map(|r| (raw(&r.lhs), raw(&r.rhs)))
            .collect();
        let total = gens.len().pow(len as u32);
        let mut o = Oracle {
            gens,
            len,
            parent: (0..total).collect(),
        };
        for i in 0..total {
            let w = o.word_at(i);
            for (l, r) in &rels {
                for (from, to) in [(l, r), (r, l)] {
                    if from.len() > len {
                        continue;
                    }
                    for p in 0..=len - from.len() {
                        if w[p..p + from.len()] == from[..] {
                            let mut v = w.clone();
                            v[p..p + to.len()].copy_from_slice(to);
                            let j = o.index_of(&v);
                            o.union(i, j);
                        }
                    }
                }
            }
        }
        o
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.parent[a.max(b)] = a.min(b);
    }

    pub fn words(&self) -> Vec<Vec<u8>> {
        (0..self.parent.len()).map(|i| self.word_at(i)).collect()
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
        w.iter()
            .fold(0, |acc, c| acc * k + self.gens.iter().position(|g| g == c).unwrap())
    }

    /// Least member of the class of `w`; words are ordered by letter index.
    pub fn canonical(&mut self, w: &[u8]) -> Vec<u8> {
        let r = self.find(self.index_of(w));
        self.word_at(r)
    }

    pub fn same(&mut self, u: &[u8], v: &[u8]) -> bool {
        let (i, j) = (self.index_of(u), self.index_of(v));
        self.find(i) == self.find(j)
    }

    /// Canonical words of all classes, ascending.
    pub fn canonicals(&mut self) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        for i in 0..self.parent.len() {
            if self.find(i) == i {
                out.push(self.word_at(i));
            }
        }
        out.sort();
        out
    }

    pub fn members(&mut self, w: &[u8]) -> Vec<Vec<u8>> {
        let r = self.find(self.index_of(w));
        let mut out = Vec::new();
        for i in 0..self.parent.len() {
            if self.find(i) == r {
                out.push(self.word_at(i));
            }
        }
        out
    }
}

pub fn raw(w: &Word) -> Vec<u8> {
    w.letters().iter().map(|l| l.0).collect()
}

pub fn word(raw: &[u8]) -> Word {
    Word::from_letters(raw.iter().map(|&b| Letter(b)).collect())
}

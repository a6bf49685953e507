//! Letters, positive words and the packed 32-bit word code.

use alloc::vec::Vec;
use core::fmt;

/// Index of a generator in a presentation's alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u8);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A positive word over a fixed alphabet. The empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub const fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn from_indices(indices: &[u8]) -> Self {
        Word(indices.iter().map(|&i| Letter(i)).collect())
    }

    pub fn single(letter: Letter) -> Self {
        Word(alloc::vec![letter])
    }

    /// The length function: every letter counts one.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn pow(&self, k: usize) -> Word {
        let mut letters = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.0);
        }
        Word(letters)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn suffix(&self, n: usize) -> Word {
        Word(self.0[self.len() - n..].to_vec())
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    /// Apply a letter substitution letterwise.
    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> Word {
        Word(self.0.iter().map(|&l| f(l)).collect())
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Render with single-character placeholder names `a`, `b`, ...
    pub fn display_abc(&self) -> alloc::string::String {
        self.0.iter().map(|l| (b'a' + l.0) as char).collect()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.display_abc())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Fixed-width packing of words into a `u32`, first letter in the most
/// significant occupied bits. For words of equal length the numeric order of
/// codes is the index-lexicographic order of the words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Packing {
    bits: u32,
    alphabet: usize,
}

impl Packing {
    pub const CODE_BITS: u32 = 32;

    pub fn for_alphabet(alphabet: usize) -> Self {
        let mut bits = 1;
        while (1usize << bits) < alphabet {
            bits += 1;
        }
        Packing { bits, alphabet }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    /// Longest word that fits in one code.
    pub fn max_len(&self) -> usize {
        (Self::CODE_BITS / self.bits) as usize
    }

    pub fn fits(&self, len: usize) -> bool {
        len <= self.max_len()
    }

    pub fn letter_mask(&self) -> u32 {
        (1u32 << self.bits) - 1
    }

    pub fn window_mask(&self, len: usize) -> u32 {
        let b = self.bits as usize * len;
        if b >= 32 {
            u32::MAX
        } else {
            (1u32 << b) - 1
        }
    }

    pub fn pack(&self, word: &Word) -> Option<u32> {
        if !self.fits(word.len()) {
            return None;
        }
        let mut code = 0u32;
        for l in word.letters() {
            if l.index() >= self.alphabet {
                return None;
            }
            code = (code << self.bits) | l.0 as u32;
        }
        Some(code)
    }

    pub fn unpack(&self, code: u32, len: usize) -> Word {
        let mask = self.letter_mask();
        (0..len)
            .map(|i| {
                let shift = (len - 1 - i) as u32 * self.bits;
                Letter(((code >> shift) & mask) as u8)
            })
            .collect()
    }

    /// Letter at position `pos` of a packed word of length `len`.
    pub fn letter_at(&self, code: u32, len: usize, pos: usize) -> Letter {
        let shift = (len - 1 - pos) as u32 * self.bits;
        Letter(((code >> shift) & self.letter_mask()) as u8)
    }

    /// Packed prefix of length `n` of a packed word of length `len`.
    pub fn prefix(&self, code: u32, len: usize, n: usize) -> u32 {
        if n == 0 {
            return 0;
        }
        code >> ((len - n) as u32 * self.bits)
    }

    pub fn suffix(&self, code: u32, n: usize) -> u32 {
        code & self.window_mask(n)
    }

    /// Code of the concatenation `(a, a_len) · (b, b_len)`.
    pub fn concat(&self, a: u32, b: u32, b_len: usize) -> u32 {
        let shift = b_len as u32 * self.bits;
        if shift >= Self::CODE_BITS {
            return b;
        }
        (a << shift) | b
    }

    /// Dense rank in base `alphabet`; a bijection from packed words of a
    /// fixed length over the alphabet onto `0..alphabet^len`.
    pub fn rank(&self, code: u32, len: usize) -> usize {
        let mask = self.letter_mask();
        let mut r = 0usize;
        for i in 0..len {
            let shift = (len - 1 - i) as u32 * self.bits;
            r = r * self.alphabet + ((code >> shift) & mask) as usize;
        }
        r
    }

    pub fn unrank(&self, mut rank: usize, len: usize) -> u32 {
        let mut code = 0u32;
        for i in 0..len {
            let digit = (rank % self.alphabet) as u32;
            rank /= self.alphabet;
            code |= digit << (i as u32 * self.bits);
        }
        code
    }
}

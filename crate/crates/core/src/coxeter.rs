//! Permutations of `S_n` in one-line notation and words in the simple
//! transpositions `s_1, ..., s_{n-1}`.
//!
//! Products use the right action: `w * s_i` swaps the one-line entries in
//! positions `i` and `i + 1`. Under this convention the staircase word
//! `(s_3, s_2, s_1, s_3, s_2, s_3)` multiplies out to `4321`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("could not parse {0:?}")]
    Parse(String),
    #[error("not a bijection of 1..{n}: {detail}")]
    NotABijection { n: usize, detail: String },
    #[error("letter s_{letter} is outside 1..{max} for rank {n}")]
    LetterOutOfRange { letter: usize, n: usize, max: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("rank must be at least 1")]
    ZeroRank,
}

/// An element of `S_n`, stored as its one-line notation `w(1) ... w(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from one-line images, checking it is a bijection of `1..=n`.
    pub fn new(images: Vec<usize>) -> Result<Self, CoxeterError> {
        let n = images.len();
        if n == 0 {
            return Err(CoxeterError::ZeroRank);
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n {
                return Err(CoxeterError::NotABijection {
                    n,
                    detail: format!("image {v} out of range"),
                });
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(CoxeterError::NotABijection {
                    n,
                    detail: format!("image {v} repeated"),
                });
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// `w_0 = [n, n-1, ..., 1]`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `w(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// Number of inversions, which is the Coxeter length.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.rank()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Right multiplication by `s_i`: swaps one-line positions `i` and `i + 1`.
    pub fn times_simple(&self, i: usize) -> Self {
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// Left multiplication by `s_i`: swaps the values `i` and `i + 1`.
    pub fn simple_times(&self, i: usize) -> Self {
        let images = self
            .images
            .iter()
            .map(|&v| {
                if v == i {
                    i + 1
                } else if v == i + 1 {
                    i
                } else {
                    v
                }
            })
            .collect();
        Permutation { images }
    }

    /// Whether `w * s_i` is longer than `w`, i.e. `w(i) < w(i + 1)`.
    pub fn has_right_ascent(&self, i: usize) -> bool {
        self.images[i - 1] < self.images[i]
    }

    /// Composition `self * other` as functions applied right to left:
    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self, CoxeterError> {
        if self.rank() != other.rank() {
            return Err(CoxeterError::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i - 1]).collect(),
        })
    }

    /// Every permutation of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation {
                images: current.clone(),
            });
            if !next_permutation(&mut current) {
                break;
            }
        }
        out
    }

    /// Reduced word obtained by repeatedly sorting the leftmost descent.
    pub fn reduced_word(&self) -> Word {
        let mut letters = Vec::new();
        let mut w = self.clone();
        // w = w' * s_i with w(i) > w(i+1); peel letters off the right.
        while let Some(i) = (1..w.rank()).find(|&i| !w.has_right_ascent(i)) {
            letters.push(i);
            w = w.times_simple(i);
        }
        letters.reverse();
        Word {
            n: self.rank(),
            letters,
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Accepts the digit form `1432` (only for `n < 10`) or the CSV form `1,4,3,2`.
impl FromStr for Permutation {
    type Err = CoxeterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(CoxeterError::Parse(s.to_string()));
        }
        let images = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CoxeterError::Parse(s.to_string()))?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| CoxeterError::Parse(s.to_string()))?
        };
        Permutation::new(images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() < 10 {
            for v in &self.images {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// A word in the simple reflections of `S_n`; letter `k` stands for `s_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    n: usize,
    letters: Vec<usize>,
}

impl Word {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self, CoxeterError> {
        if n == 0 {
            return Err(CoxeterError::ZeroRank);
        }
        if let Some(&letter) = letters.iter().find(|&&k| k == 0 || k >= n) {
            return Err(CoxeterError::LetterOutOfRange {
                letter,
                n,
                max: n - 1,
            });
        }
        Ok(Word { n, letters })
    }

    pub fn empty(n: usize) -> Self {
        Word {
            n,
            letters: Vec::new(),
        }
    }

    /// Parses comma-separated letter indices, e.g. `"3,2,1,3,2,3"`. The empty
    /// string is the empty word.
    pub fn parse(n: usize, text: &str) -> Result<Self, CoxeterError> {
        let text = text.trim();
        let letters = if text.is_empty() {
            Vec::new()
        } else {
            text.split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CoxeterError::Parse(text.to_string()))?
        };
        Word::new(n, letters)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Subword at the positions whose bits are set in `mask` (bit `k` is position `k + 1`).
    pub fn restrict(&self, mask: u64) -> Word {
        Word {
            n: self.n,
            letters: self
                .letters
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &l)| l)
                .collect(),
        }
    }

    /// Drops the first letter.
    pub fn tail(&self) -> Word {
        Word {
            n: self.n,
            letters: self.letters.get(1..).unwrap_or_default().to_vec(),
        }
    }

    /// The ordinary product `s_{i_1} ... s_{i_k}` acting on the identity from the right.
    pub fn apply(&self) -> Permutation {
        self.letters
            .iter()
            .fold(Permutation::identity(self.n), |w, &i| w.times_simple(i))
    }

    pub fn is_reduced(&self) -> bool {
        self.apply().length() == self.len()
    }

    /// Demazure product: multiply left to right, skipping letters that would
    /// decrease the length.
    pub fn demazure_product(&self) -> Permutation {
        demazure_of_letters(self.n, self.letters.iter().copied())
    }

    /// Collapses every maximal run of equal consecutive letters to one letter.
    pub fn tilde_delta(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.dedup();
        Word { n: self.n, letters }
    }

    /// No two consecutive letters are equal.
    pub fn is_tilde_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| p[0] != p[1])
    }

    /// Whether `pattern` occurs as a (not necessarily contiguous) subsequence.
    pub fn contains_subsequence(&self, pattern: &Word) -> bool {
        let mut it = self.letters.iter();
        pattern.letters.iter().all(|l| it.any(|x| x == l))
    }
}

pub(crate) fn demazure_of_letters(n: usize, letters: impl IntoIterator<Item = usize>) -> Permutation {
    let mut w = Permutation::identity(n);
    for i in letters {
        if w.has_right_ascent(i) {
            w = w.times_simple(i);
        }
    }
    w
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

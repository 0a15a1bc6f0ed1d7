//! Pipe dreams on the `n x n` staircase.
//!
//! A pipe dream is stored as a bitmask over the `n(n-1)/2` cells strictly
//! above the antidiagonal, indexed by their position in the staircase word
//! `Q_{0,n} = (s_{n-1} ... s_1)(s_{n-1} ... s_2) ... (s_{n-1})`: rows top to
//! bottom, each row right to left. Cell `(i, j)` carries the letter
//! `s_{i+j-1}`, so subwords of `Q_{0,n}` and pipe dreams are the same thing.

mod enumerate;
mod slide;

pub use enumerate::{
    enumerate_pipe_dreams, enumerate_quasi_yamanouchi, glide_orbits, glide_polynomial,
    grothendieck_from_pipedreams, schubert_from_pipedreams, slide_orbits, slide_polynomial,
    GlideOrbit, PipeDreamTable, QuasiYamanouchiCertificate,
};

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::coxeter::{demazure_of_letters, Permutation, Word};
use crate::polynomial::Polynomial;

/// Largest rank whose staircase fits in a 64-bit mask.
pub const MAX_RANK: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipeDreamError {
    #[error("rank {0} is outside 1..={MAX_RANK}")]
    RankOutOfRange(usize),
    #[error("cell ({0},{1}) is not strictly above the antidiagonal of the {2}x{2} square")]
    CellOutOfRange(usize, usize, usize),
    #[error("pipe dream is not quasi-Yamanouchi")]
    NotQuasiYamanouchi,
    #[error("pipe dream is not reduced (excess {0})")]
    NotReduced(usize),
    #[error("word {0} does not occur in the staircase word of rank {1}")]
    NotInStaircase(String, usize),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
}

/// Number of cells strictly above the antidiagonal.
pub fn staircase_len(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// 0-based position of cell `(i, j)` in the staircase reading order.
pub fn cell_position(n: usize, i: usize, j: usize) -> usize {
    let before: usize = (1..i).map(|r| n - r).sum();
    before + (n - i - j)
}

/// Cell at a 0-based staircase position.
pub fn position_cell(n: usize, mut pos: usize) -> (usize, usize) {
    for i in 1..n {
        let row_len = n - i;
        if pos < row_len {
            return (i, row_len - pos);
        }
        pos -= row_len;
    }
    panic!("position out of range for rank {n}");
}

/// The staircase word `Q_{0,n}`.
pub fn staircase_word(n: usize) -> Word {
    let letters = (0..staircase_len(n))
        .map(|p| {
            let (i, j) = position_cell(n, p);
            i + j - 1
        })
        .collect();
    Word::new(n.max(1), letters).expect("staircase letters are in range")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PipeDream {
    n: usize,
    mask: u64,
}

/// Result of following the strands through a pipe dream.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Trace {
    shape: Permutation,
    reduced_mask: u64,
}

impl PipeDream {
    pub fn empty(n: usize) -> Result<Self, PipeDreamError> {
        Self::from_mask(n, 0)
    }

    /// Every cell is a cross.
    pub fn full(n: usize) -> Result<Self, PipeDreamError> {
        check_rank(n)?;
        Ok(PipeDream {
            n,
            mask: full_mask(n),
        })
    }

    pub fn from_mask(n: usize, mask: u64) -> Result<Self, PipeDreamError> {
        check_rank(n)?;
        if mask & !full_mask(n) != 0 {
            return Err(PipeDreamError::CellOutOfRange(0, 0, n));
        }
        Ok(PipeDream { n, mask })
    }

    pub fn from_crosses(n: usize, crosses: &[(usize, usize)]) -> Result<Self, PipeDreamError> {
        check_rank(n)?;
        let mut mask = 0;
        for &(i, j) in crosses {
            if i == 0 || j == 0 || i + j > n {
                return Err(PipeDreamError::CellOutOfRange(i, j, n));
            }
            mask |= 1 << cell_position(n, i, j);
        }
        Ok(PipeDream { n, mask })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Cross positions as a bitmask over the staircase word.
    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn cross_count(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn has_cross(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && i + j <= self.n && self.mask >> cell_position(self.n, i, j) & 1 == 1
    }

    /// Crosses sorted by row, then column.
    pub fn crosses(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self.positions().map(|p| position_cell(self.n, p)).collect();
        out.sort_unstable();
        out
    }

    /// 0-based staircase positions of the crosses, in reading order.
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..staircase_len(self.n)).filter(move |p| self.mask >> p & 1 == 1)
    }

    /// `word(P)`: letters of the crosses in reading order.
    pub fn word(&self) -> Word {
        staircase_word(self.n).restrict(self.mask)
    }

    /// Demazure product of `word(P)`.
    pub fn demazure_shape(&self) -> Permutation {
        let n = self.n;
        demazure_of_letters(
            n,
            self.positions().map(|p| {
                let (i, j) = position_cell(n, p);
                i + j - 1
            }),
        )
    }

    /// Follows the strands backwards from the top edge, row by row from the
    /// top and right to left inside a row. A cross whose two strands have
    /// already crossed is treated as an elbow and dropped from the reduction.
    fn trace(&self) -> Trace {
        let n = self.n;
        // down[j]: label (top exit column) of the strand leaving the current row
        // through the bottom of column j.
        let mut down: Vec<usize> = (0..=n).collect();
        let mut crossed: HashSet<(usize, usize)> = HashSet::new();
        let mut images = vec![0; n];
        let mut reduced_mask = 0u64;
        for i in 1..=n {
            // The antidiagonal cell is an elbow joining its left and top sides.
            let mut left = down[n + 1 - i];
            for j in (1..=n - i).rev() {
                let top = down[j];
                let right = left;
                let pos = cell_position(n, i, j);
                let is_cross = self.mask >> pos & 1 == 1;
                let pair = (top.min(right), top.max(right));
                if is_cross && crossed.insert(pair) {
                    reduced_mask |= 1 << pos;
                    // strands pass straight through
                } else {
                    left = top;
                    down[j] = right;
                }
            }
            images[i - 1] = left;
        }
        Trace {
            shape: Permutation::new(images).expect("strands form a bijection"),
            reduced_mask,
        }
    }

    /// Shape of the reduction, read off the strands.
    pub fn shape(&self) -> Permutation {
        self.trace().shape
    }

    pub fn reduce(&self) -> PipeDream {
        PipeDream {
            n: self.n,
            mask: self.trace().reduced_mask,
        }
    }

    /// Number of crosses removed by reduction.
    pub fn excess(&self) -> usize {
        self.cross_count() - self.reduce().cross_count()
    }

    pub fn is_reduced(&self) -> bool {
        self.excess() == 0
    }

    /// `prod x_i` over the crosses `(i, j)`, in `n - 1` variables.
    pub fn monomial(&self) -> Polynomial {
        let n_vars = self.n - 1;
        let mut exps = vec![0u32; n_vars];
        for (i, _) in self.crosses() {
            exps[i - 1] += 1;
        }
        Polynomial::monomial(n_vars, 1, 0, &exps)
    }

    /// `beta^excess * monomial`.
    pub fn weighted_monomial(&self) -> Polynomial {
        let n_vars = self.n - 1;
        let mut exps = vec![0u32; n_vars];
        for (i, _) in self.crosses() {
            exps[i - 1] += 1;
        }
        Polynomial::monomial(n_vars, 1, self.excess() as u32, &exps)
    }

    /// Grid rendering: `+` for a cross, `.` for an elbow, one row per line.
    pub fn ascii(&self) -> String {
        let mut out = String::new();
        for i in 1..=self.n {
            for j in 1..=self.n + 1 - i {
                out.push(if self.has_cross(i, j) { '+' } else { '.' });
            }
            out.push('\n');
        }
        out
    }

    /// JSON view with the derived fields.
    pub fn summary(&self) -> PipeDreamSummary {
        PipeDreamSummary {
            n: self.n,
            crosses: self.crosses().into_iter().map(|(i, j)| [i, j]).collect(),
            shape: self.shape().to_string(),
            excess: self.excess(),
            word: self.word().to_string(),
            positions: self.positions().map(|p| p + 1).collect(),
            monomial: self.weighted_monomial().to_text(),
        }
    }
}

impl fmt::Display for PipeDream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.crosses().iter().map(|(i, j)| format!("({i},{j})")).collect();
        write!(f, "{{{}}}", cells.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipeDreamSummary {
    pub n: usize,
    pub crosses: Vec<[usize; 2]>,
    pub shape: String,
    pub excess: usize,
    pub word: String,
    /// 1-based positions of `word` inside the staircase word.
    pub positions: Vec<usize>,
    pub monomial: String,
}

fn check_rank(n: usize) -> Result<(), PipeDreamError> {
    if n == 0 || n > MAX_RANK {
        return Err(PipeDreamError::RankOutOfRange(n));
    }
    Ok(())
}

fn full_mask(n: usize) -> u64 {
    let m = staircase_len(n);
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// The quasi-Yamanouchi pipe dream whose word is the rightmost occurrence of
/// `s` inside `Q_{0,n}`.
pub fn quasi_yamanouchi_for_word(s: &Word) -> Result<PipeDream, PipeDreamError> {
    let n = s.rank();
    check_rank(n)?;
    let q = staircase_word(n);
    let mut mask = 0u64;
    let mut k = q.len();
    for &letter in s.letters().iter().rev() {
        let found = (0..k).rev().find(|&p| q.letters()[p] == letter);
        let Some(p) = found else {
            return Err(PipeDreamError::NotInStaircase(s.to_string(), n));
        };
        mask |= 1 << p;
        k = p;
    }
    let dream = PipeDream { n, mask };
    if !dream.is_quasi_yamanouchi() {
        return Err(PipeDreamError::NotQuasiYamanouchi);
    }
    Ok(dream)
}

//! Subword complexes `Delta(Q, pi)` and slide complexes `Delta~(Q, S)`.
//!
//! A face is the set of *deleted* positions of `Q`; its complement `P` must
//! contain a reduced word for `pi` (subword kind) or the word `S` as a
//! subsequence (slide kind). Facets are complements of minimal such `P`.
//! Positions are 1-based in every external form; internally bit `k` of a
//! mask is position `k + 1`.

mod decomposition;
mod flip;
mod shelling;

pub use decomposition::{
    facet_polynomial, face_pipe_dream, interior_decomposition, interior_polynomial,
};
pub use flip::{FlipEdge, FlipGraph};
pub use shelling::{verify_shelling, vertex_decomposition_shelling};

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::coxeter::{Permutation, Word};

/// Longest word a complex can be built on (faces are 64-bit masks).
pub const MAX_WORD_LEN: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("rank mismatch between word (rank {0}) and target (rank {1})")]
    RankMismatch(usize, usize),
    #[error("word of length {0} exceeds the supported {MAX_WORD_LEN} positions")]
    WordTooLong(usize),
    #[error("slide target {0} has equal consecutive letters; the complex is not classified")]
    UnclassifiableSlideTarget(String),
    #[error("the complex has no facets")]
    EmptyComplex,
    #[error("flip graph has {sources} sources and {sinks} sinks; expected exactly one of each")]
    NonUniqueGreedy { sources: usize, sinks: usize },
    #[error("word {0} is not the staircase word of its rank")]
    NotStaircase(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Target {
    Permutation(Permutation),
    Word(Word),
}

impl Target {
    pub fn rank(&self) -> usize {
        match self {
            Target::Permutation(p) => p.rank(),
            Target::Word(w) => w.rank(),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Permutation(p) => write!(f, "{p}"),
            Target::Word(w) => write!(f, "{w}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexKind {
    Subword,
    Slide,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Topology {
    Ball,
    Sphere,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceQuery {
    All,
    Interior,
    Boundary,
}

/// A face, given by the positions deleted from `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Face(u64);

impl Face {
    pub fn from_mask(mask: u64) -> Self {
        Face(mask)
    }

    /// From 1-based positions.
    pub fn from_positions(positions: &[usize]) -> Self {
        Face(positions.iter().fold(0, |m, &p| m | 1 << (p - 1)))
    }

    pub fn mask(&self) -> u64 {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// `|F| - 1`; the empty face has dimension -1.
    pub fn dimension(&self) -> isize {
        self.len() as isize - 1
    }

    /// 1-based deleted positions, ascending.
    pub fn positions(&self) -> Vec<usize> {
        (0..64).filter(|k| self.0 >> k & 1 == 1).map(|k| k + 1).collect()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        self.0 & !other.0 == 0
    }
}

/// Faces sort by size, then lexicographically by position list.
impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.positions().cmp(&other.positions()))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.positions().iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", p.join(","))
    }
}

impl Serialize for Face {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.positions().serialize(serializer)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    word: Word,
    target: Target,
    facets: Vec<Face>,
    facet_size: usize,
    warnings: Vec<String>,
}

fn full_mask(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// All ways to pick `pattern` as a subsequence of `word`, as position masks.
fn occurrences(word: &[usize], pattern: &[usize]) -> Vec<u64> {
    fn go(word: &[usize], pattern: &[usize], start: usize, acc: u64, out: &mut Vec<u64>) {
        let Some((&first, rest)) = pattern.split_first() else {
            out.push(acc);
            return;
        };
        // leave room for the rest of the pattern
        let last = word.len() - rest.len();
        for p in start..last {
            if word[p] == first {
                go(word, rest, p + 1, acc | 1 << p, out);
            }
        }
    }
    let mut out = Vec::new();
    if pattern.len() <= word.len() {
        go(word, pattern, 0, 0, &mut out);
    }
    out
}

/// Position masks of subwords of `word` that are reduced words for `pi`.
fn reduced_occurrences(word: &Word, pi: &Permutation) -> Vec<u64> {
    struct Search<'a> {
        letters: &'a [usize],
        pi: &'a Permutation,
        k: usize,
        out: Vec<u64>,
    }
    impl Search<'_> {
        // Depth-first over positions, pruning branches whose partial product is not reduced.
        fn go(&mut self, start: usize, current: Permutation, depth: usize, acc: u64) {
            if depth == self.k {
                if current == *self.pi {
                    self.out.push(acc);
                }
                return;
            }
            for p in start..self.letters.len() - (self.k - depth - 1) {
                let i = self.letters[p];
                if current.has_right_ascent(i) {
                    self.go(p + 1, current.times_simple(i), depth + 1, acc | 1 << p);
                }
            }
        }
    }
    let mut search = Search {
        letters: word.letters(),
        pi,
        k: pi.length(),
        out: Vec::new(),
    };
    if search.k <= search.letters.len() {
        search.go(0, Permutation::identity(pi.rank()), 0, 0);
    }
    search.out
}

impl Complex {
    /// Builds `Delta(q, pi)` or `Delta~(q, S)` depending on the target. A
    /// target that never occurs yields the complex with no facets.
    pub fn build(q: &Word, target: Target) -> Result<Complex, ComplexError> {
        if q.rank() != target.rank() {
            return Err(ComplexError::RankMismatch(q.rank(), target.rank()));
        }
        let m = q.len();
        if m > MAX_WORD_LEN {
            return Err(ComplexError::WordTooLong(m));
        }
        let mut warnings = Vec::new();
        let (used, facet_size) = match &target {
            Target::Permutation(pi) => (reduced_occurrences(q, pi), m.saturating_sub(pi.length())),
            Target::Word(s) => {
                if !s.is_tilde_reduced() {
                    warnings.push(format!(
                        "slide target {s} has equal consecutive letters; ball/sphere classification does not apply"
                    ));
                }
                (occurrences(q.letters(), s.letters()), m.saturating_sub(s.len()))
            }
        };
        let full = full_mask(m);
        let mut facets: Vec<Face> = used.into_iter().map(|p| Face(full & !p)).collect();
        facets.sort();
        facets.dedup();
        Ok(Complex {
            word: q.clone(),
            target,
            facets,
            facet_size,
            warnings,
        })
    }

    pub fn subword(q: &Word, pi: &Permutation) -> Result<Complex, ComplexError> {
        Self::build(q, Target::Permutation(pi.clone()))
    }

    pub fn slide(q: &Word, s: &Word) -> Result<Complex, ComplexError> {
        Self::build(q, Target::Word(s.clone()))
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    pub fn kind(&self) -> ComplexKind {
        match self.target {
            Target::Permutation(_) => ComplexKind::Subword,
            Target::Word(_) => ComplexKind::Slide,
        }
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn facet_size(&self) -> usize {
        self.facet_size
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn dimension(&self) -> isize {
        self.facet_size as isize - 1
    }

    /// Mask of all positions of `Q`.
    pub fn ground_mask(&self) -> u64 {
        full_mask(self.word.len())
    }

    /// The complement `P` of a face, as a position mask.
    pub fn complement(&self, face: &Face) -> u64 {
        self.ground_mask() & !face.0
    }

    /// `facet size - |F|`.
    pub fn codim(&self, face: &Face) -> usize {
        self.facet_size - face.len()
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        self.facets.iter().any(|f| face.is_subset_of(f))
    }

    /// Interior criterion on the complement: `delta(P) = pi` or `tilde_delta(P) = S`.
    pub fn is_interior(&self, face: &Face) -> bool {
        let p = self.word.restrict(self.complement(face));
        match &self.target {
            Target::Permutation(pi) => p.demazure_product() == *pi,
            Target::Word(s) => p.tilde_delta() == *s,
        }
    }

    /// Downward closure of the facets (including the empty face), or the
    /// interior/boundary part of it, sorted.
    pub fn faces(&self, which: FaceQuery) -> Vec<Face> {
        let mut seen: HashSet<u64> = HashSet::new();
        for f in &self.facets {
            // every submask of the facet
            let mut sub = f.0;
            loop {
                seen.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f.0;
            }
        }
        let mut out: Vec<Face> = seen
            .into_iter()
            .map(Face)
            .filter(|face| match which {
                FaceQuery::All => true,
                FaceQuery::Interior => self.is_interior(face),
                FaceQuery::Boundary => !self.is_interior(face),
            })
            .collect();
        out.sort();
        out
    }

    /// Alternating count over nonempty faces; 0 for the complex with no facets.
    pub fn euler_characteristic(&self) -> i64 {
        if self.facets.is_empty() {
            return 0;
        }
        self.faces(FaceQuery::All)
            .iter()
            .filter(|f| !f.is_empty())
            .map(|f| if f.len() % 2 == 1 { 1 } else { -1 })
            .sum()
    }

    /// Ball or sphere by the Demazure (resp. tilde-delta) criterion on the whole word.
    pub fn classify(&self) -> Result<Topology, ComplexError> {
        if self.facets.is_empty() {
            return Err(ComplexError::EmptyComplex);
        }
        let sphere = match &self.target {
            Target::Permutation(pi) => self.word.demazure_product() == *pi,
            Target::Word(s) => {
                if !s.is_tilde_reduced() {
                    return Err(ComplexError::UnclassifiableSlideTarget(s.to_string()));
                }
                self.word.tilde_delta() == *s
            }
        };
        Ok(if sphere { Topology::Sphere } else { Topology::Ball })
    }

    /// Euler characteristic a ball (1) or a sphere of this dimension (`1 + (-1)^d`) must have.
    pub fn expected_euler(&self, topology: Topology) -> i64 {
        match topology {
            Topology::Ball => 1,
            Topology::Sphere => {
                if self.dimension().rem_euclid(2) == 0 {
                    2
                } else {
                    0
                }
            }
        }
    }

    /// Compares the interior/boundary criterion with the combinatorial
    /// boundary: a ridge (codimension-1 face) is on the boundary iff it lies
    /// in exactly one facet, and every boundary face lies in a boundary ridge.
    pub fn pseudomanifold_report(&self) -> PseudomanifoldReport {
        let faces = self.faces(FaceQuery::All);
        let ridge_len = self.facet_size.checked_sub(1);
        let mut report = PseudomanifoldReport::default();
        let mut boundary_ridges = Vec::new();
        if let Some(ridge_len) = ridge_len {
            for r in faces.iter().filter(|f| f.len() == ridge_len) {
                let containing = self.facets.iter().filter(|f| r.is_subset_of(f)).count();
                report.ridges += 1;
                report.max_facets_per_ridge = report.max_facets_per_ridge.max(containing);
                let combinatorial_boundary = containing == 1;
                if combinatorial_boundary != !self.is_interior(r) {
                    report.ridge_mismatches.push(*r);
                }
                if combinatorial_boundary {
                    boundary_ridges.push(*r);
                }
            }
        }
        for f in faces.iter().filter(|f| !self.is_interior(f)) {
            report.boundary_faces += 1;
            if !boundary_ridges.iter().any(|r| f.is_subset_of(r)) {
                report.uncovered_boundary_faces.push(*f);
            }
        }
        report
    }

    pub fn summary(&self) -> ComplexSummary {
        let faces = self.faces(FaceQuery::All);
        let interior = faces.iter().filter(|f| self.is_interior(f)).count();
        let classification = match self.classify() {
            Ok(Topology::Ball) => "Ball".to_string(),
            Ok(Topology::Sphere) => "Sphere".to_string(),
            Err(ComplexError::UnclassifiableSlideTarget(_)) => "Unclassifiable".to_string(),
            Err(_) => "Empty".to_string(),
        };
        ComplexSummary {
            word: self.word.to_string(),
            kind: self.kind(),
            target: self.target.to_string(),
            dimension: self.dimension(),
            facets: self.facets.clone(),
            interior_count: interior,
            boundary_count: faces.len() - interior,
            euler: self.euler_characteristic(),
            classification,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PseudomanifoldReport {
    pub ridges: usize,
    pub max_facets_per_ridge: usize,
    pub boundary_faces: usize,
    pub ridge_mismatches: Vec<Face>,
    pub uncovered_boundary_faces: Vec<Face>,
}

impl PseudomanifoldReport {
    pub fn is_consistent(&self) -> bool {
        self.max_facets_per_ridge <= 2
            && self.ridge_mismatches.is_empty()
            && self.uncovered_boundary_faces.is_empty()
    }
}

/// JSON form of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexSummary {
    pub word: String,
    pub kind: ComplexKind,
    pub target: String,
    pub dimension: isize,
    pub facets: Vec<Face>,
    pub interior_count: usize,
    pub boundary_count: usize,
    pub euler: i64,
    pub classification: String,
}

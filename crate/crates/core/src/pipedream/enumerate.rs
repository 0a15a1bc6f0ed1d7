use std::collections::BTreeMap;

use serde::Serialize;

use super::{full_mask, PipeDream, PipeDreamError, PipeDreamSummary};
use crate::coxeter::{Permutation, Word};
use crate::polynomial::Polynomial;

fn sort_key(p: &PipeDream) -> (usize, Vec<usize>) {
    (p.cross_count(), p.positions().collect())
}

fn sorted(mut v: Vec<PipeDream>) -> Vec<PipeDream> {
    v.sort_by_cached_key(sort_key);
    v
}

/// `PD(w)` (all pipe dreams whose reduction has shape `w`) or, with
/// `reduced_only`, `PD_0(w)`. Brute force over subsets of staircase positions;
/// ordered by number of crosses, then by position list.
pub fn enumerate_pipe_dreams(w: &Permutation, reduced_only: bool) -> Vec<PipeDream> {
    let n = w.rank();
    let len = w.length();
    let mut out = Vec::new();
    for mask in 0..=full_mask(n) {
        let count = mask.count_ones() as usize;
        if reduced_only && count != len {
            continue;
        }
        let p = PipeDream { n, mask };
        if p.demazure_shape() == *w {
            out.push(p);
        }
    }
    sorted(out)
}

/// All pipe dreams of one rank grouped by shape, for sweeps over all of `S_n`.
#[derive(Debug, Clone)]
pub struct PipeDreamTable {
    n: usize,
    by_shape: BTreeMap<Permutation, Vec<PipeDream>>,
}

impl PipeDreamTable {
    pub fn new(n: usize) -> Self {
        let mut by_shape: BTreeMap<Permutation, Vec<PipeDream>> = BTreeMap::new();
        for mask in 0..=full_mask(n) {
            let p = PipeDream { n, mask };
            by_shape.entry(p.demazure_shape()).or_default().push(p);
        }
        for v in by_shape.values_mut() {
            v.sort_by_cached_key(sort_key);
        }
        PipeDreamTable { n, by_shape }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn pipe_dreams(&self, w: &Permutation, reduced_only: bool) -> Vec<PipeDream> {
        let all = self.by_shape.get(w).cloned().unwrap_or_default();
        if reduced_only {
            all.into_iter().filter(|p| p.cross_count() == w.length()).collect()
        } else {
            all
        }
    }

    pub fn total(&self) -> usize {
        self.by_shape.values().map(Vec::len).sum()
    }
}

/// A quasi-Yamanouchi pipe dream together with its word and excess.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiYamanouchiCertificate {
    pub pipe_dream: PipeDream,
    pub word: Word,
    pub reduced: bool,
    pub excess: usize,
}

impl QuasiYamanouchiCertificate {
    pub fn new(pipe_dream: PipeDream) -> Self {
        let excess = pipe_dream.excess();
        QuasiYamanouchiCertificate {
            pipe_dream,
            word: pipe_dream.word(),
            reduced: excess == 0,
            excess,
        }
    }
}

impl Serialize for QuasiYamanouchiCertificate {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            #[serde(flatten)]
            dream: PipeDreamSummary,
            tilde_reduced: bool,
            reduced: bool,
            word_letters: &'a [usize],
        }
        View {
            dream: self.pipe_dream.summary(),
            tilde_reduced: self.word.is_tilde_reduced(),
            reduced: self.reduced,
            word_letters: self.word.letters(),
        }
        .serialize(serializer)
    }
}

/// `QPD(w)` or `QPD_0(w)`.
pub fn enumerate_quasi_yamanouchi(w: &Permutation, reduced_only: bool) -> Vec<QuasiYamanouchiCertificate> {
    enumerate_pipe_dreams(w, reduced_only)
        .into_iter()
        .filter(PipeDream::is_quasi_yamanouchi)
        .map(QuasiYamanouchiCertificate::new)
        .collect()
}

/// A fibre of destandardization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlideOrbit {
    pub representative: PipeDream,
    pub members: Vec<PipeDream>,
}

fn orbits_of(dreams: Vec<PipeDream>) -> Vec<GlideOrbit> {
    let mut groups: BTreeMap<(usize, Vec<usize>), (PipeDream, Vec<PipeDream>)> = BTreeMap::new();
    for p in dreams {
        let q = p.destandardize();
        groups.entry(sort_key(&q)).or_insert_with(|| (q, Vec::new())).1.push(p);
    }
    groups
        .into_values()
        .map(|(representative, members)| GlideOrbit {
            representative,
            members: sorted(members),
        })
        .collect()
}

/// Glide orbits partitioning `PD(w)`.
pub fn glide_orbits(w: &Permutation) -> Vec<GlideOrbit> {
    orbits_of(enumerate_pipe_dreams(w, false))
}

/// Slide orbits partitioning `PD_0(w)`.
pub fn slide_orbits(w: &Permutation) -> Vec<GlideOrbit> {
    orbits_of(enumerate_pipe_dreams(w, true))
}

/// `sum x^P` over `PD_0(w)`.
pub fn schubert_from_pipedreams(w: &Permutation) -> Polynomial {
    let n_vars = w.rank() - 1;
    enumerate_pipe_dreams(w, true)
        .iter()
        .fold(Polynomial::zero(n_vars), |acc, p| &acc + &p.monomial())
}

/// `sum beta^ex(P) x^P` over `PD(w)`.
pub fn grothendieck_from_pipedreams(w: &Permutation) -> Polynomial {
    let n_vars = w.rank() - 1;
    enumerate_pipe_dreams(w, false)
        .iter()
        .fold(Polynomial::zero(n_vars), |acc, p| &acc + &p.weighted_monomial())
}

/// Slide polynomial of a reduced quasi-Yamanouchi pipe dream: `sum x^P` over its slide orbit.
pub fn slide_polynomial(q: &PipeDream) -> Result<Polynomial, PipeDreamError> {
    if !q.is_quasi_yamanouchi() {
        return Err(PipeDreamError::NotQuasiYamanouchi);
    }
    let excess = q.excess();
    if excess > 0 {
        return Err(PipeDreamError::NotReduced(excess));
    }
    let n_vars = q.rank() - 1;
    Ok(enumerate_pipe_dreams(&q.shape(), true)
        .into_iter()
        .filter(|p| p.destandardize() == *q)
        .fold(Polynomial::zero(n_vars), |acc, p| &acc + &p.monomial()))
}

/// Glide polynomial: `sum beta^(ex(P) - ex(Q)) x^P` over the glide orbit of `q`.
pub fn glide_polynomial(q: &PipeDream) -> Result<Polynomial, PipeDreamError> {
    if !q.is_quasi_yamanouchi() {
        return Err(PipeDreamError::NotQuasiYamanouchi);
    }
    let n_vars = q.rank() - 1;
    let base = q.excess();
    let mut total = Polynomial::zero(n_vars);
    for p in enumerate_pipe_dreams(&q.shape(), false) {
        if p.destandardize() != *q {
            continue;
        }
        let mut exps = vec![0u32; n_vars];
        for (i, _) in p.crosses() {
            exps[i - 1] += 1;
        }
        let shift = p.excess() - base;
        total = &total + &Polynomial::monomial(n_vars, 1, shift as u32, &exps);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::{grothendieck_oracle, schubert_oracle};

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn pd(n: usize, cells: &[(usize, usize)]) -> PipeDream {
        PipeDream::from_crosses(n, cells).unwrap()
    }

    #[test]
    fn counts_for_1432() {
        let w = perm("1432");
        let reduced = enumerate_pipe_dreams(&w, true);
        assert_eq!(reduced.len(), 5);
        let mut monos: Vec<String> = reduced.iter().map(|p| p.monomial().to_text()).collect();
        monos.sort();
        assert_eq!(monos, vec!["x1*x2*x3", "x1*x2^2", "x1^2*x2", "x1^2*x3", "x2^2*x3"]);
        assert_eq!(enumerate_pipe_dreams(&w, false).len(), 11);
        assert_eq!(enumerate_quasi_yamanouchi(&w, false).len(), 5);
        let qy0 = enumerate_quasi_yamanouchi(&w, true);
        let mut words: Vec<String> = qy0.iter().map(|c| c.word.to_string()).collect();
        words.sort();
        assert_eq!(words, vec!["2,3,2", "3,2,3"]);
    }

    #[test]
    fn identity_and_longest() {
        for reduced in [true, false] {
            let id = enumerate_pipe_dreams(&Permutation::identity(4), reduced);
            assert_eq!(id, vec![PipeDream::empty(4).unwrap()]);
        }
        let top = enumerate_quasi_yamanouchi(&Permutation::longest(4), false);
        assert_eq!(top.len(), 1);
        assert_eq!(top[0].pipe_dream, PipeDream::full(4).unwrap());
    }

    #[test]
    fn polynomials_for_1432() {
        let w = perm("1432");
        assert_eq!(
            schubert_from_pipedreams(&w).to_text(),
            "x1^2*x2 + x1^2*x3 + x1*x2^2 + x1*x2*x3 + x2^2*x3"
        );
        assert_eq!(
            grothendieck_from_pipedreams(&w).to_text(),
            "x1^2*x2 + x1^2*x3 + x1*x2^2 + x1*x2*x3 + x2^2*x3 + b*x1^2*x2^2 + 2*b*x1^2*x2*x3 + 2*b*x1*x2^2*x3 + b^2*x1^2*x2^2*x3"
        );
        assert_eq!(schubert_from_pipedreams(&Permutation::identity(3)), Polynomial::one(2));
    }

    #[test]
    fn glide_orbits_for_1432() {
        let orbits = glide_orbits(&perm("1432"));
        let mut sizes: Vec<usize> = orbits.iter().map(|o| o.members.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 1, 1, 7]);
        let big = orbits.iter().find(|o| o.members.len() == 7).unwrap();
        assert_eq!(big.representative, pd(4, &[(2, 1), (2, 2), (3, 1)]));
    }

    #[test]
    fn glide_polynomials_for_1432() {
        let big = pd(4, &[(2, 1), (2, 2), (3, 1)]);
        assert_eq!(
            glide_polynomial(&big).unwrap().to_text(),
            "x1^2*x2 + x1^2*x3 + x1*x2*x3 + x2^2*x3 + 2*b*x1^2*x2*x3 + b*x1*x2^2*x3"
        );
        let by_word = |letters: &[usize]| {
            let s = Word::new(4, letters.to_vec()).unwrap();
            super::super::quasi_yamanouchi_for_word(&s).unwrap()
        };
        assert_eq!(glide_polynomial(&by_word(&[2, 3, 2])).unwrap().to_text(), "x1*x2^2");
        assert_eq!(glide_polynomial(&by_word(&[2, 3, 2, 3])).unwrap().to_text(), "x1*x2^2*x3");
        assert_eq!(glide_polynomial(&by_word(&[3, 2, 3, 2])).unwrap().to_text(), "x1^2*x2^2");
        assert_eq!(glide_polynomial(&by_word(&[3, 2, 3, 2, 3])).unwrap().to_text(), "x1^2*x2^2*x3");
    }

    #[test]
    fn slide_polynomials_for_1432() {
        let big = pd(4, &[(2, 1), (2, 2), (3, 1)]);
        assert_eq!(
            slide_polynomial(&big).unwrap().to_text(),
            "x1^2*x2 + x1^2*x3 + x1*x2*x3 + x2^2*x3"
        );
        let small = pd(4, &[(1, 2), (2, 1), (2, 2)]);
        assert_eq!(slide_polynomial(&small).unwrap().to_text(), "x1*x2^2");
    }

    #[test]
    fn slide_polynomial_errors() {
        let not_qy = pd(4, &[(1, 2), (1, 3), (2, 2)]);
        assert_eq!(slide_polynomial(&not_qy), Err(PipeDreamError::NotQuasiYamanouchi));
        assert_eq!(glide_polynomial(&not_qy), Err(PipeDreamError::NotQuasiYamanouchi));
        let nonreduced_qy = enumerate_quasi_yamanouchi(&perm("1432"), false)
            .into_iter()
            .find(|c| !c.reduced)
            .unwrap();
        assert!(matches!(
            slide_polynomial(&nonreduced_qy.pipe_dream),
            Err(PipeDreamError::NotReduced(_))
        ));
    }

    #[test]
    fn pipe_dream_formulas_match_operators_up_to_rank_four() {
        for n in 1..=4 {
            for w in Permutation::all(n) {
                assert_eq!(schubert_from_pipedreams(&w), schubert_oracle(&w), "S_{w}");
                assert_eq!(grothendieck_from_pipedreams(&w), grothendieck_oracle(&w), "G_{w}");
            }
        }
    }

    #[test]
    fn table_agrees_with_direct_enumeration() {
        let t = PipeDreamTable::new(4);
        assert_eq!(t.total(), 1 << 6);
        for w in Permutation::all(4) {
            assert_eq!(t.pipe_dreams(&w, false), enumerate_pipe_dreams(&w, false));
            assert_eq!(t.pipe_dreams(&w, true), enumerate_pipe_dreams(&w, true));
        }
    }
}

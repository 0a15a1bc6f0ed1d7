use std::collections::BTreeMap;

use super::{Complex, ComplexError, Face, FaceQuery};
use crate::coxeter::{Permutation, Word};
use crate::pipedream::{staircase_word, PipeDream};
use crate::polynomial::Polynomial;

/// Splits the interior of `Delta(q, w)` by the tilde-delta of each face's
/// complement. Each part is the interior of the slide complex `Delta~(q, S)`.
pub fn interior_decomposition(q: &Word, w: &Permutation) -> Result<BTreeMap<Word, Vec<Face>>, ComplexError> {
    let complex = Complex::subword(q, w)?;
    let mut parts: BTreeMap<Word, Vec<Face>> = BTreeMap::new();
    for face in complex.faces(FaceQuery::Interior) {
        let key = q.restrict(complex.complement(&face)).tilde_delta();
        parts.entry(key).or_default().push(face);
    }
    Ok(parts)
}

fn staircase_rank(q: &Word) -> Result<usize, ComplexError> {
    let n = q.rank();
    if *q == staircase_word(n) {
        Ok(n)
    } else {
        Err(ComplexError::NotStaircase(q.to_string()))
    }
}

/// The pipe dream whose crosses are the complement of `face` in the staircase word.
pub fn face_pipe_dream(complex: &Complex, face: &Face) -> Result<PipeDream, ComplexError> {
    let n = staircase_rank(complex.word())?;
    PipeDream::from_mask(n, complex.complement(face))
        .map_err(|_| ComplexError::NotStaircase(complex.word().to_string()))
}

/// `sum beta^codim(F) x^P` over interior faces of a complex on the staircase
/// word: the Grothendieck polynomial for `Delta(Q, w)`, the glide polynomial
/// for `Delta~(Q, S)`.
pub fn interior_polynomial(complex: &Complex) -> Result<Polynomial, ComplexError> {
    let n = staircase_rank(complex.word())?;
    let mut total = Polynomial::zero(n - 1);
    for face in complex.faces(FaceQuery::Interior) {
        let dream = face_pipe_dream(complex, &face)?;
        let mut exps = vec![0u32; n - 1];
        for (i, _) in dream.crosses() {
            exps[i - 1] += 1;
        }
        total = &total + &Polynomial::monomial(n - 1, 1, complex.codim(&face) as u32, &exps);
    }
    Ok(total)
}

/// `sum x^P` over facets of a complex on the staircase word: the Schubert
/// polynomial for `Delta(Q, w)`, the slide polynomial for `Delta~(Q, S)`.
pub fn facet_polynomial(complex: &Complex) -> Result<Polynomial, ComplexError> {
    let n = staircase_rank(complex.word())?;
    let mut total = Polynomial::zero(n - 1);
    for face in complex.facets() {
        total = &total + &face_pipe_dream(complex, face)?.monomial();
    }
    Ok(total)
}

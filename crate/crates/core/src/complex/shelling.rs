use std::collections::HashSet;

use super::{Complex, Face};

/// Shelling order from the vertex decomposition at the first position of `Q`:
/// a shelling of the deletion (facets avoiding the vertex) followed by the
/// cone over a shelling of the link, recursively on the remaining positions.
pub fn vertex_decomposition_shelling(complex: &Complex) -> Vec<Face> {
    let masks: Vec<u64> = complex.facets().iter().map(Face::mask).collect();
    let mut out = Vec::with_capacity(masks.len());
    shell(masks, 0, complex.word().len(), &mut out);
    out.into_iter().map(Face::from_mask).collect()
}

fn shell(facets: Vec<u64>, pos: usize, m: usize, out: &mut Vec<u64>) {
    if facets.len() <= 1 || pos >= m {
        out.extend(facets);
        return;
    }
    let (link, deletion): (Vec<u64>, Vec<u64>) = facets.into_iter().partition(|f| f >> pos & 1 == 1);
    if link.is_empty() || deletion.is_empty() {
        let rest = if link.is_empty() { deletion } else { link };
        shell(rest, pos + 1, m, out);
    } else {
        shell(deletion, pos + 1, m, out);
        shell(link, pos + 1, m, out);
    }
}

/// Checks the shelling condition: the order lists every facet once and, for
/// each `j > 0`, the maximal intersections `F_i ∩ F_j` with `i < j` all have
/// size `|F_j| - 1`.
pub fn verify_shelling(complex: &Complex, order: &[Face]) -> bool {
    let expected: HashSet<u64> = complex.facets().iter().map(Face::mask).collect();
    let given: HashSet<u64> = order.iter().map(Face::mask).collect();
    if order.len() != expected.len() || given != expected {
        return false;
    }
    for j in 1..order.len() {
        let fj = order[j].mask();
        let need = fj.count_ones().checked_sub(1);
        let Some(need) = need else {
            return false;
        };
        let meets: Vec<u64> = order[..j].iter().map(|f| f.mask() & fj).collect();
        for &a in &meets {
            let maximal = !meets.iter().any(|&b| b != a && a & !b == 0);
            if maximal && a.count_ones() != need {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{Permutation, Word};
    use crate::pipedream::staircase_word;

    fn word(n: usize, letters: &[usize]) -> Word {
        Word::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn pentagon_shelling() {
        let c = Complex::subword(&word(4, &[3, 2, 1, 3, 2, 3]), &"1432".parse().unwrap()).unwrap();
        let order = vertex_decomposition_shelling(&c);
        assert_eq!(order.len(), 5);
        assert!(verify_shelling(&c, &order));
    }

    #[test]
    fn disjoint_edges_fail() {
        // Facets {1,3} and {2,4} of Delta~((1,1,2,2), (1,2)) share nothing;
        // the other two facets are needed to glue them.
        let c = Complex::slide(&word(3, &[1, 1, 2, 2]), &word(3, &[1, 2])).unwrap();
        let a = Face::from_positions(&[1, 3]);
        let b = Face::from_positions(&[2, 4]);
        assert!(c.facets().contains(&a) && c.facets().contains(&b));
        let rest: Vec<Face> = c.facets().iter().copied().filter(|f| *f != a && *f != b).collect();
        let mut bad = vec![a, b];
        bad.extend(rest);
        assert!(!verify_shelling(&c, &bad));
        assert!(verify_shelling(&c, &vertex_decomposition_shelling(&c)));
    }

    #[test]
    fn order_must_list_every_facet() {
        let c = Complex::slide(&word(2, &[1, 1]), &word(2, &[1])).unwrap();
        assert!(verify_shelling(&c, c.facets()));
        assert!(!verify_shelling(&c, &c.facets()[..1]));
        let twice = vec![c.facets()[0], c.facets()[0]];
        assert!(!verify_shelling(&c, &twice));
    }

    #[test]
    fn split_at_first_position_matches_smaller_complexes() {
        // For Delta~(Q, S) with Q = (sigma, Q'): facets containing position 1
        // are the cone over Delta~(Q', S); facets avoiding it are Delta~(Q', S')
        // when S starts with sigma, and there are none otherwise.
        let q = staircase_word(4);
        let tail = q.tail();
        for s in [word(4, &[3, 2, 3]), word(4, &[2, 1]), word(4, &[3, 1, 2]), word(4, &[1])] {
            let c = Complex::slide(&q, &s).unwrap();
            let link: Vec<u64> = c.facets().iter().filter(|f| f.mask() & 1 == 1).map(|f| f.mask() >> 1).collect();
            let deletion: Vec<u64> = c.facets().iter().filter(|f| f.mask() & 1 == 0).map(|f| f.mask() >> 1).collect();
            let mut link_expected: Vec<u64> =
                Complex::slide(&tail, &s).unwrap().facets().iter().map(Face::mask).collect();
            let mut link_sorted = link.clone();
            link_sorted.sort();
            link_expected.sort();
            assert_eq!(link_sorted, link_expected, "link for {s}");
            let mut deletion_expected: Vec<u64> = if s.letters().first() == q.letters().first() {
                let s_tail = s.tail();
                Complex::slide(&tail, &s_tail).unwrap().facets().iter().map(Face::mask).collect()
            } else {
                Vec::new()
            };
            let mut deletion_sorted = deletion;
            deletion_sorted.sort();
            deletion_expected.sort();
            assert_eq!(deletion_sorted, deletion_expected, "deletion for {s}");
        }
    }

    #[test]
    fn every_small_complex_is_shellable() {
        for n in 2..=4 {
            let q = staircase_word(n);
            for w in Permutation::all(n) {
                let c = Complex::subword(&q, &w).unwrap();
                assert!(verify_shelling(&c, &vertex_decomposition_shelling(&c)), "{w}");
            }
        }
    }
}

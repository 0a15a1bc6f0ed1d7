//! Exhaustive consistency checks over all of `S_n` for small `n`.
//!
//! Each suite runs a fixed list of named checks per permutation. Permutations
//! are processed in parallel and the results are merged in lexicographic
//! order, so a report is identical from run to run.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::complex::{
    facet_polynomial, interior_decomposition, interior_polynomial, verify_shelling,
    vertex_decomposition_shelling, Complex, Face, FaceQuery, Topology,
};
use crate::coxeter::{Permutation, Word};
use crate::pipedream::{staircase_word, PipeDream, PipeDreamTable};
use crate::polynomial::{grothendieck_oracle, schubert_oracle, Polynomial};

pub const MIN_RANK: usize = 2;
pub const MAX_RANK: usize = 6;
const MAX_REPORTED_FAILURES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Polynomials,
    Topology,
    Flips,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("max rank {0} is outside {MIN_RANK}..={MAX_RANK}")]
    RankOutOfRange(usize),
}

/// Outcome of one named check at one rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub suite: Suite,
    pub name: &'static str,
    pub rank: Option<usize>,
    pub cases: usize,
    pub passed: bool,
    pub failures: Vec<String>,
    pub failure_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_rank: usize,
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

impl VerifyReport {
    pub fn check(&self, name: &str, rank: Option<usize>) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name && c.rank == rank)
    }
}

#[derive(Debug, Default)]
struct Outcome {
    cases: usize,
    failures: Vec<String>,
}

impl Outcome {
    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }
}

type Outcomes = Vec<(&'static str, Outcome)>;

/// Runs `suite` for every rank `2..=max_rank`.
pub fn run(max_rank: usize, suite: Suite) -> Result<VerifyReport, VerifyError> {
    if !(MIN_RANK..=MAX_RANK).contains(&max_rank) {
        return Err(VerifyError::RankOutOfRange(max_rank));
    }
    let mut checks = Vec::new();
    for n in MIN_RANK..=max_rank {
        checks.extend(run_rank(n, suite));
    }
    if suite.includes(Suite::Topology) {
        checks.push(report(Suite::Topology, "explicit_examples", None, vec![explicit_examples()]));
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        max_rank,
        suite,
        passed,
        checks,
    })
}

/// The checks of `suite` at the single rank `n`.
pub fn run_rank(n: usize, suite: Suite) -> Vec<CheckReport> {
    let perms = Permutation::all(n);
    let mut out = Vec::new();
    if suite.includes(Suite::Polynomials) {
        let table = PipeDreamTable::new(n);
        let per_w: Vec<Outcomes> = perms.par_iter().map(|w| polynomial_checks(&table, w)).collect();
        out.extend(merge(Suite::Polynomials, n, per_w));
    }
    if suite.includes(Suite::Topology) {
        let per_w: Vec<Outcomes> = perms.par_iter().map(topology_checks).collect();
        out.extend(merge(Suite::Topology, n, per_w));
    }
    if suite.includes(Suite::Flips) {
        let per_w: Vec<Outcomes> = perms.par_iter().map(flip_checks).collect();
        out.extend(merge(Suite::Flips, n, per_w));
    }
    out
}

fn merge(suite: Suite, n: usize, per_w: Vec<Outcomes>) -> Vec<CheckReport> {
    let mut names: Vec<&'static str> = Vec::new();
    let mut grouped: BTreeMap<&'static str, Vec<Outcome>> = BTreeMap::new();
    for outcomes in per_w {
        for (name, outcome) in outcomes {
            if !names.contains(&name) {
                names.push(name);
            }
            grouped.entry(name).or_default().push(outcome);
        }
    }
    names
        .into_iter()
        .map(|name| report(suite, name, Some(n), grouped.remove(name).unwrap_or_default()))
        .collect()
}

fn report(suite: Suite, name: &'static str, rank: Option<usize>, outcomes: Vec<Outcome>) -> CheckReport {
    let cases = outcomes.iter().map(|o| o.cases).sum();
    let all: Vec<String> = outcomes.into_iter().flat_map(|o| o.failures).collect();
    CheckReport {
        suite,
        name,
        rank,
        cases,
        passed: all.is_empty(),
        failure_count: all.len(),
        failures: all.into_iter().take(MAX_REPORTED_FAILURES).collect(),
    }
}

/// Groups `dreams` by their destandardization.
fn orbits(dreams: &[PipeDream]) -> BTreeMap<PipeDream, Vec<PipeDream>> {
    let mut out: BTreeMap<PipeDream, Vec<PipeDream>> = BTreeMap::new();
    for p in dreams {
        out.entry(p.destandardize()).or_default().push(*p);
    }
    out
}

fn orbit_glide(q: &PipeDream, members: &[PipeDream]) -> Polynomial {
    let n_vars = q.rank() - 1;
    members.iter().fold(Polynomial::zero(n_vars), |acc, p| {
        let mut exps = vec![0u32; n_vars];
        for (i, _) in p.crosses() {
            exps[i - 1] += 1;
        }
        &acc + &Polynomial::monomial(n_vars, 1, (p.excess() - q.excess()) as u32, &exps)
    })
}

fn beta_power(n_vars: usize, k: usize) -> Polynomial {
    Polynomial::monomial(n_vars, 1, k as u32, &vec![0; n_vars])
}

fn alternating(dreams: impl Iterator<Item = PipeDream>) -> i64 {
    dreams.map(|p| if p.excess() % 2 == 0 { 1 } else { -1 }).sum()
}

fn polynomial_checks(table: &PipeDreamTable, w: &Permutation) -> Outcomes {
    let n = w.rank();
    let n_vars = n - 1;
    let all = table.pipe_dreams(w, false);
    let reduced: Vec<PipeDream> = all.iter().copied().filter(PipeDream::is_reduced).collect();
    let schubert = reduced.iter().fold(Polynomial::zero(n_vars), |acc, p| &acc + &p.monomial());
    let grothendieck = all.iter().fold(Polynomial::zero(n_vars), |acc, p| &acc + &p.weighted_monomial());

    let mut schubert_check = Outcome::default();
    let oracle = schubert_oracle(w);
    schubert_check.record(schubert == oracle, || format!("{w}: pipe dreams give {schubert}, operators give {oracle}"));

    let mut grothendieck_check = Outcome::default();
    let oracle = grothendieck_oracle(w);
    grothendieck_check.record(grothendieck == oracle, || {
        format!("{w}: pipe dreams give {grothendieck}, operators give {oracle}")
    });

    let mut slide_check = Outcome::default();
    let slide_sum = orbits(&reduced)
        .values()
        .fold(Polynomial::zero(n_vars), |acc, members| {
            members.iter().fold(acc, |acc, p| &acc + &p.monomial())
        });
    let all_qy_reduced = orbits(&reduced).keys().all(|q| q.is_reduced() && q.is_quasi_yamanouchi());
    slide_check.record(slide_sum == schubert && all_qy_reduced, || format!("{w}: slide expansion sums to {slide_sum}"));

    let mut glide_check = Outcome::default();
    let glide_sum = orbits(&all).iter().fold(Polynomial::zero(n_vars), |acc, (q, members)| {
        &acc + &(&beta_power(n_vars, q.excess()) * &orbit_glide(q, members))
    });
    glide_check.record(glide_sum == grothendieck, || format!("{w}: glide expansion sums to {glide_sum}"));

    let mut alternating_check = Outcome::default();
    let pd = alternating(all.iter().copied());
    let qpd = alternating(all.iter().copied().filter(PipeDream::is_quasi_yamanouchi));
    alternating_check.record(pd == 1 && qpd == 1, || format!("{w}: alternating sums PD {pd}, QPD {qpd}"));

    vec![
        ("schubert_pipedreams_vs_operators", schubert_check),
        ("grothendieck_pipedreams_vs_operators", grothendieck_check),
        ("slide_expansion", slide_check),
        ("glide_expansion", glide_check),
        ("alternating_sums", alternating_check),
    ]
}

/// The subword complex `Delta(Q_0n, w)` followed by every slide complex of its decomposition.
fn corpus(w: &Permutation) -> Vec<Complex> {
    let q = staircase_word(w.rank());
    let mut out = vec![Complex::subword(&q, w).expect("ranks agree")];
    let parts = interior_decomposition(&q, w).expect("ranks agree");
    for s in parts.keys() {
        out.push(Complex::slide(&q, s).expect("ranks agree"));
    }
    out
}

fn euler_agrees(c: &Complex) -> Result<(), String> {
    let topology = c.classify().map_err(|e| e.to_string())?;
    let chi = c.euler_characteristic();
    let expected = c.expected_euler(topology);
    if chi == expected {
        Ok(())
    } else {
        Err(format!("{topology:?} of dimension {} has chi {chi}, expected {expected}", c.dimension()))
    }
}

fn describe(c: &Complex) -> String {
    format!("Delta({}; {})", c.word(), c.target())
}

fn topology_checks(w: &Permutation) -> Outcomes {
    let q = staircase_word(w.rank());
    let complexes = corpus(w);
    let mut euler = Outcome::default();
    let mut boundary = Outcome::default();
    let mut shelling = Outcome::default();
    let mut sums = Outcome::default();
    for c in &complexes {
        let verdict = euler_agrees(c);
        euler.record(verdict.is_ok(), || format!("{w}: {}: {}", describe(c), verdict.unwrap_err()));
        let pm = c.pseudomanifold_report();
        boundary.record(pm.is_consistent(), || format!("{w}: {}: {pm:?}", describe(c)));
        let order = vertex_decomposition_shelling(c);
        shelling.record(verify_shelling(c, &order), || format!("{w}: {} rejects its shelling", describe(c)));
    }

    let mut decomposition = Outcome::default();
    let subword = &complexes[0];
    let interior = subword.faces(FaceQuery::Interior);
    let parts = interior_decomposition(&q, w).expect("ranks agree");
    let mut union: Vec<Face> = parts.values().flatten().copied().collect();
    let total: usize = union.len();
    union.sort();
    union.dedup();
    decomposition.record(union == interior && total == interior.len(), || {
        format!("{w}: parts do not partition the {} interior faces", interior.len())
    });
    let table_dreams = crate::pipedream::enumerate_pipe_dreams(w, false);
    let qy: BTreeMap<Word, (PipeDream, Vec<PipeDream>)> = orbits(&table_dreams)
        .into_iter()
        .map(|(rep, members)| (rep.word(), (rep, members)))
        .collect();
    let keys: BTreeSet<&Word> = parts.keys().collect();
    let qy_words: BTreeSet<&Word> = qy.keys().collect();
    decomposition.record(keys == qy_words && qy.len() == orbits(&table_dreams).len(), || {
        format!("{w}: keys {keys:?} differ from quasi-Yamanouchi words {qy_words:?}")
    });
    for (s, faces) in &parts {
        let slide = Complex::slide(&q, s).expect("ranks agree");
        decomposition.record(slide.faces(FaceQuery::Interior) == *faces, || {
            format!("{w}: part {s} differs from the interior of its slide complex")
        });
        let Some((rep, members)) = qy.get(s) else { continue };
        let from_faces = interior_polynomial(&slide).expect("staircase word");
        let expected = orbit_glide(rep, members);
        sums.record(from_faces == expected, || format!("{w}: part {s} sums to {from_faces}, glide is {expected}"));
    }
    let schubert = facet_polynomial(subword).expect("staircase word");
    let grothendieck = interior_polynomial(subword).expect("staircase word");
    sums.record(schubert == schubert_oracle(w), || format!("{w}: facet sum {schubert}"));
    sums.record(grothendieck == grothendieck_oracle(w), || format!("{w}: interior sum {grothendieck}"));

    vec![
        ("euler_matches_classification", euler),
        ("pseudomanifold_boundary", boundary),
        ("vertex_decomposition_shelling", shelling),
        ("interior_decomposition", decomposition),
        ("complex_face_sums", sums),
    ]
}

fn flip_checks(w: &Permutation) -> Outcomes {
    let n = w.rank();
    let q = staircase_word(n);
    let mut correspondence = Outcome::default();
    let mut greedy = Outcome::default();
    let reduced_qy: BTreeSet<PipeDream> = crate::pipedream::enumerate_pipe_dreams(w, true)
        .into_iter()
        .filter(PipeDream::is_quasi_yamanouchi)
        .collect();
    for qy in reduced_qy {
        let s = qy.word();
        let c = Complex::slide(&q, &s).expect("ranks agree");
        let full = c.ground_mask();
        let graph = c.flip_graph();
        let flips: HashSet<(u64, u64)> = graph
            .decreasing_cover_flips()
            .iter()
            .map(|e| (graph.facets[e.from].mask(), graph.facets[e.to].mask()))
            .collect();
        let mut slides = HashSet::new();
        for f in c.facets() {
            let p = PipeDream::from_mask(n, full & !f.mask()).expect("staircase positions");
            for i in 1..n {
                let moved = p.slide_move(i);
                if moved != p {
                    slides.insert((f.mask(), full & !moved.mask()));
                }
            }
        }
        correspondence.record(flips == slides, || {
            format!("{w}: {s}: {} decreasing flips vs {} slide moves", flips.len(), slides.len())
        });
        let top = graph.positive_greedy();
        greedy.record(top.as_ref().is_ok_and(|f| full & !f.mask() == qy.mask()), || {
            format!("{w}: {s}: positive greedy facet {top:?} is not the quasi-Yamanouchi dream")
        });
    }
    vec![("flips_are_slide_moves", correspondence), ("positive_greedy_is_quasi_yamanouchi", greedy)]
}

/// The hand-checkable complexes: the pentagon, the two-point sphere and the
/// tetrahedron skeleton.
fn explicit_examples() -> Outcome {
    let mut out = Outcome::default();
    let word = |n: usize, l: &[usize]| Word::new(n, l.to_vec()).expect("valid letters");
    let pentagon = Complex::subword(&word(4, &[3, 2, 1, 3, 2, 3]), &Permutation::new(vec![1, 4, 3, 2]).expect("permutation"))
        .expect("ranks agree");
    out.record(
        pentagon.facets().len() == 5
            && pentagon.classify() == Ok(Topology::Ball)
            && euler_agrees(&pentagon).is_ok()
            && pentagon.pseudomanifold_report().is_consistent(),
        || "pentagon complex".to_string(),
    );
    let sphere = Complex::slide(&word(2, &[1, 1]), &word(2, &[1])).expect("ranks agree");
    out.record(
        sphere.classify() == Ok(Topology::Sphere)
            && sphere.euler_characteristic() == 2
            && sphere.pseudomanifold_report().is_consistent(),
        || "two-point sphere".to_string(),
    );
    let skeleton = Complex::slide(&word(2, &[1, 1, 1, 1]), &word(2, &[1, 1])).expect("ranks agree");
    out.record(
        skeleton.classify().is_err() && skeleton.euler_characteristic() == -2,
        || "tetrahedron skeleton".to_string(),
    );
    out
}

//! Acceptance criteria 1-8, one line per criterion. Runs without the libtest
//! harness so the verdicts are always printed; exits nonzero on any failure.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use slide_complexes::complex::{
    interior_decomposition, interior_polynomial, verify_shelling, vertex_decomposition_shelling,
    Complex, ComplexError, Face, FaceQuery, Topology,
};
use slide_complexes::pipedream::{
    enumerate_pipe_dreams, enumerate_quasi_yamanouchi, glide_orbits, glide_polynomial,
    grothendieck_from_pipedreams, quasi_yamanouchi_for_word, schubert_from_pipedreams,
    slide_orbits, slide_polynomial, staircase_word, PipeDream, PipeDreamTable,
};
use slide_complexes::polynomial::{grothendieck_oracle, schubert_oracle, Polynomial};
use slide_complexes::{Permutation, Word};

type Verdict = Result<String, String>;
type Criterion = (u8, &'static str, Duration, fn() -> Verdict);

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn word(n: usize, letters: &[usize]) -> Word {
    Word::new(n, letters.to_vec()).unwrap()
}

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn beta_power(n_vars: usize, k: usize) -> Polynomial {
    Polynomial::monomial(n_vars, 1, k as u32, &vec![0; n_vars])
}

fn criterion_1() -> Verdict {
    let w = perm("1432");
    let schubert = "x1^2*x2 + x1^2*x3 + x1*x2^2 + x1*x2*x3 + x2^2*x3";
    let grothendieck = "x1^2*x2 + x1^2*x3 + x1*x2^2 + x1*x2*x3 + x2^2*x3 + b*x1^2*x2^2 \
                        + 2*b*x1^2*x2*x3 + 2*b*x1*x2^2*x3 + b^2*x1^2*x2^2*x3";
    for (label, got) in [
        ("pipe dream Schubert", schubert_from_pipedreams(&w).to_text()),
        ("operator Schubert", schubert_oracle(&w).to_text()),
    ] {
        ensure(got == schubert, || format!("{label}: {got}"))?;
    }
    for (label, got) in [
        ("pipe dream Grothendieck", grothendieck_from_pipedreams(&w).to_text()),
        ("operator Grothendieck", grothendieck_oracle(&w).to_text()),
    ] {
        ensure(got == grothendieck, || format!("{label}: {got}"))?;
    }
    let glides = [
        (vec![3, 2, 3], "x1^2*x2 + x1^2*x3 + x1*x2*x3 + x2^2*x3 + 2*b*x1^2*x2*x3 + b*x1*x2^2*x3"),
        (vec![2, 3, 2, 3], "x1*x2^2*x3"),
        (vec![3, 2, 3, 2], "x1^2*x2^2"),
        (vec![3, 2, 3, 2, 3], "x1^2*x2^2*x3"),
        (vec![2, 3, 2], "x1*x2^2"),
    ];
    for (letters, expected) in &glides {
        let q = quasi_yamanouchi_for_word(&word(4, letters)).map_err(|e| e.to_string())?;
        let got = glide_polynomial(&q).map_err(|e| e.to_string())?;
        ensure(got.to_text() == *expected, || format!("glide {letters:?}: {got}"))?;
    }
    let pd0 = enumerate_pipe_dreams(&w, true).len();
    let pd = enumerate_pipe_dreams(&w, false).len();
    let qpd = enumerate_quasi_yamanouchi(&w, false).len();
    let mut sizes: Vec<usize> = glide_orbits(&w).iter().map(|o| o.members.len()).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    ensure(pd0 == 5 && pd == 11 && qpd == 5 && sizes == [7, 1, 1, 1, 1], || {
        format!("|PD0|={pd0} |PD|={pd} |QPD|={qpd} orbits={sizes:?}")
    })?;
    Ok("S_1432, G_1432, five glide polynomials, counts 5/11/5, orbits {7,1,1,1,1}".into())
}

/// Criterion 2 over `S_1..S_max`.
fn oracle_equivalence(min: usize, max: usize) -> Verdict {
    let mut checked = 0;
    for n in min..=max {
        let table = PipeDreamTable::new(n);
        for w in Permutation::all(n) {
            let n_vars = n.saturating_sub(1);
            let all = table.pipe_dreams(&w, false);
            let schubert = all
                .iter()
                .filter(|p| p.is_reduced())
                .fold(Polynomial::zero(n_vars), |acc, p| &acc + &p.monomial());
            let grothendieck = all.iter().fold(Polynomial::zero(n_vars), |acc, p| &acc + &p.weighted_monomial());
            ensure(schubert == schubert_oracle(&w), || format!("Schubert {w}: {schubert}"))?;
            ensure(grothendieck == grothendieck_oracle(&w), || format!("Grothendieck {w}: {grothendieck}"))?;
            if n <= 5 {
                ensure(schubert == schubert_from_pipedreams(&w), || format!("table vs enumeration at {w}"))?;
            }

            let mut slide_sum = Polynomial::zero(n_vars);
            let mut glide_sum = Polynomial::zero(n_vars);
            let mut by_rep: BTreeMap<PipeDream, Vec<PipeDream>> = BTreeMap::new();
            for p in &all {
                by_rep.entry(p.destandardize()).or_default().push(*p);
            }
            for (q, members) in &by_rep {
                let mut glide = Polynomial::zero(n_vars);
                let mut slide = Polynomial::zero(n_vars);
                for p in members {
                    let mut exps = vec![0u32; n_vars];
                    for (i, _) in p.crosses() {
                        exps[i - 1] += 1;
                    }
                    glide = &glide + &Polynomial::monomial(n_vars, 1, (p.excess() - q.excess()) as u32, &exps);
                    if p.is_reduced() {
                        slide = &slide + &p.monomial();
                    }
                }
                if n <= 5 {
                    ensure(glide == glide_polynomial(q).unwrap(), || format!("glide of {q}"))?;
                    if q.is_reduced() {
                        ensure(slide == slide_polynomial(q).unwrap(), || format!("slide of {q}"))?;
                    }
                }
                if q.is_reduced() {
                    slide_sum = &slide_sum + &slide;
                }
                glide_sum = &glide_sum + &(&beta_power(n_vars, q.excess()) * &glide);
            }
            ensure(slide_sum == schubert, || format!("sum of slide polynomials for {w}: {slide_sum}"))?;
            ensure(glide_sum == grothendieck, || format!("sum of glide polynomials for {w}: {glide_sum}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} permutations (n = {min}..{max}): pipe dreams = operators, slide/glide sums"))
}

/// Criterion 3 over `S_1..S_max`.
fn alternating_sums(min: usize, max: usize) -> Verdict {
    let mut checked = 0;
    for n in min..=max {
        let table = PipeDreamTable::new(n);
        for w in Permutation::all(n) {
            let all = table.pipe_dreams(&w, false);
            let sign = |p: &PipeDream| if p.excess().is_multiple_of(2) { 1i64 } else { -1 };
            let pd: i64 = all.iter().map(sign).sum();
            let qpd: i64 = all.iter().filter(|p| p.is_quasi_yamanouchi()).map(sign).sum();
            ensure(pd == 1 && qpd == 1, || format!("{w}: PD {pd}, QPD {qpd}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} permutations (n = {min}..{max}): sum (-1)^k |PD_k| = sum (-1)^k |QPD_k| = 1"))
}

/// `Delta(Q_0n, w)` and every slide complex of its decomposition, for all `w` in `S_2..S_4`.
fn corpus() -> Vec<Complex> {
    let mut out = Vec::new();
    for n in 2..=4 {
        let q = staircase_word(n);
        for w in Permutation::all(n) {
            out.push(Complex::subword(&q, &w).unwrap());
            for s in interior_decomposition(&q, &w).unwrap().keys() {
                out.push(Complex::slide(&q, s).unwrap());
            }
        }
    }
    out
}

fn topology_ok(c: &Complex) -> Result<(), String> {
    let name = format!("Delta({}; {})", c.word(), c.target());
    let t = c.classify().map_err(|e| format!("{name}: {e}"))?;
    let chi = c.euler_characteristic();
    ensure(chi == c.expected_euler(t), || format!("{name}: {t:?} of dim {} has chi {chi}", c.dimension()))?;
    let report = c.pseudomanifold_report();
    ensure(report.is_consistent(), || format!("{name}: boundary mismatch {report:?}"))
}

fn criterion_4() -> Verdict {
    let complexes = corpus();
    for c in &complexes {
        topology_ok(c)?;
    }
    let sphere = Complex::slide(&word(2, &[1, 1]), &word(2, &[1])).unwrap();
    topology_ok(&sphere)?;
    ensure(sphere.classify() == Ok(Topology::Sphere), || "two-point complex is not a sphere".into())?;
    let pentagon = Complex::subword(&word(4, &[3, 2, 1, 3, 2, 3]), &perm("1432")).unwrap();
    topology_ok(&pentagon)?;
    ensure(pentagon.classify() == Ok(Topology::Ball) && pentagon.euler_characteristic() == 1, || {
        "pentagon is not a ball with chi 1".into()
    })?;
    let skeleton = Complex::slide(&word(2, &[1, 1, 1, 1]), &word(2, &[1, 1])).unwrap();
    ensure(
        matches!(skeleton.classify(), Err(ComplexError::UnclassifiableSlideTarget(_)))
            && skeleton.euler_characteristic() == -2,
        || "tetrahedron skeleton".into(),
    )?;
    Ok(format!("{} complexes + 3 explicit examples: chi and boundary agree with classification", complexes.len()))
}

fn criterion_5() -> Verdict {
    let complexes = corpus();
    for c in &complexes {
        let order = vertex_decomposition_shelling(c);
        ensure(verify_shelling(c, &order), || format!("Delta({}; {}) has no valid shelling", c.word(), c.target()))?;
    }
    Ok(format!("{} complexes shelled by vertex decomposition", complexes.len()))
}

fn criterion_6() -> Verdict {
    let q = staircase_word(4);
    let mut parts_total = 0;
    for w in Permutation::all(4) {
        let interior = Complex::subword(&q, &w).unwrap().faces(FaceQuery::Interior);
        let parts = interior_decomposition(&q, &w).unwrap();
        let mut union: Vec<Face> = parts.values().flatten().copied().collect();
        let count = union.len();
        union.sort();
        union.dedup();
        ensure(union == interior && count == interior.len(), || format!("{w}: parts do not partition the interior"))?;

        let qy: BTreeMap<Word, PipeDream> = enumerate_quasi_yamanouchi(&w, false)
            .into_iter()
            .map(|c| (c.word, c.pipe_dream))
            .collect();
        ensure(qy.len() == glide_orbits(&w).len(), || format!("{w}: two QY dreams share a word"))?;
        let keys: BTreeSet<&Word> = parts.keys().collect();
        ensure(keys == qy.keys().collect(), || format!("{w}: keys differ from QY words"))?;
        for s in parts.keys() {
            let slide = Complex::slide(&q, s).unwrap();
            let sum = interior_polynomial(&slide).unwrap();
            let expected = glide_polynomial(&qy[s]).unwrap();
            ensure(sum == expected, || format!("{w}: part {s} sums to {sum}, glide is {expected}"))?;
        }
        parts_total += parts.len();
    }
    Ok(format!("24 permutations, {parts_total} parts: partition, keys = QY words, part sums = glide polynomials"))
}

fn criterion_7() -> Verdict {
    let q = staircase_word(4);
    let mut checked = 0;
    for w in Permutation::all(4) {
        for orbit in slide_orbits(&w) {
            let top = orbit.representative;
            let c = Complex::slide(&q, &top.word()).unwrap();
            let full = c.ground_mask();
            let graph = c.flip_graph();
            let members: HashSet<u64> = orbit.members.iter().map(PipeDream::mask).collect();
            let facets: HashSet<u64> = c.facets().iter().map(|f| full & !f.mask()).collect();
            ensure(members == facets, || format!("{w}: facets of {} are not its slide orbit", top.word()))?;

            let flips: HashSet<(u64, u64)> = graph
                .decreasing_cover_flips()
                .iter()
                .map(|e| (full & !graph.facets[e.from].mask(), full & !graph.facets[e.to].mask()))
                .collect();
            let mut slides = HashSet::new();
            for p in &orbit.members {
                for i in 1..4 {
                    let moved = p.slide_move(i);
                    if moved != *p {
                        slides.insert((p.mask(), moved.mask()));
                    }
                }
            }
            ensure(flips == slides, || format!("{w}: flips {flips:?} vs slides {slides:?}"))?;
            let greedy = graph.positive_greedy().map_err(|e| e.to_string())?;
            ensure(full & !greedy.mask() == top.mask(), || format!("{w}: positive greedy facet is not {top}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} reduced QY pipe dreams: decreasing cover flips = slide moves, positive greedy = QY"))
}

fn criterion_8() -> Verdict {
    let a = oracle_equivalence(6, 6)?;
    let b = alternating_sums(6, 6)?;
    Ok(format!("{a}; {b}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "reference values", Duration::from_secs(1), criterion_1),
        (2, "oracle equivalence", Duration::from_secs(60), || oracle_equivalence(1, 5)),
        (3, "alternating sums", Duration::from_secs(60), || alternating_sums(1, 5)),
        (4, "topology corpus", Duration::from_secs(60), criterion_4),
        (5, "shellability", Duration::from_secs(60), criterion_5),
        (6, "interior decomposition", Duration::from_secs(10), criterion_6),
        (7, "flip propositions", Duration::from_secs(10), criterion_7),
        (8, "stretch n = 6", Duration::from_secs(600), criterion_8),
    ];
    let mut failed = false;
    for (k, name, budget, check) in criteria {
        let start = Instant::now();
        let verdict = check();
        let elapsed = start.elapsed();
        let line = match verdict {
            Ok(detail) if elapsed <= budget => format!("PASS  criterion {k} ({name}): {detail} [{elapsed:.2?}]"),
            Ok(detail) => {
                failed = true;
                format!("FAIL  criterion {k} ({name}): over budget {budget:?}: {detail} [{elapsed:.2?}]")
            }
            Err(reason) => {
                failed = true;
                format!("FAIL  criterion {k} ({name}): {reason} [{elapsed:.2?}]")
            }
        };
        println!("{line}");
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

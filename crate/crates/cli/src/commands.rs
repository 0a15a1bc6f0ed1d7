use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use slide_complexes::complex::{
    facet_polynomial, interior_polynomial, verify_shelling, vertex_decomposition_shelling,
    ComplexSummary, Face,
};
use slide_complexes::pipedream::{
    enumerate_pipe_dreams, enumerate_quasi_yamanouchi, glide_polynomial,
    grothendieck_from_pipedreams, quasi_yamanouchi_for_word, schubert_from_pipedreams,
    slide_polynomial, staircase_word,
};
use slide_complexes::polynomial::{grothendieck_oracle, schubert_oracle};
use slide_complexes::verify::{self, Suite};
use slide_complexes::{Complex, FaceQuery, Permutation, PipeDream, Polynomial, Target, Word};

use crate::{FaceSelection, Source};

/// Largest rank any command accepts.
const RANK_CAP: usize = 6;
/// Longest ambient word for `complex` (the length of the rank-6 staircase word).
const WORD_CAP: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl CommandResult {
    fn ok(payload: impl Serialize, diagnostics: Vec<String>) -> Self {
        CommandResult {
            status: Status::Ok,
            payload: serde_json::to_value(payload).expect("payloads serialize"),
            diagnostics,
        }
    }

    pub fn usage_error(message: String) -> Self {
        CommandResult {
            status: Status::Error,
            payload: Value::Null,
            diagnostics: vec![message],
        }
    }
}

pub enum Output {
    Json(CommandResult),
    Text(String),
}

pub enum Failure {
    Usage(String),
}

fn usage(message: impl ToString) -> Failure {
    Failure::Usage(message.to_string())
}

pub fn render(result: &CommandResult) -> String {
    serde_json::to_string_pretty(result).expect("results serialize")
}

fn parse_perm(text: &str) -> Result<Permutation, Failure> {
    let w: Permutation = text.parse().map_err(usage)?;
    if w.rank() > RANK_CAP {
        return Err(usage(format!("rank {} exceeds the cap of {RANK_CAP}", w.rank())));
    }
    Ok(w)
}

fn parse_letters(text: &str) -> Result<Vec<usize>, Failure> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| usage(format!("cannot parse word {text:?}"))))
        .collect()
}

fn check_rank(n: usize) -> Result<(), Failure> {
    if !(1..=RANK_CAP).contains(&n) {
        return Err(usage(format!("rank {n} is outside 1..={RANK_CAP}")));
    }
    Ok(())
}

#[derive(Serialize)]
struct EnumeratePayload<T: Serialize> {
    permutation: String,
    reduced_only: bool,
    quasi_yamanouchi_only: bool,
    count: usize,
    count_by_excess: BTreeMap<usize, usize>,
    pipe_dreams: Vec<T>,
}

pub fn enumerate(perm: &str, reduced: bool, quasi_yamanouchi: bool, ascii: bool) -> Result<Output, Failure> {
    let w = parse_perm(perm)?;
    let dreams: Vec<PipeDream> = enumerate_pipe_dreams(&w, reduced)
        .into_iter()
        .filter(|p| !quasi_yamanouchi || p.is_quasi_yamanouchi())
        .collect();
    if ascii {
        let mut out = String::new();
        for p in &dreams {
            let s = p.summary();
            let _ = writeln!(out, "# {p} excess={} word=({}) monomial={}", s.excess, s.word, s.monomial);
            out.push_str(&p.ascii());
            out.push('\n');
        }
        let _ = writeln!(out, "{} pipe dreams", dreams.len());
        return Ok(Output::Text(out));
    }
    let mut count_by_excess = BTreeMap::new();
    for p in &dreams {
        *count_by_excess.entry(p.excess()).or_insert(0) += 1;
    }
    let result = if quasi_yamanouchi {
        CommandResult::ok(
            EnumeratePayload {
                permutation: w.to_string(),
                reduced_only: reduced,
                quasi_yamanouchi_only: true,
                count: dreams.len(),
                count_by_excess,
                pipe_dreams: enumerate_quasi_yamanouchi(&w, reduced),
            },
            Vec::new(),
        )
    } else {
        CommandResult::ok(
            EnumeratePayload {
                permutation: w.to_string(),
                reduced_only: reduced,
                quasi_yamanouchi_only: false,
                count: dreams.len(),
                count_by_excess,
                pipe_dreams: dreams.iter().map(PipeDream::summary).collect(),
            },
            Vec::new(),
        )
    };
    Ok(Output::Json(result))
}

#[derive(Serialize)]
struct PolyPayload {
    kind: &'static str,
    source: &'static str,
    input: String,
    n_vars: usize,
    text: String,
    terms: Polynomial,
}

fn source_name(source: Source) -> &'static str {
    match source {
        Source::Pipedreams => "pipedreams",
        Source::Operators => "operators",
        Source::Complex => "complex",
    }
}

fn parse_crosses(text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    text.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|cell| {
            let parts = parse_letters(cell)?;
            match parts[..] {
                [i, j] => Ok((i, j)),
                _ => Err(usage(format!("cross {cell:?} is not of the form i,j"))),
            }
        })
        .collect()
}

/// The quasi-Yamanouchi pipe dream named by `--word` or `--crosses`.
fn quasi_yamanouchi_input(word: Option<&str>, crosses: Option<&str>, n: Option<usize>) -> Result<(PipeDream, String), Failure> {
    match (word, crosses) {
        (Some(word), None) => {
            let letters = parse_letters(word)?;
            let n = n.unwrap_or_else(|| letters.iter().max().map_or(2, |m| m + 1));
            check_rank(n)?;
            let s = Word::new(n, letters).map_err(usage)?;
            let q = quasi_yamanouchi_for_word(&s).map_err(usage)?;
            Ok((q, s.to_string()))
        }
        (None, Some(crosses)) => {
            let n = n.ok_or_else(|| usage("--crosses needs --n"))?;
            check_rank(n)?;
            let q = PipeDream::from_crosses(n, &parse_crosses(crosses)?).map_err(usage)?;
            if !q.is_quasi_yamanouchi() {
                return Err(usage(format!("pipe dream {q} is not quasi-Yamanouchi")));
            }
            Ok((q, q.to_string()))
        }
        _ => Err(usage("slide and glide polynomials need exactly one of --word or --crosses")),
    }
}

pub fn poly(
    args: &[String],
    source: Source,
    word: Option<&str>,
    crosses: Option<&str>,
    n: Option<usize>,
) -> Result<Output, Failure> {
    let (perm, kind) = match args {
        [kind] => (None, kind.as_str()),
        [perm, kind] => (Some(perm.as_str()), kind.as_str()),
        _ => return Err(usage("expected [PERM] KIND")),
    };
    let (kind, input, polynomial) = match kind {
        "schubert" | "grothendieck" => {
            if word.is_some() || crosses.is_some() {
                return Err(usage(format!("{kind} takes a permutation, not --word or --crosses")));
            }
            let w = parse_perm(perm.ok_or_else(|| usage(format!("{kind} needs a permutation")))?)?;
            let schubert = kind == "schubert";
            let p = match source {
                Source::Pipedreams if schubert => schubert_from_pipedreams(&w),
                Source::Pipedreams => grothendieck_from_pipedreams(&w),
                Source::Operators if schubert => schubert_oracle(&w),
                Source::Operators => grothendieck_oracle(&w),
                Source::Complex => {
                    let c = Complex::subword(&staircase_word(w.rank()), &w).map_err(usage)?;
                    if schubert { facet_polynomial(&c) } else { interior_polynomial(&c) }.map_err(usage)?
                }
            };
            (if schubert { "schubert" } else { "grothendieck" }, w.to_string(), p)
        }
        "slide" | "glide" => {
            if perm.is_some() {
                return Err(usage(format!("{kind} takes --word or --crosses, not a permutation")));
            }
            let (q, input) = quasi_yamanouchi_input(word, crosses, n)?;
            let slide = kind == "slide";
            if slide && !q.is_reduced() {
                return Err(usage(format!("slide polynomials need a reduced pipe dream; {q} has excess {}", q.excess())));
            }
            let p = match source {
                Source::Operators => {
                    return Err(usage(format!("{kind} polynomials have no operator route; use pipedreams or complex")))
                }
                Source::Pipedreams if slide => slide_polynomial(&q).map_err(usage)?,
                Source::Pipedreams => glide_polynomial(&q).map_err(usage)?,
                Source::Complex => {
                    let c = Complex::slide(&staircase_word(q.rank()), &q.word()).map_err(usage)?;
                    if slide { facet_polynomial(&c) } else { interior_polynomial(&c) }.map_err(usage)?
                }
            };
            (if slide { "slide" } else { "glide" }, input, p)
        }
        other => return Err(usage(format!("unknown polynomial kind {other:?}"))),
    };
    Ok(Output::Json(CommandResult::ok(
        PolyPayload {
            kind,
            source: source_name(source),
            input,
            n_vars: polynomial.n_vars(),
            text: polynomial.to_text(),
            terms: polynomial,
        },
        Vec::new(),
    )))
}

#[derive(Serialize)]
struct Shelling {
    order: Vec<Face>,
    valid: bool,
}

#[derive(Serialize)]
struct ComplexPayload {
    #[serde(flatten)]
    summary: ComplexSummary,
    flip_edges: usize,
    cover_flips: usize,
    positive_greedy: Option<Face>,
    negative_greedy: Option<Face>,
    #[serde(skip_serializing_if = "Option::is_none")]
    faces: Option<Vec<Face>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shelling: Option<Shelling>,
}

pub fn complex(
    word: &str,
    perm: Option<&str>,
    target_word: Option<&str>,
    n: Option<usize>,
    faces: Option<FaceSelection>,
    shelling: bool,
    dot: bool,
) -> Result<Output, Failure> {
    let letters = parse_letters(word)?;
    if letters.len() > WORD_CAP {
        return Err(usage(format!("word length {} exceeds the cap of {WORD_CAP}", letters.len())));
    }
    let target_letters = target_word.map(parse_letters).transpose()?;
    let perm = perm.map(parse_perm).transpose()?;
    let n = match (n, &perm) {
        (Some(n), _) => n,
        (None, Some(w)) => w.rank(),
        (None, None) => {
            let all = letters.iter().chain(target_letters.iter().flatten());
            all.max().map_or(2, |m| m + 1)
        }
    };
    check_rank(n)?;
    let q = Word::new(n, letters).map_err(usage)?;
    let target = match (perm, target_letters) {
        (Some(w), None) => Target::Permutation(w),
        (None, Some(s)) => Target::Word(Word::new(n, s).map_err(usage)?),
        _ => return Err(usage("give exactly one of --perm or --word")),
    };
    let c = Complex::build(&q, target).map_err(usage)?;
    let graph = c.flip_graph();
    if dot {
        return Ok(Output::Text(graph.to_dot()));
    }
    let mut diagnostics = c.warnings().to_vec();
    if let (Err(e), true) = (c.classify(), diagnostics.is_empty()) {
        diagnostics.push(e.to_string());
    }
    let greedy = graph.positive_greedy().and_then(|p| Ok((p, graph.negative_greedy()?)));
    if let Err(e) = &greedy {
        diagnostics.push(e.to_string());
    }
    let faces = faces.map(|which| {
        c.faces(match which {
            FaceSelection::All => FaceQuery::All,
            FaceSelection::Interior => FaceQuery::Interior,
            FaceSelection::Boundary => FaceQuery::Boundary,
        })
    });
    let shelling = shelling.then(|| {
        let order = vertex_decomposition_shelling(&c);
        let valid = verify_shelling(&c, &order);
        Shelling { order, valid }
    });
    let payload = ComplexPayload {
        summary: c.summary(),
        flip_edges: graph.edges.len(),
        cover_flips: graph.cover_flips().len(),
        positive_greedy: greedy.as_ref().ok().map(|g| g.0),
        negative_greedy: greedy.as_ref().ok().map(|g| g.1),
        faces,
        shelling,
    };
    Ok(Output::Json(CommandResult::ok(payload, diagnostics)))
}

pub fn verify(max_rank: usize, suite: Suite) -> Result<Output, Failure> {
    let report = verify::run(max_rank, suite).map_err(usage)?;
    let diagnostics: Vec<String> = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| match c.rank {
            Some(n) => format!("{} failed at rank {n} ({} of {} cases)", c.name, c.failure_count, c.cases),
            None => format!("{} failed ({} of {} cases)", c.name, c.failure_count, c.cases),
        })
        .collect();
    let mut result = CommandResult::ok(&report, diagnostics);
    if !report.passed {
        result.status = Status::Error;
    }
    Ok(Output::Json(result))
}

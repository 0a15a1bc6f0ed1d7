use std::fmt::Write as _;

use serde::Serialize;

use super::{Complex, ComplexError, Face};

/// A flip `from -> to` with `to = (from \ {removed}) ∪ {added}`, oriented so
/// that `removed < added` (an increasing flip). Positions are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FlipEdge {
    pub from: usize,
    pub to: usize,
    pub removed: usize,
    pub added: usize,
}

/// Facets joined by flips (symmetric difference of size two), with every
/// edge oriented in the increasing direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlipGraph {
    pub facets: Vec<Face>,
    pub edges: Vec<FlipEdge>,
}

impl FlipGraph {
    pub fn new(complex: &Complex) -> FlipGraph {
        let facets = complex.facets().to_vec();
        let mut edges = Vec::new();
        for (a, fa) in facets.iter().enumerate() {
            for (b, fb) in facets.iter().enumerate().skip(a + 1) {
                let diff = fa.mask() ^ fb.mask();
                if diff.count_ones() != 2 {
                    continue;
                }
                let out_of_a = (fa.mask() & diff).trailing_zeros() as usize + 1;
                let out_of_b = (fb.mask() & diff).trailing_zeros() as usize + 1;
                // a -> b removes out_of_a and adds out_of_b
                let edge = if out_of_a < out_of_b {
                    FlipEdge { from: a, to: b, removed: out_of_a, added: out_of_b }
                } else {
                    FlipEdge { from: b, to: a, removed: out_of_b, added: out_of_a }
                };
                edges.push(edge);
            }
        }
        FlipGraph { facets, edges }
    }

    /// Facet indices with no incoming increasing flip.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.facets.len()).filter(|&v| !self.edges.iter().any(|e| e.to == v)).collect()
    }

    /// Facet indices with no outgoing increasing flip.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.facets.len()).filter(|&v| !self.edges.iter().any(|e| e.from == v)).collect()
    }

    fn unique(&self) -> Result<(usize, usize), ComplexError> {
        let (sources, sinks) = (self.sources(), self.sinks());
        if sources.len() == 1 && sinks.len() == 1 {
            Ok((sources[0], sinks[0]))
        } else {
            Err(ComplexError::NonUniqueGreedy { sources: sources.len(), sinks: sinks.len() })
        }
    }

    /// The unique facet every increasing flip path starts from. For a pipe
    /// dream complex this is the quasi-Yamanouchi facet, and the slide moves
    /// are the reversed (decreasing) flips leading back to it.
    pub fn positive_greedy(&self) -> Result<Face, ComplexError> {
        self.unique().map(|(source, _)| self.facets[source])
    }

    /// The unique facet every increasing flip path ends at.
    pub fn negative_greedy(&self) -> Result<Face, ComplexError> {
        self.unique().map(|(_, sink)| self.facets[sink])
    }

    /// Decreasing flips, i.e. the edges traversed against their orientation.
    pub fn decreasing_flips(&self) -> Vec<FlipEdge> {
        self.edges
            .iter()
            .map(|e| FlipEdge { from: e.to, to: e.from, removed: e.added, added: e.removed })
            .collect()
    }

    /// Increasing flips that are cover relations of the flip order, i.e. not
    /// implied by a longer chain of increasing flips.
    pub fn cover_flips(&self) -> Vec<FlipEdge> {
        let k = self.facets.len();
        let mut succ = vec![Vec::new(); k];
        for e in &self.edges {
            succ[e.from].push(e.to);
        }
        // Every increasing flip raises the position sum, so sorting by it is a topological order.
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&v| self.facets[v].positions().iter().sum::<usize>());
        let mut reach = vec![vec![false; k]; k];
        for &v in order.iter().rev() {
            for &t in &succ[v] {
                let below = reach[t].clone();
                let row = &mut reach[v];
                row[t] = true;
                for (r, b) in row.iter_mut().zip(below) {
                    *r |= b;
                }
            }
        }
        self.edges
            .iter()
            .copied()
            .filter(|e| !succ[e.from].iter().any(|&t| t != e.to && reach[t][e.to]))
            .collect()
    }

    /// Cover relations traversed downwards.
    pub fn decreasing_cover_flips(&self) -> Vec<FlipEdge> {
        self.cover_flips()
            .iter()
            .map(|e| FlipEdge { from: e.to, to: e.from, removed: e.added, added: e.removed })
            .collect()
    }

    /// Graphviz rendering; the greedy facets are drawn with a double border
    /// and flips implied by longer chains are dashed.
    pub fn to_dot(&self) -> String {
        let greedy = self.unique().ok();
        let mut out = String::from("digraph flips {\n  rankdir=LR;\n");
        for (k, f) in self.facets.iter().enumerate() {
            let mut attrs = format!("label=\"{f}\"");
            if let Some((source, sink)) = greedy {
                if k == source {
                    attrs.push_str(", peripheries=2, xlabel=\"positive greedy\"");
                } else if k == sink {
                    attrs.push_str(", peripheries=2, xlabel=\"negative greedy\"");
                }
            }
            let _ = writeln!(out, "  f{k} [{attrs}];");
        }
        let covers = self.cover_flips();
        for e in &self.edges {
            let style = if covers.contains(e) { "" } else { ", style=dashed" };
            let _ = writeln!(out, "  f{} -> f{} [label=\"{}→{}\"{style}];", e.from, e.to, e.removed, e.added);
        }
        out.push_str("}\n");
        out
    }
}

impl Complex {
    pub fn flip_graph(&self) -> FlipGraph {
        FlipGraph::new(self)
    }
}

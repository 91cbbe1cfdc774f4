//! Edge-list text format.
//!
//! ```text
//! n m          simple graph: m lines "u v"
//! n m d        digraph: m lines "tail head"
//! n m h        hypergraph: m lines "k v1 ... vk"
//! ```
//!
//! Vertices are 0-indexed, tokens whitespace-separated, lines LF-terminated.
//! Blank lines are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Digraph, Graph, Hypergraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed header: {0:?}")]
    MalformedHeader(String),
    #[error("line {line}: malformed edge line {text:?}")]
    MalformedLine { line: usize, text: String },
    #[error("header declares {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("line {line}: endpoint {vertex} out of range for {n} vertices")]
    EndpointOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {edge:?}")]
    DuplicateEdge { line: usize, edge: Vec<usize> },
    #[error("line {line}: hyperedge needs at least two distinct vertices")]
    HyperedgeTooSmall { line: usize },
    #[error("expected a {expected} file, found a {found} header")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Simple,
    Directed,
    Hyper,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Simple => "graph",
            Kind::Directed => "digraph",
            Kind::Hyper => "hypergraph",
        }
    }
}

/// Any of the three file kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyGraph {
    Simple(Graph),
    Directed(Digraph),
    Hyper(Hypergraph),
}

struct Body<'a> {
    kind: Kind,
    n: usize,
    m: usize,
    // (1-based line number, tokens)
    lines: Vec<(usize, Vec<&'a str>)>,
}

fn split(text: &str) -> Result<Body<'_>, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, toks)| !toks.is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| ParseError::MalformedHeader(String::new()))?;
    let bad_header = || ParseError::MalformedHeader(header.join(" "));
    let (n, m, kind) = match header.as_slice() {
        [n, m] => (n, m, Kind::Simple),
        [n, m, "d"] => (n, m, Kind::Directed),
        [n, m, "h"] => (n, m, Kind::Hyper),
        _ => return Err(bad_header()),
    };
    let n = n.parse().map_err(|_| bad_header())?;
    let m = m.parse().map_err(|_| bad_header())?;
    let lines: Vec<_> = lines.collect();
    if lines.len() != m {
        return Err(ParseError::EdgeCountMismatch {
            declared: m,
            found: lines.len(),
        });
    }
    Ok(Body { kind, n, m, lines })
}

fn numbers(line: usize, toks: &[&str]) -> Result<Vec<usize>, ParseError> {
    toks.iter()
        .map(|t| t.parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| ParseError::MalformedLine {
            line,
            text: toks.join(" "),
        })
}

fn pair(line: usize, toks: &[&str], n: usize) -> Result<(usize, usize), ParseError> {
    let nums = numbers(line, toks)?;
    let [u, v] = nums[..] else {
        return Err(ParseError::MalformedLine {
            line,
            text: toks.join(" "),
        });
    };
    for vertex in [u, v] {
        if vertex >= n {
            return Err(ParseError::EndpointOutOfRange { line, vertex, n });
        }
    }
    if u == v {
        return Err(ParseError::SelfLoop { line, vertex: u });
    }
    Ok((u, v))
}

/// Reports the first line whose (canonicalized) key repeats an earlier one.
fn first_duplicate<K: Ord + Clone>(keys: &[(usize, K)]) -> Option<(usize, K)> {
    let mut sorted: Vec<_> = keys.iter().map(|(line, k)| (k.clone(), *line)).collect();
    sorted.sort();
    sorted
        .windows(2)
        .filter(|w| w[0].0 == w[1].0)
        .map(|w| (w[1].1.max(w[0].1), w[0].0.clone()))
        .min_by_key(|(line, _)| *line)
}

fn expect_kind(body: &Body<'_>, expected: Kind) -> Result<(), ParseError> {
    if body.kind != expected {
        return Err(ParseError::WrongKind {
            expected: expected.name(),
            found: body.kind.name(),
        });
    }
    Ok(())
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let body = split(text)?;
    expect_kind(&body, Kind::Simple)?;
    graph_from_body(&body)
}

fn graph_from_body(body: &Body<'_>) -> Result<Graph, ParseError> {
    let mut keyed = Vec::with_capacity(body.m);
    for (line, toks) in &body.lines {
        let (u, v) = pair(*line, toks, body.n)?;
        keyed.push((*line, (u.min(v), u.max(v))));
    }
    if let Some((line, (u, v))) = first_duplicate(&keyed) {
        return Err(ParseError::DuplicateEdge { line, edge: vec![u, v] });
    }
    Ok(Graph::new(body.n, keyed.into_iter().map(|(_, e)| e)).expect("edges validated above"))
}

pub fn parse_digraph(text: &str) -> Result<Digraph, ParseError> {
    let body = split(text)?;
    expect_kind(&body, Kind::Directed)?;
    digraph_from_body(&body)
}

fn digraph_from_body(body: &Body<'_>) -> Result<Digraph, ParseError> {
    let mut keyed = Vec::with_capacity(body.m);
    for (line, toks) in &body.lines {
        keyed.push((*line, pair(*line, toks, body.n)?));
    }
    if let Some((line, (u, v))) = first_duplicate(&keyed) {
        return Err(ParseError::DuplicateEdge { line, edge: vec![u, v] });
    }
    Ok(Digraph::new(body.n, keyed.into_iter().map(|(_, a)| a)).expect("arcs validated above"))
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, ParseError> {
    let body = split(text)?;
    expect_kind(&body, Kind::Hyper)?;
    hypergraph_from_body(&body)
}

fn hypergraph_from_body(body: &Body<'_>) -> Result<Hypergraph, ParseError> {
    let mut keyed = Vec::with_capacity(body.m);
    for (line, toks) in &body.lines {
        let line = *line;
        let nums = numbers(line, toks)?;
        let malformed = || ParseError::MalformedLine {
            line,
            text: toks.join(" "),
        };
        let (&k, members) = nums.split_first().ok_or_else(malformed)?;
        if members.len() != k {
            return Err(malformed());
        }
        if let Some(&vertex) = members.iter().find(|&&v| v >= body.n) {
            return Err(ParseError::EndpointOutOfRange {
                line,
                vertex,
                n: body.n,
            });
        }
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        if members.len() < 2 {
            return Err(ParseError::HyperedgeTooSmall { line });
        }
        keyed.push((line, members));
    }
    if let Some((line, edge)) = first_duplicate(&keyed) {
        return Err(ParseError::DuplicateEdge { line, edge });
    }
    Ok(Hypergraph::new(body.n, keyed.into_iter().map(|(_, e)| e)).expect("hyperedges validated above"))
}

/// Parses whichever kind the header announces.
pub fn parse_any(text: &str) -> Result<AnyGraph, ParseError> {
    let body = split(text)?;
    Ok(match body.kind {
        Kind::Simple => AnyGraph::Simple(graph_from_body(&body)?),
        Kind::Directed => AnyGraph::Directed(digraph_from_body(&body)?),
        Kind::Hyper => AnyGraph::Hyper(hypergraph_from_body(&body)?),
    })
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn serialize_digraph(g: &Digraph) -> String {
    let mut out = format!("{} {} d\n", g.vertex_count(), g.arcs().len());
    for (u, v) in g.arcs() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn serialize_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("{} {} h\n", h.vertex_count(), h.hyperedges().len());
    for members in h.hyperedges() {
        write!(out, "{}", members.len()).unwrap();
        for v in members {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

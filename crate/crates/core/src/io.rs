//! Graph file formats: METIS adjacency, DIMACS edge lists and plain edge
//! lists. Parsers symmetrize and deduplicate; writers emit the alive
//! subgraph on original ids.

use crate::graph::Graph;
use std::error::Error;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Metis,
    Dimacs,
    EdgeList,
}

impl Format {
    pub fn name(&self) -> &'static str {
        match self {
            Format::Metis => "metis",
            Format::Dimacs => "dimacs",
            Format::EdgeList => "edgelist",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "metis" => Ok(Format::Metis),
            "dimacs" => Ok(Format::Dimacs),
            "edgelist" => Ok(Format::EdgeList),
            other => Err(format!("unknown format '{other}'")),
        }
    }
}

/// Guesses the format from the file extension; edge list is the default.
pub fn detect_format(path: &Path) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("graph") | Some("metis") => Format::Metis,
        Some("dimacs") | Some("col") | Some("clq") | Some("edges") => Format::Dimacs,
        _ => Format::EdgeList,
    }
}

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl ParseError {
    fn new(line: usize, msg: impl Into<String>) -> Self {
        ParseError {
            line,
            msg: msg.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

impl Error for ParseError {}

pub fn parse_graph_file(path: &Path, format: Format) -> Result<Graph, Box<dyn Error>> {
    let text = fs::read_to_string(path)?;
    let g = parse_graph(&text, format)?;
    Ok(g)
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph, ParseError> {
    match format {
        Format::Metis => parse_metis(text),
        Format::Dimacs => parse_dimacs(text),
        Format::EdgeList => parse_edgelist(text),
    }
}

fn parse_usize(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse::<usize>()
        .map_err(|_| ParseError::new(line, format!("expected integer, got '{tok}'")))
}

/// METIS: header "n m" (an optional fmt token must be all zeros), then n
/// 1-indexed adjacency lines. '%' lines are comments. The deduplicated edge
/// count must match the header.
pub fn parse_metis(text: &str) -> Result<Graph, ParseError> {
    let mut data_lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim_start().starts_with('%'));
    let (header_no, header) = data_lines
        .next()
        .ok_or_else(|| ParseError::new(1, "empty file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() < 2 || toks.len() > 4 {
        return Err(ParseError::new(header_no, "header must be 'n m [fmt]'"));
    }
    let n = parse_usize(toks[0], header_no)?;
    let m = parse_usize(toks[1], header_no)?;
    if toks.len() >= 3 && toks[2].chars().any(|c| c != '0') {
        return Err(ParseError::new(
            header_no,
            "weighted graphs are not supported (fmt must be zero)",
        ));
    }
    let mut edges = Vec::new();
    let mut count = 0usize;
    for v in 0..n {
        let (line_no, line) = data_lines
            .next()
            .ok_or_else(|| ParseError::new(header_no, format!("expected {n} adjacency lines")))?;
        for tok in line.split_whitespace() {
            let u = parse_usize(tok, line_no)?;
            if u == 0 || u > n {
                return Err(ParseError::new(
                    line_no,
                    format!("neighbor {u} out of range 1..={n}"),
                ));
            }
            edges.push((v, u - 1));
        }
        count += 1;
    }
    debug_assert_eq!(count, n);
    for (line_no, line) in data_lines {
        if !line.trim().is_empty() {
            return Err(ParseError::new(line_no, "trailing data after adjacency"));
        }
    }
    let g = Graph::build(n, &edges).expect("ids validated above");
    if g.edge_count() != m {
        return Err(ParseError::new(
            header_no,
            format!("header declares {m} edges, found {}", g.edge_count()),
        ));
    }
    Ok(g)
}

/// DIMACS: "p edge n m" followed by 1-indexed "e u v" lines; 'c' lines are
/// comments. Duplicates and self loops are dropped.
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if n.is_some() {
                return Err(ParseError::new(line_no, "duplicate problem line"));
            }
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 3 || (toks[0] != "edge" && toks[0] != "col") {
                return Err(ParseError::new(line_no, "expected 'p edge n m'"));
            }
            n = Some(parse_usize(toks[1], line_no)?);
        } else if let Some(rest) = line.strip_prefix('e') {
            let n = n.ok_or_else(|| ParseError::new(line_no, "edge before problem line"))?;
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(ParseError::new(line_no, "expected 'e u v'"));
            }
            let u = parse_usize(toks[0], line_no)?;
            let v = parse_usize(toks[1], line_no)?;
            if u == 0 || u > n || v == 0 || v > n {
                return Err(ParseError::new(
                    line_no,
                    format!("endpoint out of range 1..={n}"),
                ));
            }
            edges.push((u - 1, v - 1));
        } else {
            return Err(ParseError::new(line_no, "unrecognized line"));
        }
    }
    let n = n.ok_or_else(|| ParseError::new(1, "missing problem line"))?;
    Ok(Graph::build(n, &edges).expect("ids validated above"))
}

/// Edge list: one "u v" pair per line, '#' lines are comments. Indexing is
/// auto-detected: files whose smallest id is >= 1 are treated as 1-indexed.
/// An optional "# nodes: N" comment pins the vertex count, which otherwise
/// defaults to the largest id + 1.
pub fn parse_edgelist(text: &str) -> Result<Graph, ParseError> {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut declared_nodes: Option<usize> = None;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            let lower = comment.to_ascii_lowercase();
            if let Some(rest) = lower.split("nodes:").nth(1) {
                if let Some(tok) = rest.split_whitespace().next() {
                    declared_nodes = tok.parse().ok().or(declared_nodes);
                }
            }
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(ParseError::new(line_no, "expected 'u v'"));
        }
        let u = parse_usize(toks[0], line_no)?;
        let v = parse_usize(toks[1], line_no)?;
        pairs.push((u, v));
    }
    let max_id = pairs.iter().map(|&(u, v)| u.max(v)).max();
    let all_positive = !pairs.is_empty() && pairs.iter().all(|&(u, v)| u >= 1 && v >= 1);
    // A declared node count consistent with 0-based ids wins over the
    // minimum-id heuristic; otherwise ids starting at 1 shift down.
    let one_indexed = match (declared_nodes, max_id) {
        (Some(n), Some(m)) => all_positive && m >= n,
        _ => all_positive,
    };
    if one_indexed {
        for p in pairs.iter_mut() {
            p.0 -= 1;
            p.1 -= 1;
        }
    }
    let max_id = pairs.iter().map(|&(u, v)| u.max(v)).max();
    let n = declared_nodes
        .unwrap_or(0)
        .max(max_id.map_or(0, |m| m + 1));
    Ok(Graph::build(n, &pairs).expect("ids in range by construction"))
}

pub fn write_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Metis => write_metis(g),
        Format::Dimacs => write_dimacs(g),
        Format::EdgeList => write_edgelist(g),
    }
}

pub fn write_metis(g: &Graph) -> String {
    let n = g.n_original();
    let mut out = format!("{} {}\n", n, g.edge_count());
    for v in 0..n {
        let line: Vec<String> = if g.is_alive(v) {
            g.neighbors(v).map(|u| (u + 1).to_string()).collect()
        } else {
            Vec::new()
        };
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n_original(), g.edge_count());
    for v in g.vertices() {
        for u in g.neighbors(v) {
            if u > v {
                out.push_str(&format!("e {} {}\n", v + 1, u + 1));
            }
        }
    }
    out
}

pub fn write_edgelist(g: &Graph) -> String {
    let mut out = format!("# nodes: {}\n", g.n_original());
    for v in g.vertices() {
        for u in g.neighbors(v) {
            if u > v {
                out.push_str(&format!("{} {}\n", v, u));
            }
        }
    }
    out
}

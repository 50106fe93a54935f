//! Text formats for colored graphs, multicut instances and solutions.
//!
//! Colored graph (`.ccg`), one record per line, `#` starts a comment:
//!
//! ```text
//! p ccg <n> <m> <q>
//! v <id> <color-id>     (one line per vertex)
//! e <u> <v>             (one line per edge)
//! ```
//!
//! Multicut instance (`.mct`):
//!
//! ```text
//! p mct <n> <r>
//! e <u> <v>             (tree edges)
//! q <x> <y>             (terminal pairs)
//! ```
//!
//! Solution files list deleted edges as `d <u> <v>` lines followed by a
//! single `obj <value>` line.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Partition};
use crate::multicut::MulticutInstance;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(no, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((no + 1, line))
        }
    })
}

fn parse_fields<const K: usize>(lineno: usize, rest: &[&str]) -> Result<[usize; K]> {
    if rest.len() != K {
        return Err(Error::invalid(format!(
            "line {}: expected {} fields, got {}",
            lineno,
            K,
            rest.len()
        )));
    }
    let mut out = [0usize; K];
    for (slot, tok) in out.iter_mut().zip(rest) {
        *slot = tok
            .parse()
            .map_err(|_| Error::invalid(format!("line {}: bad integer '{}'", lineno, tok)))?;
    }
    Ok(out)
}

/// Parses a colored graph from `.ccg` text.
pub fn parse_graph(text: &str) -> Result<ColoredGraph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut colors: Vec<Option<usize>> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (lineno, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_ascii_whitespace().collect();
        match toks[0] {
            "p" => {
                if header.is_some() {
                    return Err(Error::invalid(format!("line {}: duplicate header", lineno)));
                }
                if toks.get(1) != Some(&"ccg") {
                    return Err(Error::invalid(format!(
                        "line {}: expected 'p ccg <n> <m> <q>'",
                        lineno
                    )));
                }
                let [n, m, q] = parse_fields::<3>(lineno, &toks[2..])?;
                header = Some((n, m, q));
                colors = vec![None; n];
            }
            "v" => {
                let (n, _, _) = header
                    .ok_or_else(|| Error::invalid(format!("line {}: 'v' before header", lineno)))?;
                let [id, color] = parse_fields::<2>(lineno, &toks[1..])?;
                if id >= n {
                    return Err(Error::invalid(format!(
                        "line {}: vertex {} out of range",
                        lineno, id
                    )));
                }
                if colors[id].is_some() {
                    return Err(Error::invalid(format!(
                        "line {}: vertex {} colored twice",
                        lineno, id
                    )));
                }
                colors[id] = Some(color);
            }
            "e" => {
                if header.is_none() {
                    return Err(Error::invalid(format!(
                        "line {}: 'e' before header",
                        lineno
                    )));
                }
                let [u, v] = parse_fields::<2>(lineno, &toks[1..])?;
                edges.push((u, v));
            }
            other => {
                return Err(Error::invalid(format!(
                    "line {}: unknown record '{}'",
                    lineno, other
                )));
            }
        }
    }
    let (n, m, q) = header.ok_or_else(|| Error::invalid("missing 'p ccg' header"))?;
    if edges.len() != m {
        return Err(Error::invalid(format!(
            "header declares {} edges, file lists {}",
            m,
            edges.len()
        )));
    }
    let colors: Vec<usize> = colors
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| Error::invalid(format!("vertex {} has no color line", v))))
        .collect::<Result<_>>()?;
    ColoredGraph::new(n, edges, colors, q)
}

/// Renders a colored graph in `.ccg` text form. Deterministic: vertices and
/// edges appear in id order.
pub fn format_graph(g: &ColoredGraph) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "p ccg {} {} {}\n",
        g.vertex_count(),
        g.edge_count(),
        g.color_count()
    ));
    for v in 0..g.vertex_count() {
        out.push_str(&format!("v {} {}\n", v, g.color(v)));
    }
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u, v));
    }
    out
}

/// Parses a multicut instance from `.mct` text.
pub fn parse_multicut(text: &str) -> Result<MulticutInstance> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut requests: Vec<(usize, usize)> = Vec::new();
    for (lineno, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_ascii_whitespace().collect();
        match toks[0] {
            "p" => {
                if header.is_some() {
                    return Err(Error::invalid(format!("line {}: duplicate header", lineno)));
                }
                if toks.get(1) != Some(&"mct") {
                    return Err(Error::invalid(format!(
                        "line {}: expected 'p mct <n> <r>'",
                        lineno
                    )));
                }
                let [n, r] = parse_fields::<2>(lineno, &toks[2..])?;
                header = Some((n, r));
            }
            "e" => {
                let [u, v] = parse_fields::<2>(lineno, &toks[1..])?;
                edges.push((u, v));
            }
            "q" => {
                let [x, y] = parse_fields::<2>(lineno, &toks[1..])?;
                requests.push((x, y));
            }
            other => {
                return Err(Error::invalid(format!(
                    "line {}: unknown record '{}'",
                    lineno, other
                )));
            }
        }
    }
    let (n, r) = header.ok_or_else(|| Error::invalid("missing 'p mct' header"))?;
    if requests.len() != r {
        return Err(Error::invalid(format!(
            "header declares {} requests, file lists {}",
            r,
            requests.len()
        )));
    }
    MulticutInstance::new(n, edges, requests)
}

/// Renders a multicut instance in `.mct` text form.
pub fn format_multicut(m: &MulticutInstance) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "p mct {} {}\n",
        m.tree().vertex_count(),
        m.requests().len()
    ));
    for &(u, v) in m.tree().edges() {
        out.push_str(&format!("e {} {}\n", u, v));
    }
    for &(x, y) in m.requests() {
        out.push_str(&format!("q {} {}\n", x, y));
    }
    out
}

/// Renders a solution: deleted edges then the objective value.
pub fn format_solution(g: &ColoredGraph, p: &Partition, objective: u64) -> String {
    let mut out = String::new();
    for &id in p.deleted_edges() {
        let (u, v) = g.edge(id);
        out.push_str(&format!("d {} {}\n", u, v));
    }
    out.push_str(&format!("obj {}\n", objective));
    out
}

/// A parsed solution file: deleted edge ids resolved against a graph, plus
/// the objective the file claims.
#[derive(Debug, Clone)]
pub struct SolutionFile {
    pub deleted: Vec<usize>,
    pub claimed_objective: Option<u64>,
}

/// Parses a solution file, resolving each `d <u> <v>` against `g`'s edges.
pub fn parse_solution(g: &ColoredGraph, text: &str) -> Result<SolutionFile> {
    let mut deleted = Vec::new();
    let mut claimed = None;
    for (lineno, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_ascii_whitespace().collect();
        match toks[0] {
            "d" => {
                let [u, v] = parse_fields::<2>(lineno, &toks[1..])?;
                let id = g.edge_id(u, v).ok_or_else(|| {
                    Error::invalid(format!("line {}: no edge ({}, {}) in graph", lineno, u, v))
                })?;
                deleted.push(id);
            }
            "obj" => {
                if toks.len() != 2 {
                    return Err(Error::invalid(format!(
                        "line {}: expected 'obj <value>'",
                        lineno
                    )));
                }
                let val = toks[1]
                    .parse()
                    .map_err(|_| Error::invalid(format!("line {}: bad objective", lineno)))?;
                claimed = Some(val);
            }
            other => {
                return Err(Error::invalid(format!(
                    "line {}: unknown record '{}'",
                    lineno, other
                )));
            }
        }
    }
    Ok(SolutionFile {
        deleted,
        claimed_objective: claimed,
    })
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<ColoredGraph> {
    parse_graph(&fs::read_to_string(path)?)
}

pub fn write_graph(path: impl AsRef<Path>, g: &ColoredGraph) -> Result<()> {
    Ok(fs::write(path, format_graph(g))?)
}

pub fn read_multicut(path: impl AsRef<Path>) -> Result<MulticutInstance> {
    parse_multicut(&fs::read_to_string(path)?)
}

pub fn write_multicut(path: impl AsRef<Path>, m: &MulticutInstance) -> Result<()> {
    Ok(fs::write(path, format_multicut(m))?)
}

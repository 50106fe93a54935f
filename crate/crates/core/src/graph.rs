//! Vertex-colored graphs, edge-deletion solutions and the two objectives.
//!
//! A solution to either problem is a set of deleted edges whose removal
//! leaves only *colorful* components (at most one vertex per color).
//! MCC minimizes the number of components, MEC maximizes the number of
//! edges in the transitive closure, `sum n_i * (n_i - 1) / 2` over the
//! component sizes `n_i`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Undirected simple graph with one color per vertex.
///
/// Vertices are `0..n`, colors are dense ids `0..q`. Edges are stored
/// canonically as `(u, v)` with `u < v`, sorted; the index of an edge in
/// [`ColoredGraph::edges`] is its stable *edge id*, which solution objects
/// refer to. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    colors: Vec<usize>,
    color_count: usize,
    adj: Vec<Vec<(usize, usize)>>,
}

impl ColoredGraph {
    /// Builds a graph, validating all invariants: no self-loops, no duplicate
    /// edges, endpoints in range, exactly one color in `0..color_count` per
    /// vertex.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        colors: Vec<usize>,
        color_count: usize,
    ) -> Result<Self> {
        if colors.len() != n {
            return Err(Error::invalid(format!(
                "expected {} vertex colors, got {}",
                n,
                colors.len()
            )));
        }
        if color_count == 0 {
            return Err(Error::invalid("color count must be positive"));
        }
        for (v, &c) in colors.iter().enumerate() {
            if c >= color_count {
                return Err(Error::invalid(format!(
                    "vertex {} has color {} out of range 0..{}",
                    v, c, color_count
                )));
            }
        }
        let mut canon: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {}", u)));
            }
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({}, {}) out of range 0..{}",
                    u, v, n
                )));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if canon.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate edge"));
        }
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in canon.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        Ok(ColoredGraph {
            n,
            edges: canon,
            colors,
            color_count,
            adj,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge list in edge-id order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color_count(&self) -> usize {
        self.color_count
    }

    /// Neighbors of `v` as `(neighbor, edge id)` pairs, ascending by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Id of the edge `{u, v}`, if present.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Removes every edge whose endpoints share a color. Vertex set and
    /// colors are unchanged. Idempotent.
    pub fn normalize(&self) -> ColoredGraph {
        self.normalize_with_map().0
    }

    /// Like [`normalize`](Self::normalize) but also reports, per new edge id,
    /// the old edge id, plus the list of removed old edge ids.
    pub fn normalize_with_map(&self) -> (ColoredGraph, Vec<usize>, Vec<usize>) {
        let mut kept = Vec::new();
        let mut edge_map = Vec::new();
        let mut removed = Vec::new();
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if self.colors[u] == self.colors[v] {
                removed.push(id);
            } else {
                kept.push((u, v));
                edge_map.push(id);
            }
        }
        let g = ColoredGraph::new(self.n, kept, self.colors.clone(), self.color_count)
            .expect("normalization preserves graph invariants");
        (g, edge_map, removed)
    }

    pub fn is_normalized(&self) -> bool {
        self.edges
            .iter()
            .all(|&(u, v)| self.colors[u] != self.colors[v])
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components_without(self, &BTreeSet::new())
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Connected and acyclic.
    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() == self.n - 1 && self.is_connected()
    }

    /// Acyclic (every component is a tree).
    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.components().len() == self.n
    }

    /// Connected, acyclic, maximum degree at most two.
    pub fn is_path(&self) -> bool {
        self.is_tree() && (0..self.n).all(|v| self.degree(v) <= 2)
    }

    /// Induced subgraphs of the connected components, with id maps back into
    /// `self`. Used by solvers that work one component at a time.
    pub fn component_subgraphs(&self) -> Vec<InducedSubgraph> {
        self.components()
            .into_iter()
            .map(|vs| self.induced(&vs))
            .collect()
    }

    /// Induced subgraph on `vertices` (must be sorted and duplicate-free).
    pub fn induced(&self, vertices: &[usize]) -> InducedSubgraph {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut new_of_orig = vec![usize::MAX; self.n];
        for (new, &orig) in vertices.iter().enumerate() {
            new_of_orig[orig] = new;
        }
        let mut edges = Vec::new();
        let mut edge_to_orig = Vec::new();
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if new_of_orig[u] != usize::MAX && new_of_orig[v] != usize::MAX {
                edges.push((new_of_orig[u], new_of_orig[v]));
                edge_to_orig.push(id);
            }
        }
        // Canonical edge order is preserved by relabeling with a monotone map,
        // so edge_to_orig stays aligned with the new ids.
        let colors = vertices.iter().map(|&v| self.colors[v]).collect();
        let graph = ColoredGraph::new(vertices.len(), edges, colors, self.color_count)
            .expect("induced subgraph preserves invariants");
        InducedSubgraph {
            graph,
            vertex_to_orig: vertices.to_vec(),
            edge_to_orig,
        }
    }
}

/// An induced subgraph along with maps back to the host graph.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: ColoredGraph,
    /// New vertex id -> original vertex id.
    pub vertex_to_orig: Vec<usize>,
    /// New edge id -> original edge id.
    pub edge_to_orig: Vec<usize>,
}

/// Components of `g` after removing the edges in `deleted` (edge ids).
fn components_without(g: &ColoredGraph, deleted: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.vertex_count()];
    let mut comps = Vec::new();
    for start in 0..g.vertex_count() {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &(w, id) in g.neighbors(u) {
                if !seen[w] && !deleted.contains(&id) {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// True iff every component of `g` minus `deleted` has at most one vertex
/// per color. Unknown edge ids are an input error.
pub fn is_colorful_partition(
    g: &ColoredGraph,
    deleted: impl IntoIterator<Item = usize>,
) -> Result<bool> {
    let deleted = check_edge_ids(g, deleted)?;
    let comps = components_without(g, &deleted);
    let mut seen_color = vec![usize::MAX; g.color_count()];
    for (ci, comp) in comps.iter().enumerate() {
        for &v in comp {
            let c = g.color(v);
            if seen_color[c] == ci {
                return Ok(false);
            }
            seen_color[c] = ci;
        }
    }
    Ok(true)
}

fn check_edge_ids(
    g: &ColoredGraph,
    deleted: impl IntoIterator<Item = usize>,
) -> Result<BTreeSet<usize>> {
    let mut set = BTreeSet::new();
    for id in deleted {
        if id >= g.edge_count() {
            return Err(Error::invalid(format!(
                "unknown edge id {} (graph has {} edges)",
                id,
                g.edge_count()
            )));
        }
        set.insert(id);
    }
    Ok(set)
}

/// A set of deleted edges together with the induced vertex components.
///
/// The component list always equals the connected components of the graph
/// minus the deleted edges; [`Partition::from_parts`] cross-checks a caller
/// supplied list against a fresh recomputation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    deleted_edges: BTreeSet<usize>,
    components: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds the partition induced by deleting `deleted` from `g`.
    pub fn from_deleted(
        g: &ColoredGraph,
        deleted: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let deleted = check_edge_ids(g, deleted)?;
        let components = components_without(g, &deleted);
        Ok(Partition {
            deleted_edges: deleted,
            components,
        })
    }

    /// Builds from caller-supplied components, verifying they match the
    /// components induced by `deleted`.
    pub fn from_parts(
        g: &ColoredGraph,
        deleted: impl IntoIterator<Item = usize>,
        mut components: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let p = Self::from_deleted(g, deleted)?;
        for comp in components.iter_mut() {
            comp.sort_unstable();
        }
        components.sort();
        if components != p.components {
            return Err(Error::invalid(
                "supplied components do not match the deleted-edge set",
            ));
        }
        Ok(p)
    }

    pub fn deleted_edges(&self) -> &BTreeSet<usize> {
        &self.deleted_edges
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Number of connected components (the MCC objective).
    pub fn mcc_value(&self) -> u64 {
        self.components.len() as u64
    }

    /// Edges in the transitive closure (the MEC objective).
    pub fn mec_value(&self) -> u64 {
        self.components
            .iter()
            .map(|c| {
                let s = c.len() as u64;
                s * (s - 1) / 2
            })
            .sum()
    }

    /// True iff every component is colorful in `g`.
    pub fn is_colorful(&self, g: &ColoredGraph) -> bool {
        is_colorful_partition(g, self.deleted_edges.iter().copied())
            .expect("edge ids validated at construction")
    }
}

/// Which of the two objectives a result is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    /// Minimum Colorful Components: minimize the component count.
    Mcc,
    /// Maximum Edges in transitive Closure: maximize the closure size.
    Mec,
}

impl Problem {
    pub fn objective(&self, p: &Partition) -> u64 {
        match self {
            Problem::Mcc => p.mcc_value(),
            Problem::Mec => p.mec_value(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Problem::Mcc => "mcc",
            Problem::Mec => "mec",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A solver's answer: objective, witness and how it was obtained.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub objective_value: u64,
    pub partition: Partition,
    pub algorithm_tag: String,
    pub certificate_checked: bool,
}

impl SolveResult {
    /// Wraps a witness partition, re-validating feasibility and recomputing
    /// the objective so the stored value can never drift from the witness.
    pub fn checked(
        g: &ColoredGraph,
        problem: Problem,
        partition: Partition,
        tag: impl Into<String>,
    ) -> Result<Self> {
        if !partition.is_colorful(g) {
            return Err(Error::invalid(format!(
                "witness for {} is not a colorful partition",
                problem
            )));
        }
        Ok(SolveResult {
            objective_value: problem.objective(&partition),
            partition,
            algorithm_tag: tag.into(),
            certificate_checked: true,
        })
    }
}

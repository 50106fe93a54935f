//! Instance generators: hardness-gadget constructions and seeded random
//! families.
//!
//! The two gadget constructions build rooted trees of paths hanging off a
//! fresh-colored root, one path per vertex of the source graph, with one
//! shared color per source edge; they translate vertex cover into MCC and
//! independent set into MEC. Both sit at distance one from disjoint paths
//! (removing the root leaves the paths).

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Partition};
use crate::multicut::{multicut_to_mcc, MulticutInstance};

/// A gadget tree of per-vertex paths under a root, with enough metadata to
/// build witness solutions.
#[derive(Debug, Clone)]
pub struct PathGadget {
    pub graph: ColoredGraph,
    /// Edge id of the root-to-head edge of path i.
    pub root_edges: Vec<usize>,
    /// Vertices of path i, head first.
    pub paths: Vec<Vec<usize>>,
}

impl PathGadget {
    /// Partition obtained by cutting the root edges of the selected paths.
    pub fn cut_paths(&self, cut: &[bool]) -> Result<Partition> {
        let deleted: Vec<usize> = self
            .root_edges
            .iter()
            .zip(cut)
            .filter(|(_, &c)| c)
            .map(|(&e, _)| e)
            .collect();
        Partition::from_deleted(&self.graph, deleted)
    }
}

fn lexicographic_incidence(
    n: usize,
    edges: &[(usize, usize)],
) -> (Vec<Vec<usize>>, Vec<(usize, usize)>) {
    let mut sorted: Vec<(usize, usize)> =
        edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    sorted.sort_unstable();
    sorted.dedup();
    // Per vertex, the incident edges by lexicographic order of the pair.
    let mut incidence = vec![Vec::new(); n];
    for (rank, &(u, v)) in sorted.iter().enumerate() {
        incidence[u].push(rank);
        incidence[v].push(rank);
    }
    (incidence, sorted)
}

/// Vertex cover to MCC gadget. Ignores the colors of `g`.
///
/// The output tree has a root with a fresh color and one path per vertex
/// `v_i`: a head colored `c_i` followed by one vertex per incident edge in
/// lexicographic edge order, the two copies of an edge sharing a color.
/// A vertex cover of size `k` corresponds to an MCC solution with `k + 1`
/// colorful components and vice versa.
pub fn vc_to_mcc(g: &ColoredGraph) -> PathGadget {
    let n = g.vertex_count();
    let (incidence, sorted) = lexicographic_incidence(n, g.edges());
    let m = sorted.len();
    // Colors: 0 for the root, 1..=n for the heads, n+1.. for the edges.
    let mut vertices_colors = vec![0usize];
    let mut edges = Vec::new();
    let mut root_edges_at = Vec::new();
    let mut paths = Vec::new();
    for i in 0..n {
        let head = vertices_colors.len();
        vertices_colors.push(1 + i);
        edges.push((0, head));
        root_edges_at.push((0, head));
        let mut path = vec![head];
        let mut prev = head;
        for &rank in &incidence[i] {
            let id = vertices_colors.len();
            vertices_colors.push(1 + n + rank);
            edges.push((prev, id));
            path.push(id);
            prev = id;
        }
        paths.push(path);
    }
    let total = 1 + n + 2 * m;
    debug_assert_eq!(vertices_colors.len(), total);
    let graph = ColoredGraph::new(total, edges, vertices_colors, 1 + n + m)
        .expect("gadget construction preserves invariants");
    let root_edges = root_edges_at
        .into_iter()
        .map(|(r, h)| graph.edge_id(r, h).expect("root edge present"))
        .collect();
    PathGadget {
        graph,
        root_edges,
        paths,
    }
}

/// Closure value of the independent-set gadget solution that keeps `k`
/// paths of `padding` vertices each attached to the root and cuts the
/// other `n - k`.
pub fn is_to_mec_value(n: usize, k: usize, padding: usize) -> u64 {
    let p = padding as u64;
    let kp = k as u64 * p;
    kp * (kp + 1) / 2 + (n as u64 - k as u64) * p * (p - 1) / 2
}

/// Independent set to MEC gadget. Ignores the colors of `g`.
///
/// Like the vertex-cover gadget, but every path is extended with
/// fresh-colored vertices to exactly `padding` vertices (default `n^3`;
/// the reverse direction of the correspondence is only established at that
/// padding, the forward identity holds for any). An independent set of
/// size `k` yields a feasible solution of value [`is_to_mec_value`].
pub fn is_to_mec(g: &ColoredGraph, padding: Option<usize>) -> Result<PathGadget> {
    let n = g.vertex_count();
    let (incidence, sorted) = lexicographic_incidence(n, g.edges());
    let m = sorted.len();
    let p = padding.unwrap_or(n * n * n);
    let max_deg = incidence.iter().map(|inc| inc.len()).max().unwrap_or(0);
    if p < 1 + max_deg {
        return Err(Error::invalid(format!(
            "padding {} cannot hold a head plus {} edge vertices",
            p, max_deg
        )));
    }
    let mut vertices_colors = vec![0usize];
    let mut edges = Vec::new();
    let mut root_edges_at = Vec::new();
    let mut paths = Vec::new();
    let mut next_fresh = 1 + n + m;
    for i in 0..n {
        let head = vertices_colors.len();
        vertices_colors.push(1 + i);
        edges.push((0, head));
        root_edges_at.push((0, head));
        let mut path = vec![head];
        let mut prev = head;
        for &rank in &incidence[i] {
            let id = vertices_colors.len();
            vertices_colors.push(1 + n + rank);
            edges.push((prev, id));
            path.push(id);
            prev = id;
        }
        while path.len() < p {
            let id = vertices_colors.len();
            vertices_colors.push(next_fresh);
            next_fresh += 1;
            edges.push((prev, id));
            path.push(id);
            prev = id;
        }
        paths.push(path);
    }
    let total = 1 + n * p;
    debug_assert_eq!(vertices_colors.len(), total);
    let graph = ColoredGraph::new(total, edges, vertices_colors, next_fresh)
        .expect("gadget construction preserves invariants");
    let root_edges = root_edges_at
        .into_iter()
        .map(|(r, h)| graph.edge_id(r, h).expect("root edge present"))
        .collect();
    Ok(PathGadget {
        graph,
        root_edges,
        paths,
    })
}

/// Families of generated instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    RandomPath,
    RandomTree,
    RandomGraph,
    RandomMulticut,
    VcToMcc,
    IsToMec,
    MctToMcc,
}

/// Deterministic description of a generated instance.
#[derive(Debug, Clone)]
pub struct GeneratorSpec {
    pub kind: GenKind,
    pub seed: u64,
    pub n: usize,
    /// Edge count for graph families and gadget base graphs.
    pub m: usize,
    pub q: usize,
    /// Terminal-pair count for multicut families.
    pub requests: usize,
    /// Path length override for the independent-set gadget.
    pub padding: Option<usize>,
}

/// Output of [`gen_random`].
#[derive(Debug, Clone)]
pub enum Generated {
    Graph(ColoredGraph),
    Multicut(MulticutInstance),
}

impl Generated {
    pub fn into_graph(self) -> Result<ColoredGraph> {
        match self {
            Generated::Graph(g) => Ok(g),
            Generated::Multicut(_) => Err(Error::invalid("expected a colored graph instance")),
        }
    }

    pub fn into_multicut(self) -> Result<MulticutInstance> {
        match self {
            Generated::Multicut(m) => Ok(m),
            Generated::Graph(_) => Err(Error::invalid("expected a multicut instance")),
        }
    }
}

/// Seeded deterministic instance generator. Graph outputs are already
/// normalized: path and tree families recolor against the parent, the graph
/// family only samples bichromatic pairs.
pub fn gen_random(spec: &GeneratorSpec) -> Result<Generated> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.kind {
        GenKind::RandomPath => Ok(Generated::Graph(random_path(spec.n, spec.q, &mut rng)?)),
        GenKind::RandomTree => Ok(Generated::Graph(random_tree(spec.n, spec.q, &mut rng)?)),
        GenKind::RandomGraph => Ok(Generated::Graph(random_graph(
            spec.n, spec.m, spec.q, &mut rng,
        )?)),
        GenKind::RandomMulticut => Ok(Generated::Multicut(random_multicut(
            spec.n,
            spec.requests,
            &mut rng,
        )?)),
        GenKind::VcToMcc => {
            let base = random_plain_graph(spec.n, spec.m, &mut rng)?;
            Ok(Generated::Graph(vc_to_mcc(&base).graph))
        }
        GenKind::IsToMec => {
            let base = random_plain_graph(spec.n, spec.m, &mut rng)?;
            Ok(Generated::Graph(is_to_mec(&base, spec.padding)?.graph))
        }
        GenKind::MctToMcc => {
            let m = random_multicut(spec.n, spec.requests, &mut rng)?;
            Ok(Generated::Graph(multicut_to_mcc(&m).graph))
        }
    }
}

fn colored_chain_colors(
    n: usize,
    q: usize,
    parent: &[usize],
    rng: &mut ChaCha8Rng,
) -> Result<Vec<usize>> {
    if q == 0 || (n >= 2 && q < 2) {
        return Err(Error::invalid(
            "connected families with monochromatic-free edges need at least two colors",
        ));
    }
    let mut colors = Vec::with_capacity(n);
    for v in 0..n {
        if v == 0 {
            colors.push(rng.gen_range(0..q));
            continue;
        }
        // Uniform over the colors differing from the parent.
        loop {
            let c = rng.gen_range(0..q);
            if c != colors[parent[v]] {
                colors.push(c);
                break;
            }
        }
    }
    Ok(colors)
}

pub fn random_path(n: usize, q: usize, rng: &mut ChaCha8Rng) -> Result<ColoredGraph> {
    if n == 0 {
        return Err(Error::invalid("path needs at least one vertex"));
    }
    let parent: Vec<usize> = (0..n).map(|v| v.saturating_sub(1)).collect();
    let colors = colored_chain_colors(n, q, &parent, rng)?;
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    ColoredGraph::new(n, edges, colors, q)
}

pub fn random_tree(n: usize, q: usize, rng: &mut ChaCha8Rng) -> Result<ColoredGraph> {
    if n == 0 {
        return Err(Error::invalid("tree needs at least one vertex"));
    }
    let mut parent = vec![0usize; n];
    for v in 1..n {
        parent[v] = rng.gen_range(0..v);
    }
    let colors = colored_chain_colors(n, q, &parent, rng)?;
    let edges: Vec<_> = (1..n).map(|v| (parent[v], v)).collect();
    ColoredGraph::new(n, edges, colors, q)
}

pub fn random_graph(n: usize, m: usize, q: usize, rng: &mut ChaCha8Rng) -> Result<ColoredGraph> {
    if q == 0 {
        return Err(Error::invalid("need at least one color"));
    }
    let colors: Vec<usize> = (0..n).map(|_| rng.gen_range(0..q)).collect();
    let mut candidates = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if colors[u] != colors[v] {
                candidates.push((u, v));
            }
        }
    }
    if candidates.len() < m {
        return Err(Error::invalid(format!(
            "only {} bichromatic pairs available, {} edges requested",
            candidates.len(),
            m
        )));
    }
    candidates.shuffle(rng);
    candidates.truncate(m);
    ColoredGraph::new(n, candidates, colors, q)
}

pub fn random_multicut(
    n: usize,
    requests: usize,
    rng: &mut ChaCha8Rng,
) -> Result<MulticutInstance> {
    if n == 0 {
        return Err(Error::invalid("tree needs at least one vertex"));
    }
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            pairs.push((x, y));
        }
    }
    if pairs.len() < requests {
        return Err(Error::invalid(format!(
            "only {} vertex pairs available, {} requests requested",
            pairs.len(),
            requests
        )));
    }
    pairs.shuffle(rng);
    pairs.truncate(requests);
    MulticutInstance::new(n, edges, pairs)
}

/// Plain simple graph (all vertices one color); the gadget constructions
/// ignore colors anyway.
pub fn random_plain_graph(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<ColoredGraph> {
    let mut candidates = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            candidates.push((u, v));
        }
    }
    if candidates.len() < m {
        return Err(Error::invalid(format!(
            "only {} pairs available, {} edges requested",
            candidates.len(),
            m
        )));
    }
    candidates.shuffle(rng);
    candidates.truncate(m);
    ColoredGraph::new(n, candidates, vec![0; n], 1)
}

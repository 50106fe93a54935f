//! Exhaustive exact solvers for desk-scale instances.
//!
//! The primary oracle enumerates deleted-edge subsets with a rollback
//! union-find, pruning any branch that would merge two vertices of the same
//! color. A second, independent route enumerates vertex partitions and is
//! used to cross-check the first. Ties between witnesses are broken by the
//! lexicographically smallest deleted-edge id sequence, so results do not
//! depend on enumeration or reduction order.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Partition, Problem, SolveResult};
use crate::multicut::{CutSolution, MulticutInstance};

/// Size limits for the exhaustive solvers.
#[derive(Debug, Clone, Copy)]
pub struct OracleLimits {
    pub max_edges_for_subset_enum: usize,
    pub max_vertices_for_partition_enum: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_edges_for_subset_enum: 22,
            max_vertices_for_partition_enum: 10,
        }
    }
}

/// Minimum number of colorful components over all feasible edge removals.
pub fn oracle_mcc(g: &ColoredGraph) -> Result<SolveResult> {
    oracle_mcc_with(g, &OracleLimits::default())
}

/// Maximum transitive-closure size over all feasible edge removals.
pub fn oracle_mec(g: &ColoredGraph) -> Result<SolveResult> {
    oracle_mec_with(g, &OracleLimits::default())
}

pub fn oracle_mcc_with(g: &ColoredGraph, limits: &OracleLimits) -> Result<SolveResult> {
    let best = enumerate_subsets(g, limits, Problem::Mcc)?;
    let partition = Partition::from_deleted(g, best.deleted)?;
    SolveResult::checked(g, Problem::Mcc, partition, "mcc/oracle")
}

pub fn oracle_mec_with(g: &ColoredGraph, limits: &OracleLimits) -> Result<SolveResult> {
    let best = enumerate_subsets(g, limits, Problem::Mec)?;
    let partition = Partition::from_deleted(g, best.deleted)?;
    SolveResult::checked(g, Problem::Mec, partition, "mec/oracle")
}

/// A candidate during enumeration. `score` is set up so that larger is
/// always better; witnesses tie-break by smallest deleted id sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Candidate {
    score: i64,
    deleted: Vec<usize>,
}

impl Candidate {
    fn better_than(&self, other: &Option<Candidate>) -> bool {
        match other {
            None => true,
            Some(o) => self.score > o.score || (self.score == o.score && self.deleted < o.deleted),
        }
    }
}

/// Rollback union-find tracking component count, closure size and per-root
/// color sets (as bitmasks over the colors actually present).
struct CutState {
    parent: Vec<usize>,
    size: Vec<u64>,
    colors: Vec<u128>,
    comp_count: i64,
    mec_sum: i64,
    undo: Vec<(usize, usize)>,
}

impl CutState {
    fn new(g: &ColoredGraph, color_slot: &[usize]) -> Self {
        let n = g.vertex_count();
        CutState {
            parent: (0..n).collect(),
            size: vec![1; n],
            colors: (0..n).map(|v| 1u128 << color_slot[v]).collect(),
            comp_count: n as i64,
            mec_sum: 0,
            undo: Vec::new(),
        }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    /// Tries to merge the components of `u` and `v`. Returns false (and does
    /// nothing) when the merged component would repeat a color. A no-op
    /// returning true when already joined.
    fn union_colorful(&mut self, u: usize, v: usize) -> bool {
        let (mut ru, mut rv) = (self.find(u), self.find(v));
        if ru == rv {
            self.undo.push((usize::MAX, usize::MAX));
            return true;
        }
        if self.colors[ru] & self.colors[rv] != 0 {
            return false;
        }
        if self.size[ru] < self.size[rv] {
            std::mem::swap(&mut ru, &mut rv);
        }
        self.parent[rv] = ru;
        self.mec_sum += (self.size[ru] * self.size[rv]) as i64;
        self.size[ru] += self.size[rv];
        self.colors[ru] |= self.colors[rv];
        self.comp_count -= 1;
        self.undo.push((rv, ru));
        true
    }

    fn rollback(&mut self) {
        let (child, root) = self.undo.pop().expect("rollback without union");
        if child == usize::MAX {
            return;
        }
        self.parent[child] = child;
        self.size[root] -= self.size[child];
        self.colors[root] ^= self.colors[child];
        self.mec_sum -= (self.size[root] * self.size[child]) as i64;
        self.comp_count += 1;
    }

    fn score(&self, problem: Problem) -> i64 {
        match problem {
            Problem::Mcc => -self.comp_count,
            Problem::Mec => self.mec_sum,
        }
    }
}

fn color_slots(g: &ColoredGraph) -> Result<Vec<usize>> {
    // Colors are remapped to dense slots so the per-component sets fit a
    // u128. Only colors on edge endpoints can ever collide, and with at
    // most 22 edges there are at most 44 of those; isolated vertices all
    // share one spare slot since they never merge with anything.
    let mut slot_of_color = vec![usize::MAX; g.color_count()];
    let mut next = 1usize;
    let mut slots = vec![0usize; g.vertex_count()];
    for &(u, v) in g.edges() {
        for w in [u, v] {
            let c = g.color(w);
            if slot_of_color[c] == usize::MAX {
                slot_of_color[c] = next;
                next += 1;
            }
            slots[w] = slot_of_color[c];
        }
    }
    if next > 128 {
        return Err(Error::capacity(
            "too many distinct colors for subset enumeration",
        ));
    }
    Ok(slots)
}

fn enumerate_subsets(
    g: &ColoredGraph,
    limits: &OracleLimits,
    problem: Problem,
) -> Result<Candidate> {
    let m = g.edge_count();
    if m > limits.max_edges_for_subset_enum {
        return Err(Error::capacity(format!(
            "instance has {} edges, subset enumeration limit is {}",
            m, limits.max_edges_for_subset_enum
        )));
    }
    let slots = color_slots(g)?;

    // Split the first few edge decisions into independent prefixes and search
    // them in parallel; the deterministic tie-break makes the reduction
    // order-independent.
    let split = if m >= 12 { 6 } else { 0 };
    let prefixes: Vec<u32> = (0..(1u32 << split)).collect();
    let best = prefixes
        .par_iter()
        .map(|&prefix| {
            let mut state = CutState::new(g, &slots);
            let mut deleted = Vec::new();
            let mut feasible = true;
            let mut undone = 0usize;
            for i in 0..split {
                if prefix >> i & 1 == 1 {
                    deleted.push(i);
                } else {
                    let (u, v) = g.edge(i);
                    if state.union_colorful(u, v) {
                        undone += 1;
                    } else {
                        feasible = false;
                        break;
                    }
                }
            }
            let mut best = None;
            if feasible {
                search(g, &mut state, split, &mut deleted, problem, &mut best);
            }
            for _ in 0..undone {
                state.rollback();
            }
            best
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (None, b) => b,
                (a, None) => a,
                (Some(a), Some(b)) => {
                    if b.better_than(&Some(a.clone())) {
                        Some(b)
                    } else {
                        Some(a)
                    }
                }
            },
        );
    Ok(best.expect("deleting every edge is always feasible"))
}

fn search(
    g: &ColoredGraph,
    state: &mut CutState,
    next_edge: usize,
    deleted: &mut Vec<usize>,
    problem: Problem,
    best: &mut Option<Candidate>,
) {
    if next_edge == g.edge_count() {
        let cand = Candidate {
            score: state.score(problem),
            deleted: deleted.clone(),
        };
        if cand.better_than(best) {
            *best = Some(cand);
        }
        return;
    }
    let (u, v) = g.edge(next_edge);
    // Keep the edge first: kept sets come out with lexicographically
    // smaller deleted sequences, which matches the tie-break.
    if state.union_colorful(u, v) {
        search(g, state, next_edge + 1, deleted, problem, best);
        state.rollback();
    }
    deleted.push(next_edge);
    search(g, state, next_edge + 1, deleted, problem, best);
    deleted.pop();
}

/// Independent oracle route: enumerate partitions of the vertex set into
/// colorful blocks, keep those whose blocks are connected, and report the
/// best MCC and MEC objectives. Used to cross-check the subset oracle.
pub fn enumerate_partitions_opt(g: &ColoredGraph, limits: &OracleLimits) -> Result<(u64, u64)> {
    let n = g.vertex_count();
    if n > limits.max_vertices_for_partition_enum {
        return Err(Error::capacity(format!(
            "instance has {} vertices, partition enumeration limit is {}",
            n, limits.max_vertices_for_partition_enum
        )));
    }
    if n == 0 {
        return Ok((0, 0));
    }
    let mut assign = vec![0usize; n];
    let mut best_mcc = u64::MAX;
    let mut best_mec = 0u64;
    assign_vertex(g, &mut assign, 1, 1, &mut best_mcc, &mut best_mec);
    Ok((best_mcc, best_mec))
}

fn assign_vertex(
    g: &ColoredGraph,
    assign: &mut Vec<usize>,
    v: usize,
    blocks: usize,
    best_mcc: &mut u64,
    best_mec: &mut u64,
) {
    let n = g.vertex_count();
    if v == n {
        if let Some((mcc, mec)) = evaluate_partition(g, assign, blocks) {
            *best_mcc = (*best_mcc).min(mcc);
            *best_mec = (*best_mec).max(mec);
        }
        return;
    }
    for b in 0..=blocks.min(n - 1) {
        // Color clash inside a block can be pruned immediately.
        let clash = (0..v).any(|u| assign[u] == b && g.color(u) == g.color(v));
        if clash {
            continue;
        }
        assign[v] = b;
        let new_blocks = blocks.max(b + 1);
        assign_vertex(g, assign, v + 1, new_blocks, best_mcc, best_mec);
    }
}

fn evaluate_partition(g: &ColoredGraph, assign: &[usize], blocks: usize) -> Option<(u64, u64)> {
    let n = g.vertex_count();
    // Every block must induce a connected subgraph.
    let mut sizes = vec![0u64; blocks];
    for &b in assign {
        sizes[b] += 1;
    }
    for b in 0..blocks {
        let members: Vec<usize> = (0..n).filter(|&v| assign[v] == b).collect();
        let mut seen = vec![false; n];
        let mut stack = vec![members[0]];
        seen[members[0]] = true;
        let mut reached = 1u64;
        while let Some(u) = stack.pop() {
            for &(w, _) in g.neighbors(u) {
                if assign[w] == b && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        if reached != sizes[b] {
            return None;
        }
    }
    let mec = sizes.iter().map(|&s| s * (s - 1) / 2).sum();
    Some((blocks as u64, mec))
}

/// Brute-force minimum multicut by trying all subsets of tree edges.
/// Reference implementation for validating the branching solver and the
/// reduction rules.
pub fn oracle_multicut(m: &MulticutInstance, limits: &OracleLimits) -> Result<CutSolution> {
    let ne = m.tree().edge_count();
    if ne > limits.max_edges_for_subset_enum {
        return Err(Error::capacity(format!(
            "instance has {} tree edges, subset enumeration limit is {}",
            ne, limits.max_edges_for_subset_enum
        )));
    }
    let path_masks: Vec<u64> = m
        .requests()
        .iter()
        .map(|&(x, y)| {
            m.path_edges(x, y)
                .into_iter()
                .fold(0u64, |acc, e| acc | 1 << e)
        })
        .collect();
    let mut best: Option<(u32, Vec<usize>)> = None;
    for mask in 0u64..(1 << ne) {
        if path_masks.iter().any(|&p| mask & p == 0) {
            continue;
        }
        let count = mask.count_ones();
        if let Some((bc, _)) = &best {
            if count > *bc {
                continue;
            }
        }
        let edges: Vec<usize> = (0..ne).filter(|&e| mask >> e & 1 == 1).collect();
        let better = match &best {
            None => true,
            Some((bc, bv)) => count < *bc || (count == *bc && edges < *bv),
        };
        if better {
            best = Some((count, edges));
        }
    }
    let (_, edges) = best.expect("cutting every edge separates all requests");
    CutSolution::new(m, edges)
}

/// Brute-force minimum vertex cover size, colors ignored.
pub fn oracle_min_vertex_cover(g: &ColoredGraph) -> Result<usize> {
    let n = g.vertex_count();
    if n > 20 {
        return Err(Error::capacity(
            "vertex cover brute force is limited to 20 vertices",
        ));
    }
    let mut best = n;
    'outer: for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        for &(u, v) in g.edges() {
            if mask >> u & 1 == 0 && mask >> v & 1 == 0 {
                continue 'outer;
            }
        }
        best = size;
    }
    Ok(best)
}

/// Brute-force maximum independent set size, colors ignored.
pub fn oracle_max_independent_set(g: &ColoredGraph) -> Result<usize> {
    Ok(g.vertex_count() - oracle_min_vertex_cover(g)?)
}

/// Brute-force maximum matching size.
pub fn oracle_max_matching(g: &ColoredGraph) -> Result<usize> {
    if g.vertex_count() > 64 {
        return Err(Error::capacity(
            "matching brute force is limited to 64 vertices",
        ));
    }
    fn go(edges: &[(usize, usize)], i: usize, used: u64) -> usize {
        if i == edges.len() {
            return 0;
        }
        let (u, v) = edges[i];
        let mut best = go(edges, i + 1, used);
        if used >> u & 1 == 0 && used >> v & 1 == 0 {
            best = best.max(1 + go(edges, i + 1, used | 1 << u | 1 << v));
        }
        best
    }
    Ok(go(g.edges(), 0, 0))
}

//! `O(n^3)` dynamic programs for MCC and MEC on paths.
//!
//! With vertices ordered `v_1 .. v_n` along the path, every solution splits
//! the path into contiguous colorful segments. `M[j]` ranges over the
//! prefix `v_1 .. v_j`; the last segment `v_{t+1} .. v_j` contributes `1`
//! component for MCC and `(j - t)(j - t - 1) / 2` closure edges for MEC
//! (the segment has `j - t` vertices). Segment colorfulness is tested with
//! an incremental color window, so each DP runs in `O(n^2)`.

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Partition, Problem, SolveResult};

/// A connected path with a fixed traversal order.
#[derive(Debug, Clone)]
pub struct PathInstance {
    graph: ColoredGraph,
    /// Position along the path -> vertex id.
    order: Vec<usize>,
}

impl PathInstance {
    /// Validates the path shape and fixes the traversal order, starting from
    /// the endpoint with the smaller id.
    pub fn from_graph(g: &ColoredGraph) -> Result<Self> {
        if !g.is_path() {
            return Err(Error::shape("input is not a connected path"));
        }
        let n = g.vertex_count();
        let mut order = Vec::with_capacity(n);
        if n == 1 {
            order.push(0);
        } else {
            let start = (0..n)
                .find(|&v| g.degree(v) == 1)
                .expect("a path with n >= 2 has endpoints");
            let mut prev = usize::MAX;
            let mut cur = start;
            loop {
                order.push(cur);
                let next = g
                    .neighbors(cur)
                    .iter()
                    .map(|&(w, _)| w)
                    .find(|&w| w != prev);
                match next {
                    Some(w) => {
                        prev = cur;
                        cur = w;
                    }
                    None => break,
                }
            }
            debug_assert_eq!(order.len(), n);
        }
        Ok(PathInstance {
            graph: g.clone(),
            order,
        })
    }

    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    fn color_at(&self, pos: usize) -> usize {
        self.graph.color(self.order[pos])
    }

    /// For each `j`, the smallest `t` such that positions `t .. j` (0-based,
    /// exclusive of `j`) hold pairwise distinct colors. The last segment of
    /// any solution for the prefix of length `j` must start at or after it.
    fn segment_starts(&self) -> Vec<usize> {
        let n = self.len();
        let mut earliest = vec![0usize; n + 1];
        for j in 1..=n {
            let mut seen = std::collections::HashSet::new();
            let mut t = j;
            while t > 0 && seen.insert(self.color_at(t - 1)) {
                t -= 1;
            }
            earliest[j] = t;
        }
        earliest
    }

    fn cut_edges_for_boundaries(&self, boundaries: &[usize]) -> Vec<usize> {
        boundaries
            .iter()
            .map(|&t| {
                self.graph
                    .edge_id(self.order[t - 1], self.order[t])
                    .expect("consecutive path positions are adjacent")
            })
            .collect()
    }
}

/// Minimum colorful components on a path. Base cases `M[0] = 0`, `M[1] = 1`.
pub fn mcc_path(p: &PathInstance) -> Result<SolveResult> {
    let n = p.len();
    let earliest = p.segment_starts();
    let mut table = vec![u64::MAX; n + 1];
    let mut choice = vec![0usize; n + 1];
    table[0] = 0;
    for j in 1..=n {
        for t in earliest[j]..j {
            let value = table[t] + 1;
            if value < table[j] {
                table[j] = value;
                choice[j] = t;
            }
        }
    }
    let partition = reconstruct(p, &choice)?;
    let result = SolveResult::checked(p.graph(), Problem::Mcc, partition, "mcc/path-dp")?;
    debug_assert_eq!(result.objective_value, table[n]);
    Ok(result)
}

/// Maximum transitive closure on a path. Base cases `M[0] = 0`, `M[1] = 0`;
/// a segment of `s` vertices contributes `s(s - 1) / 2`.
pub fn mec_path(p: &PathInstance) -> Result<SolveResult> {
    let n = p.len();
    let earliest = p.segment_starts();
    let mut table = vec![0u64; n + 1];
    let mut choice = vec![0usize; n + 1];
    for j in 1..=n {
        let mut best = None;
        for t in earliest[j]..j {
            let seg = (j - t) as u64;
            let value = table[t] + seg * (seg - 1) / 2;
            if best.map_or(true, |b| value > b) {
                best = Some(value);
                choice[j] = t;
            }
        }
        table[j] = best.expect("the singleton segment is always colorful");
    }
    let partition = reconstruct(p, &choice)?;
    let result = SolveResult::checked(p.graph(), Problem::Mec, partition, "mec/path-dp")?;
    debug_assert_eq!(result.objective_value, table[n]);
    Ok(result)
}

fn reconstruct(p: &PathInstance, choice: &[usize]) -> Result<Partition> {
    let mut boundaries = Vec::new();
    let mut j = p.len();
    while j > 0 {
        let t = choice[j];
        if t > 0 {
            boundaries.push(t);
        }
        j = t;
    }
    Partition::from_deleted(p.graph(), p.cut_edges_for_boundaries(&boundaries))
}

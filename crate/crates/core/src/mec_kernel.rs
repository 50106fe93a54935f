//! Kernelization for the MEC decision problem "is there a solution of value
//! at least k?".
//!
//! On a DFS decomposition of a connected normalized graph, three cheap
//! structures already certify a yes-instance: a long root-leaf path (take
//! alternate edges as a matching), many parents of leaves (one leaf-parent
//! pair each), or one vertex whose leaf children span many colors (a single
//! star component). When none fires, the instance is small except possibly
//! for leaves, and leaf classes with identical (parent, color, back-edge
//! neighborhood) can be truncated to `k` representatives without changing
//! the decision. On trees one representative per (parent, color) suffices
//! and the optimum itself is preserved.

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Partition};

/// DFS of a connected graph: a spanning tree plus back edges, every back
/// edge joining a vertex to one of its tree ancestors.
#[derive(Debug, Clone)]
pub struct DfsDecomposition {
    pub root: usize,
    pub parent: Vec<usize>,
    pub depth: Vec<usize>,
    pub tree_edges: Vec<usize>,
    pub back_edges: Vec<usize>,
    pub children: Vec<Vec<usize>>,
    /// V_A: vertices that are the parent of a DFS-tree leaf, sorted.
    pub leaf_parents: Vec<usize>,
}

impl DfsDecomposition {
    pub fn is_dfs_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty() && v != self.root
    }

    pub fn is_ancestor(&self, anc: usize, mut v: usize) -> bool {
        while self.depth[v] > self.depth[anc] {
            v = self.parent[v];
        }
        v == anc
    }

    /// Vertices with at least one DFS child.
    pub fn internal_vertices(&self) -> Vec<usize> {
        (0..self.children.len())
            .filter(|&v| !self.children[v].is_empty())
            .collect()
    }
}

/// Runs a DFS from vertex 0, visiting neighbors in ascending order, and
/// asserts the back-edge ancestor property on the result.
pub fn dfs_decompose(g: &ColoredGraph) -> Result<DfsDecomposition> {
    if !g.is_connected() {
        return Err(Error::shape("dfs decomposition requires a connected graph"));
    }
    let n = g.vertex_count();
    let root = 0usize;
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut children = vec![Vec::new(); n];
    let mut tree_edge = vec![false; g.edge_count()];
    let mut seen = vec![false; n];
    if n > 0 {
        // Explicit stack mimicking the recursion: (vertex, neighbor index).
        parent[root] = root;
        seen[root] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (u, ref mut idx)) = stack.last_mut() {
            if *idx == g.degree(u) {
                stack.pop();
                continue;
            }
            let (w, id) = g.neighbors(u)[*idx];
            *idx += 1;
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                depth[w] = depth[u] + 1;
                children[u].push(w);
                tree_edge[id] = true;
                stack.push((w, 0));
            }
        }
    }
    let tree_edges: Vec<usize> = (0..g.edge_count()).filter(|&e| tree_edge[e]).collect();
    let back_edges: Vec<usize> = (0..g.edge_count()).filter(|&e| !tree_edge[e]).collect();
    let mut leaf_parents: Vec<usize> = (0..n)
        .filter(|&v| children[v].iter().any(|&c| children[c].is_empty()))
        .collect();
    leaf_parents.sort_unstable();
    let d = DfsDecomposition {
        root,
        parent,
        depth,
        tree_edges,
        back_edges,
        children,
        leaf_parents,
    };
    for &e in &d.back_edges {
        let (u, v) = g.edge(e);
        assert!(
            d.is_ancestor(u, v) || d.is_ancestor(v, u),
            "back edge ({}, {}) does not join a vertex to an ancestor",
            u,
            v
        );
    }
    Ok(d)
}

/// Which cheap certificate produced a yes-witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EasyYesTrigger {
    ZeroBudget,
    LongRootPath,
    ManyLeafParents,
    ManyLeafColors,
}

impl EasyYesTrigger {
    pub fn name(&self) -> &'static str {
        match self {
            EasyYesTrigger::ZeroBudget => "zero-budget",
            EasyYesTrigger::LongRootPath => "long-root-path",
            EasyYesTrigger::ManyLeafParents => "many-leaf-parents",
            EasyYesTrigger::ManyLeafColors => "many-leaf-colors",
        }
    }
}

/// Smallest s with s * s >= 2k.
fn sqrt2k_threshold(k: u64) -> u64 {
    let mut s = (2.0 * k as f64).sqrt().floor() as u64;
    while s * s < 2 * k {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= 2 * k {
        s -= 1;
    }
    s
}

fn keep_only(g: &ColoredGraph, kept_edges: &[usize]) -> Result<Partition> {
    let kept: std::collections::BTreeSet<usize> = kept_edges.iter().copied().collect();
    let deleted = (0..g.edge_count()).filter(|id| !kept.contains(id));
    Partition::from_deleted(g, deleted)
}

/// Checks the three cheap yes-certificates against a decomposition of a
/// normalized connected graph; returns a feasible witness of value >= k
/// when one fires.
pub fn easy_yes(
    g: &ColoredGraph,
    d: &DfsDecomposition,
    k: u64,
) -> Result<Option<(Partition, EasyYesTrigger)>> {
    if k == 0 {
        let all_singletons = Partition::from_deleted(g, 0..g.edge_count())?;
        return Ok(Some((all_singletons, EasyYesTrigger::ZeroBudget)));
    }
    let n = g.vertex_count();

    // A root-leaf path of length >= 2k yields a matching of >= k edges by
    // taking alternate path edges.
    if let Some(deep) = (0..n)
        .filter(|&v| d.is_dfs_leaf(v))
        .max_by_key(|&v| (d.depth[v], std::cmp::Reverse(v)))
    {
        if d.depth[deep] >= 2 * k as usize {
            let mut path = Vec::with_capacity(d.depth[deep] + 1);
            let mut v = deep;
            while v != d.root {
                path.push(v);
                v = d.parent[v];
            }
            path.push(d.root);
            path.reverse();
            let mut kept = Vec::new();
            let mut i = 0;
            while i + 1 < path.len() {
                kept.push(g.edge_id(path[i], path[i + 1]).expect("tree edge"));
                i += 2;
            }
            let witness = keep_only(g, &kept)?;
            debug_assert!(witness.mec_value() >= k);
            return Ok(Some((witness, EasyYesTrigger::LongRootPath)));
        }
    }

    // |V_A| >= k: one leaf-parent pair per anchor is a matching.
    if d.leaf_parents.len() as u64 >= k {
        let mut kept = Vec::new();
        for &v in &d.leaf_parents {
            let leaf = d.children[v]
                .iter()
                .copied()
                .filter(|&c| d.children[c].is_empty())
                .min()
                .expect("anchor has a leaf child");
            kept.push(g.edge_id(v, leaf).expect("tree edge"));
        }
        let witness = keep_only(g, &kept)?;
        debug_assert!(witness.mec_value() >= k);
        return Ok(Some((witness, EasyYesTrigger::ManyLeafParents)));
    }

    // A vertex whose leaf children span >= ceil(sqrt(2k)) colors closes a
    // star component of that many leaves plus the center.
    let threshold = sqrt2k_threshold(k);
    for &v in &d.leaf_parents {
        let mut leaf_of_color: std::collections::BTreeMap<usize, usize> =
            std::collections::BTreeMap::new();
        for &c in &d.children[v] {
            if d.children[c].is_empty() {
                let entry = leaf_of_color.entry(g.color(c)).or_insert(c);
                *entry = (*entry).min(c);
            }
        }
        if leaf_of_color.len() as u64 >= threshold {
            let kept: Vec<usize> = leaf_of_color
                .values()
                .map(|&leaf| g.edge_id(v, leaf).expect("tree edge"))
                .collect();
            let witness = keep_only(g, &kept)?;
            debug_assert!(witness.mec_value() >= k);
            return Ok(Some((witness, EasyYesTrigger::ManyLeafColors)));
        }
    }

    Ok(None)
}

/// One group of same-colored DFS leaves below one anchor, split into
/// subclasses with identical back-edge neighborhoods.
#[derive(Debug, Clone)]
pub struct LeafClass {
    pub anchor: usize,
    pub color: usize,
    pub members: Vec<usize>,
    pub subclasses: Vec<Vec<usize>>,
}

fn leaf_classes(g: &ColoredGraph, d: &DfsDecomposition) -> Vec<LeafClass> {
    let mut classes = Vec::new();
    for &v in &d.leaf_parents {
        let mut by_color: std::collections::BTreeMap<usize, Vec<usize>> =
            std::collections::BTreeMap::new();
        for &c in &d.children[v] {
            if d.children[c].is_empty() {
                by_color.entry(g.color(c)).or_default().push(c);
            }
        }
        for (color, mut members) in by_color {
            members.sort_unstable();
            let mut by_adj: std::collections::BTreeMap<Vec<usize>, Vec<usize>> =
                std::collections::BTreeMap::new();
            for &leaf in &members {
                // Back-edge neighborhood: every neighbor except the parent.
                let adj: Vec<usize> = g
                    .neighbors(leaf)
                    .iter()
                    .map(|&(w, _)| w)
                    .filter(|&w| w != v)
                    .collect();
                by_adj.entry(adj).or_default().push(leaf);
            }
            classes.push(LeafClass {
                anchor: v,
                color,
                members,
                subclasses: by_adj.into_values().collect(),
            });
        }
    }
    classes
}

/// Either a witness certifying "OPT >= k", or an equivalent reduced
/// instance with the same threshold.
#[derive(Debug, Clone)]
pub enum KernelOutcome {
    Yes(Partition),
    Reduced {
        graph: ColoredGraph,
        /// Reduced vertex id -> vertex id of the input graph.
        vertex_to_orig: Vec<usize>,
        k: u64,
    },
}

/// Size accounting emitted next to a kernelization outcome.
#[derive(Debug, Clone, Default)]
pub struct KernelStats {
    pub trigger: Option<EasyYesTrigger>,
    pub internal_vertices: usize,
    pub leaf_parent_count: usize,
    pub class_count: usize,
    pub max_subclasses_per_class: usize,
    pub removed_vertices: usize,
}

#[derive(Debug, Clone)]
pub struct KernelResult {
    pub outcome: KernelOutcome,
    pub stats: KernelStats,
}

fn component_stats(d: &DfsDecomposition, classes: &[LeafClass]) -> KernelStats {
    KernelStats {
        trigger: None,
        internal_vertices: d.internal_vertices().len(),
        leaf_parent_count: d.leaf_parents.len(),
        class_count: classes.len(),
        max_subclasses_per_class: classes
            .iter()
            .map(|c| c.subclasses.len())
            .max()
            .unwrap_or(0),
        removed_vertices: 0,
    }
}

fn assert_counting_bounds(stats: &KernelStats, k: u64) {
    // These hold whenever no easy-yes certificate fired: the DFS tree has
    // depth below 2k and fewer than k leaf parents.
    let k = k as usize;
    assert!(
        stats.internal_vertices <= 2 * k * k,
        "no-trigger instance has {} internal vertices, bound is {}",
        stats.internal_vertices,
        2 * k * k
    );
    if 2 * k + 1 < usize::BITS as usize {
        assert!(
            stats.max_subclasses_per_class <= 1usize << (2 * k + 1),
            "leaf class has {} subclasses, bound is 2^{}",
            stats.max_subclasses_per_class,
            2 * k + 1
        );
    }
}

/// Decision kernel for MEC on a connected normalized graph: every subclass
/// keeps at most its `k` smallest members. Preserves "OPT >= k".
fn kernelize_connected(g: &ColoredGraph, k: u64) -> Result<KernelResult> {
    let d = dfs_decompose(g)?;
    if let Some((witness, trigger)) = easy_yes(g, &d, k)? {
        return Ok(KernelResult {
            outcome: KernelOutcome::Yes(witness),
            stats: KernelStats {
                trigger: Some(trigger),
                ..KernelStats::default()
            },
        });
    }
    let classes = leaf_classes(g, &d);
    let mut stats = component_stats(&d, &classes);
    assert_counting_bounds(&stats, k);
    let mut removed = vec![false; g.vertex_count()];
    for class in &classes {
        for sub in &class.subclasses {
            for &leaf in sub.iter().skip(k as usize) {
                removed[leaf] = true;
            }
        }
    }
    stats.removed_vertices = removed.iter().filter(|&&r| r).count();
    let kept: Vec<usize> = (0..g.vertex_count()).filter(|&v| !removed[v]).collect();
    let sub = g.induced(&kept);
    Ok(KernelResult {
        outcome: KernelOutcome::Reduced {
            graph: sub.graph,
            vertex_to_orig: sub.vertex_to_orig,
            k,
        },
        stats,
    })
}

/// Tree kernel on a connected normalized tree: keep one leaf per
/// (parent, color) pair. Preserves the MEC optimum exactly.
fn kernelize_tree_connected(g: &ColoredGraph, k: u64) -> Result<KernelResult> {
    let d = dfs_decompose(g)?;
    debug_assert!(d.back_edges.is_empty());
    if let Some((witness, trigger)) = easy_yes(g, &d, k)? {
        return Ok(KernelResult {
            outcome: KernelOutcome::Yes(witness),
            stats: KernelStats {
                trigger: Some(trigger),
                ..KernelStats::default()
            },
        });
    }
    // Leaves here are degree-1 vertices regardless of rooting: a leaf can
    // only join a component of size >= 2 together with its unique neighbor,
    // so among same-colored leaves at one vertex at most one is ever used.
    let mut keep_of: std::collections::BTreeMap<(usize, usize), usize> =
        std::collections::BTreeMap::new();
    let mut removed = vec![false; g.vertex_count()];
    for v in 0..g.vertex_count() {
        if g.degree(v) == 1 {
            let host = g.neighbors(v)[0].0;
            let key = (host, g.color(v));
            match keep_of.get(&key) {
                None => {
                    keep_of.insert(key, v);
                }
                Some(_) => {
                    removed[v] = true;
                }
            }
        }
    }
    let classes = leaf_classes(g, &d);
    let mut stats = component_stats(&d, &classes);
    assert_counting_bounds(&stats, k);
    stats.removed_vertices = removed.iter().filter(|&&r| r).count();
    let kept: Vec<usize> = (0..g.vertex_count()).filter(|&v| !removed[v]).collect();
    let sub = g.induced(&kept);
    Ok(KernelResult {
        outcome: KernelOutcome::Reduced {
            graph: sub.graph,
            vertex_to_orig: sub.vertex_to_orig,
            k,
        },
        stats,
    })
}

fn combine_components(
    g: &ColoredGraph,
    k: u64,
    kernelize: impl Fn(&ColoredGraph, u64) -> Result<KernelResult>,
) -> Result<KernelResult> {
    let normalized = g.normalize();
    let subs = normalized.component_subgraphs();
    let mut kept_orig: Vec<usize> = Vec::new();
    let mut combined = KernelStats::default();
    for sub in &subs {
        let res = kernelize(&sub.graph, k)?;
        match res.outcome {
            KernelOutcome::Yes(local) => {
                // A yes-component certifies the whole instance: extend the
                // local witness with singletons everywhere else.
                let mut deleted: Vec<usize> = Vec::new();
                let local_deleted: std::collections::BTreeSet<usize> =
                    local.deleted_edges().iter().copied().collect();
                for id in 0..g.edge_count() {
                    let (u, v) = g.edge(id);
                    if g.color(u) == g.color(v) {
                        deleted.push(id);
                        continue;
                    }
                    let nid = normalized
                        .edge_id(u, v)
                        .expect("bichromatic edges survive normalization");
                    match sub.edge_to_orig.iter().position(|&e| e == nid) {
                        Some(local_id) => {
                            if local_deleted.contains(&local_id) {
                                deleted.push(id);
                            }
                        }
                        None => deleted.push(id),
                    }
                }
                let witness = Partition::from_deleted(g, deleted)?;
                debug_assert!(witness.mec_value() >= k);
                return Ok(KernelResult {
                    outcome: KernelOutcome::Yes(witness),
                    stats: res.stats,
                });
            }
            KernelOutcome::Reduced { vertex_to_orig, .. } => {
                combined.internal_vertices += res.stats.internal_vertices;
                combined.leaf_parent_count += res.stats.leaf_parent_count;
                combined.class_count += res.stats.class_count;
                combined.max_subclasses_per_class = combined
                    .max_subclasses_per_class
                    .max(res.stats.max_subclasses_per_class);
                combined.removed_vertices += res.stats.removed_vertices;
                for local in vertex_to_orig {
                    kept_orig.push(sub.vertex_to_orig[local]);
                }
            }
        }
    }
    kept_orig.sort_unstable();
    // The reduced instance is an induced subgraph of the normalized input;
    // all components answered "reduced", so the threshold decision carries
    // over (components below the threshold keep their optimum exactly).
    let reduced = normalized.induced(&kept_orig);
    Ok(KernelResult {
        outcome: KernelOutcome::Reduced {
            graph: reduced.graph,
            vertex_to_orig: reduced.vertex_to_orig,
            k,
        },
        stats: combined,
    })
}

/// Decision kernel for MEC on arbitrary graphs. Normalizes, kernelizes each
/// connected component with the same threshold and combines: any
/// yes-component answers yes for the whole instance, otherwise the reduced
/// components are joined.
pub fn kernelize_mec(g: &ColoredGraph, k: u64) -> Result<KernelResult> {
    combine_components(g, k, kernelize_connected)
}

/// Optimum-preserving kernel for MEC on forests (shape error on cycles).
pub fn kernelize_mec_tree(g: &ColoredGraph, k: u64) -> Result<KernelResult> {
    if !g.is_forest() {
        return Err(Error::shape("tree kernel requires an acyclic input"));
    }
    combine_components(g, k, kernelize_tree_connected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{oracle_mec, oracle_mec_with, OracleLimits};

    fn graph(n: usize, edges: &[(usize, usize)], colors: &[usize], q: usize) -> ColoredGraph {
        ColoredGraph::new(n, edges.iter().copied(), colors.to_vec(), q).unwrap()
    }

    #[test]
    fn dfs_on_tree_has_no_back_edges() {
        let g = graph(5, &[(0, 1), (0, 2), (1, 3), (1, 4)], &[0, 1, 2, 3, 4], 5);
        let d = dfs_decompose(&g).unwrap();
        assert!(d.back_edges.is_empty());
        assert_eq!(d.tree_edges.len(), 4);
    }

    #[test]
    fn dfs_on_triangle() {
        let g = graph(3, &[(0, 1), (1, 2), (0, 2)], &[0, 1, 2], 3);
        let d = dfs_decompose(&g).unwrap();
        assert_eq!(d.tree_edges.len(), 2);
        assert_eq!(d.back_edges.len(), 1);
        let (u, v) = g.edge(d.back_edges[0]);
        assert!(d.is_ancestor(u, v) || d.is_ancestor(v, u));
    }

    #[test]
    fn dfs_rejects_disconnected() {
        let g = graph(4, &[(0, 1), (2, 3)], &[0, 1, 0, 1], 2);
        assert!(dfs_decompose(&g).is_err());
    }

    #[test]
    fn easy_yes_zero_budget() {
        let g = graph(3, &[(0, 1), (1, 2)], &[0, 1, 0], 2);
        let d = dfs_decompose(&g).unwrap();
        let (witness, trigger) = easy_yes(&g, &d, 0).unwrap().unwrap();
        assert_eq!(trigger, EasyYesTrigger::ZeroBudget);
        assert_eq!(witness.mec_value(), 0);
    }

    #[test]
    fn easy_yes_long_path() {
        // Rainbow path on 2k + 1 vertices triggers for budget k.
        let k = 3u64;
        let n = 2 * k as usize + 1;
        let colors: Vec<usize> = (0..n).collect();
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let g = graph(n, &edges, &colors, n);
        let d = dfs_decompose(&g).unwrap();
        let (witness, trigger) = easy_yes(&g, &d, k).unwrap().unwrap();
        assert_eq!(trigger, EasyYesTrigger::LongRootPath);
        assert!(witness.mec_value() >= k);
        assert!(witness.is_colorful(&g));
    }

    #[test]
    fn easy_yes_spider_anchors() {
        // Spider with k legs of length 2: k leaf parents.
        let k = 4usize;
        let mut edges = Vec::new();
        for leg in 0..k {
            let mid = 1 + 2 * leg;
            let tip = 2 + 2 * leg;
            edges.push((0, mid));
            edges.push((mid, tip));
        }
        let n = 1 + 2 * k;
        let colors: Vec<usize> = (0..n).collect();
        let g = graph(n, &edges, &colors, n);
        let d = dfs_decompose(&g).unwrap();
        let (witness, _) = easy_yes(&g, &d, k as u64).unwrap().unwrap();
        assert!(witness.mec_value() >= k as u64);
    }

    #[test]
    fn kernel_truncates_star_leaves() {
        // Star with 7 same-colored leaves, k = 2: one subclass truncated to
        // 2 leaves; the optimum (1) is preserved.
        let mut edges = Vec::new();
        let mut colors = vec![0usize];
        for leaf in 1..=7 {
            edges.push((0, leaf));
            colors.push(1);
        }
        let g = graph(8, &edges, &colors, 2);
        let res = kernelize_mec(&g, 2).unwrap();
        match res.outcome {
            KernelOutcome::Reduced { graph, .. } => {
                assert_eq!(graph.vertex_count(), 3);
                assert_eq!(
                    oracle_mec(&graph).unwrap().objective_value,
                    oracle_mec(&g).unwrap().objective_value
                );
            }
            KernelOutcome::Yes(_) => panic!("star with budget 2 should reduce"),
        }
    }

    #[test]
    fn tree_kernel_keeps_one_leaf_per_parent_color() {
        // Star with leaves b, b, b, c: reduced to leaves {b, c}; the optimum
        // 3 (component of center, b, c) is preserved.
        let g = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)], &[0, 1, 1, 1, 2], 3);
        let res = kernelize_mec_tree(&g, 10).unwrap();
        match res.outcome {
            KernelOutcome::Reduced { graph, .. } => {
                assert_eq!(graph.vertex_count(), 3);
                assert_eq!(oracle_mec(&graph).unwrap().objective_value, 3);
                assert_eq!(oracle_mec(&g).unwrap().objective_value, 3);
            }
            KernelOutcome::Yes(_) => panic!("budget 10 cannot trigger on 5 vertices"),
        }
    }

    #[test]
    fn tree_kernel_is_idempotent_on_reduced_trees() {
        let g = graph(3, &[(0, 1), (0, 2)], &[0, 1, 2], 3);
        let res = kernelize_mec_tree(&g, 50).unwrap();
        match res.outcome {
            KernelOutcome::Reduced { graph, .. } => assert_eq!(graph, g),
            KernelOutcome::Yes(_) => panic!(),
        }
    }

    #[test]
    fn decision_preserved_on_small_graphs() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let limits = OracleLimits::default();
        for _ in 0..40 {
            let n = rng.gen_range(2..=9);
            let q = rng.gen_range(2..=4);
            let colors: Vec<usize> = (0..n).map(|_| rng.gen_range(0..q)).collect();
            let mut all_edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if colors[u] != colors[v] {
                        all_edges.push((u, v));
                    }
                }
            }
            all_edges.shuffle(&mut rng);
            let m = rng.gen_range(0..=all_edges.len().min(14));
            let g = graph(n, &all_edges[..m], &colors, q);
            let opt = oracle_mec_with(&g, &limits).unwrap().objective_value;
            for k in 0..=4u64 {
                let res = kernelize_mec(&g, k).unwrap();
                match res.outcome {
                    KernelOutcome::Yes(w) => {
                        assert!(w.is_colorful(&g));
                        assert!(w.mec_value() >= k);
                        assert!(opt >= k);
                    }
                    KernelOutcome::Reduced { graph, .. } => {
                        let opt_red = oracle_mec_with(&graph, &limits).unwrap().objective_value;
                        assert_eq!(opt >= k, opt_red >= k, "n={} k={}", n, k);
                    }
                }
            }
        }
    }
}

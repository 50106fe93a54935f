//! MCC on trees via multicut, both directions.
//!
//! MCC on a tree is equivalent to multicut on the same tree with one
//! terminal pair per same-colored vertex pair: a solution with `k` cut
//! edges is a solution with `k + 1` colorful components and vice versa.
//! This module holds the two reductions, a budgeted branching solver and
//! a primal-dual 2-approximation for multicut on trees, sound reduction
//! rules, and the composed MCC tree solver.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Partition, Problem, SolveResult};

/// A tree together with terminal pairs to disconnect.
#[derive(Debug, Clone)]
pub struct MulticutInstance {
    tree: ColoredGraph,
    requests: Vec<(usize, usize)>,
    parent: Vec<usize>,
    parent_edge: Vec<usize>,
    depth: Vec<usize>,
}

impl MulticutInstance {
    /// Builds an instance from tree edges and terminal pairs. The tree must
    /// be connected and acyclic; requests are canonicalized, deduplicated
    /// and must join two distinct vertices.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        requests: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let tree = ColoredGraph::new(n, edges, vec![0; n], 1)?;
        if !tree.is_tree() {
            return Err(Error::shape(
                "multicut instance requires a connected acyclic tree",
            ));
        }
        let mut reqs: Vec<(usize, usize)> = Vec::new();
        for (x, y) in requests {
            if x == y {
                return Err(Error::invalid(format!(
                    "request ({}, {}) joins a vertex to itself",
                    x, y
                )));
            }
            if x >= n || y >= n {
                return Err(Error::invalid(format!(
                    "request ({}, {}) out of range",
                    x, y
                )));
            }
            reqs.push((x.min(y), x.max(y)));
        }
        reqs.sort_unstable();
        reqs.dedup();
        Ok(Self::with_tree(tree, reqs))
    }

    fn with_tree(tree: ColoredGraph, requests: Vec<(usize, usize)>) -> Self {
        let n = tree.vertex_count();
        let mut parent = vec![usize::MAX; n];
        let mut parent_edge = vec![usize::MAX; n];
        let mut depth = vec![0; n];
        if n > 0 {
            let mut stack = vec![0usize];
            let mut seen = vec![false; n];
            seen[0] = true;
            parent[0] = 0;
            while let Some(u) = stack.pop() {
                for &(w, id) in tree.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = u;
                        parent_edge[w] = id;
                        depth[w] = depth[u] + 1;
                        stack.push(w);
                    }
                }
            }
        }
        MulticutInstance {
            tree,
            requests,
            parent,
            parent_edge,
            depth,
        }
    }

    pub fn tree(&self) -> &ColoredGraph {
        &self.tree
    }

    pub fn requests(&self) -> &[(usize, usize)] {
        &self.requests
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Lowest common ancestor with respect to the root 0.
    pub fn lca(&self, mut x: usize, mut y: usize) -> usize {
        while self.depth[x] > self.depth[y] {
            x = self.parent[x];
        }
        while self.depth[y] > self.depth[x] {
            y = self.parent[y];
        }
        while x != y {
            x = self.parent[x];
            y = self.parent[y];
        }
        x
    }

    /// Edge ids on the tree path between `x` and `y`.
    pub fn path_edges(&self, x: usize, y: usize) -> Vec<usize> {
        let w = self.lca(x, y);
        let mut out = Vec::new();
        let mut u = x;
        while u != w {
            out.push(self.parent_edge[u]);
            u = self.parent[u];
        }
        let mut v = y;
        while v != w {
            out.push(self.parent_edge[v]);
            v = self.parent[v];
        }
        out
    }

    /// Topmost edge of the `x`-side path arm below `lca(x, y)`: the edge of
    /// the path incident to the lca. `None` when `x` is the lca itself.
    fn top_arm_edge(&self, x: usize, lca: usize) -> Option<usize> {
        if x == lca {
            return None;
        }
        let mut u = x;
        while self.parent[u] != lca || self.depth[u] != self.depth[lca] + 1 {
            u = self.parent[u];
        }
        Some(self.parent_edge[u])
    }
}

/// A feasible multicut: every request path contains a cut edge.
#[derive(Debug, Clone)]
pub struct CutSolution {
    pub cut_edges: BTreeSet<usize>,
    pub value: usize,
}

impl CutSolution {
    /// Validates feasibility against the instance.
    pub fn new(m: &MulticutInstance, cut_edges: impl IntoIterator<Item = usize>) -> Result<Self> {
        let cut: BTreeSet<usize> = cut_edges.into_iter().collect();
        for &id in &cut {
            if id >= m.tree.edge_count() {
                return Err(Error::invalid(format!("unknown tree edge id {}", id)));
            }
        }
        for &(x, y) in &m.requests {
            if !m.path_edges(x, y).iter().any(|e| cut.contains(e)) {
                return Err(Error::invalid(format!(
                    "cut does not separate request ({}, {})",
                    x, y
                )));
            }
        }
        let value = cut.len();
        Ok(CutSolution {
            cut_edges: cut,
            value,
        })
    }
}

/// MCC instance -> multicut instance: same tree, one request per
/// same-colored vertex pair.
pub fn mcc_to_multicut(g: &ColoredGraph) -> Result<MulticutInstance> {
    if !g.is_tree() {
        return Err(Error::shape("mcc_to_multicut requires a tree"));
    }
    let n = g.vertex_count();
    let mut requests = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if g.color(u) == g.color(v) {
                requests.push((u, v));
            }
        }
    }
    MulticutInstance::new(n, g.edges().iter().copied(), requests)
}

/// Colored tree built from a multicut instance, with the original tree
/// edges (`e1`) and the added leaf edges (`e2`) tagged.
#[derive(Debug, Clone)]
pub struct McGadget {
    pub graph: ColoredGraph,
    /// Edge ids of the copied tree edges; index i is the instance's edge i.
    pub e1_edges: Vec<usize>,
    /// Edge ids of the added leaf edges.
    pub e2_edges: Vec<usize>,
    /// Per request `(u, v)`: the leaf attached to `v` and the leaf attached
    /// to `u`, both sharing one fresh color.
    pub request_leaves: Vec<(usize, usize)>,
}

/// Multicut instance -> MCC instance: every original vertex gets a unique
/// color; each request `(u, v)` adds two fresh leaves sharing a color, one
/// adjacent to `v` and one adjacent to `u`.
pub fn multicut_to_mcc(m: &MulticutInstance) -> McGadget {
    let n0 = m.tree.vertex_count();
    let r = m.requests.len();
    let mut edges: Vec<(usize, usize)> = m.tree.edges().to_vec();
    let mut colors: Vec<usize> = (0..n0).collect();
    let mut request_leaves = Vec::with_capacity(r);
    for (i, &(u, v)) in m.requests.iter().enumerate() {
        let leaf_at_v = n0 + 2 * i;
        let leaf_at_u = n0 + 2 * i + 1;
        edges.push((v, leaf_at_v));
        edges.push((u, leaf_at_u));
        colors.push(n0 + i);
        colors.push(n0 + i);
        request_leaves.push((leaf_at_v, leaf_at_u));
    }
    let graph = ColoredGraph::new(n0 + 2 * r, edges, colors, n0 + r.max(1))
        .expect("gadget construction preserves invariants");
    let e1_edges = m
        .tree
        .edges()
        .iter()
        .map(|&(u, v)| graph.edge_id(u, v).expect("tree edge present in gadget"))
        .collect();
    let e2_edges = request_leaves
        .iter()
        .zip(&m.requests)
        .flat_map(|(&(lv, lu), &(u, v))| {
            [
                graph.edge_id(v, lv).expect("leaf edge present"),
                graph.edge_id(u, lu).expect("leaf edge present"),
            ]
        })
        .collect();
    McGadget {
        graph,
        e1_edges,
        e2_edges,
        request_leaves,
    }
}

/// Rewrites an MCC solution on a gadget into one that is at least as good
/// and cuts only tree (`e1`) edges.
///
/// Whenever a leaf edge `{host, leaf}` is cut: if the host's component has
/// no other vertex of the leaf's color, the cut is simply undone; otherwise
/// that vertex is the partner leaf of the same request, and the tree-path
/// edge closest to the partner's host is cut instead.
pub fn repair_gadget_solution(
    gadget: &McGadget,
    deleted: &BTreeSet<usize>,
) -> Result<BTreeSet<usize>> {
    let g = &gadget.graph;
    if !crate::graph::is_colorful_partition(g, deleted.iter().copied())? {
        return Err(Error::invalid(
            "repair input is not a feasible MCC solution",
        ));
    }
    let e2: BTreeSet<usize> = gadget.e2_edges.iter().copied().collect();
    let mut deleted = deleted.clone();
    while let Some(&bad) = deleted.iter().find(|id| e2.contains(id)) {
        let (a, b) = g.edge(bad);
        // Leaf edges join one original vertex (the host) and one added leaf.
        let (host, leaf) = if g.degree(a) == 1 { (b, a) } else { (a, b) };
        deleted.remove(&bad);
        let partition = Partition::from_deleted(g, deleted.iter().copied())?;
        let host_comp = partition
            .components()
            .iter()
            .find(|c| c.binary_search(&host).is_ok())
            .expect("host belongs to some component");
        let clash = host_comp
            .iter()
            .find(|&&w| w != leaf && g.color(w) == g.color(leaf))
            .copied();
        if let Some(partner) = clash {
            // The partner is the other leaf of the same request; cut the
            // tree edge on the host-to-partner path nearest the partner's
            // own host.
            let partner_host = g.neighbors(partner)[0].0;
            let path = tree_path_vertices(g, host, partner_host);
            let k = path.len();
            let id = g
                .edge_id(path[k - 2], path[k - 1])
                .expect("consecutive path vertices are adjacent");
            debug_assert!(!e2.contains(&id));
            deleted.insert(id);
        }
    }
    if !crate::graph::is_colorful_partition(g, deleted.iter().copied())? {
        return Err(Error::invalid("repair produced an infeasible solution"));
    }
    Ok(deleted)
}

/// Vertices on the tree path from `a` to `b` (inclusive) in a forest.
fn tree_path_vertices(g: &ColoredGraph, a: usize, b: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut prev = vec![usize::MAX; n];
    let mut stack = vec![a];
    prev[a] = a;
    while let Some(u) = stack.pop() {
        if u == b {
            break;
        }
        for &(w, _) in g.neighbors(u) {
            if prev[w] == usize::MAX {
                prev[w] = u;
                stack.push(w);
            }
        }
    }
    let mut path = vec![b];
    let mut u = b;
    while u != a {
        u = prev[u];
        path.push(u);
    }
    path.reverse();
    path
}

/// Reads a multicut solution off a gadget MCC solution: repair to tree
/// edges only, then map back. The decoded cut always satisfies the
/// `j` cuts / `j + 1` components tree property.
pub fn decode_gadget_solution(
    m: &MulticutInstance,
    gadget: &McGadget,
    deleted: &BTreeSet<usize>,
) -> Result<CutSolution> {
    let repaired = repair_gadget_solution(gadget, deleted)?;
    let mut cut = Vec::new();
    for (tree_edge, &gadget_edge) in gadget.e1_edges.iter().enumerate() {
        if repaired.contains(&gadget_edge) {
            cut.push(tree_edge);
        }
    }
    let partition = Partition::from_deleted(&gadget.graph, repaired.iter().copied())?;
    assert_eq!(
        partition.components().len(),
        cut.len() + 1,
        "cutting j tree edges must yield j + 1 components"
    );
    CutSolution::new(m, cut)
}

fn uncovered_requests(m: &MulticutInstance, cut: &BTreeSet<usize>) -> Vec<(usize, usize)> {
    m.requests
        .iter()
        .copied()
        .filter(|&(x, y)| !m.path_edges(x, y).iter().any(|e| cut.contains(e)))
        .collect()
}

/// Bounded-depth branching for multicut on trees.
///
/// Picks an uncovered request whose lca is deepest; some optimal solution
/// cuts the topmost edge of one of its two path arms (any other path edge
/// can be pushed up to the arm top without uncovering anything, because
/// every request path through the arm exits via the lca). Branching on the
/// at most two arm-top edges explores `O(2^k)` nodes for budget `k`.
///
/// Returns a minimum cut of size at most `budget`, or `None` if every
/// feasible cut is larger.
pub fn solve_multicut_fpt(m: &MulticutInstance, budget: usize) -> Option<CutSolution> {
    for b in 0..=budget {
        let mut cut = BTreeSet::new();
        if branch(m, &mut cut, b) {
            let sol = CutSolution::new(m, cut).expect("branching result is feasible");
            return Some(sol);
        }
    }
    None
}

fn branch(m: &MulticutInstance, cut: &mut BTreeSet<usize>, budget: usize) -> bool {
    let uncovered = uncovered_requests(m, cut);
    let Some(&(x, y)) = uncovered
        .iter()
        .max_by_key(|&&(x, y)| (m.depth(m.lca(x, y)), std::cmp::Reverse((x, y))))
    else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    let w = m.lca(x, y);
    let mut candidates: Vec<usize> = [m.top_arm_edge(x, w), m.top_arm_edge(y, w)]
        .into_iter()
        .flatten()
        .collect();
    candidates.sort_unstable();
    for e in candidates {
        cut.insert(e);
        if branch(m, cut, budget - 1) {
            return true;
        }
        cut.remove(&e);
    }
    false
}

/// Primal-dual 2-approximation for multicut on trees.
///
/// Vertices are processed in post-order; every request still uncovered when
/// its lca comes up gets both of its arm-top edges added. Requests that
/// trigger have pairwise edge-disjoint paths (any path sharing an edge with
/// an earlier trigger's arm must leave through that arm's top edge, which
/// is already cut), so the triggers pack a dual solution of size t and the
/// cut has at most 2t <= 2 OPT edges. A reverse-delete pass then drops
/// redundant edges in reverse addition order.
pub fn approx2_multicut(m: &MulticutInstance) -> CutSolution {
    let n = m.tree.vertex_count();
    let mut order = Vec::with_capacity(n);
    if n > 0 {
        // Iterative post-order from the root 0.
        let mut stack = vec![(0usize, false)];
        let mut seen = vec![false; n];
        seen[0] = true;
        while let Some((u, expanded)) = stack.pop() {
            if expanded {
                order.push(u);
                continue;
            }
            stack.push((u, true));
            for &(w, _) in m.tree.neighbors(u).iter().rev() {
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, false));
                }
            }
        }
    }
    let mut added: Vec<usize> = Vec::new();
    let mut in_cut = vec![false; m.tree.edge_count()];
    let covered =
        |in_cut: &[bool], x: usize, y: usize| m.path_edges(x, y).iter().any(|&e| in_cut[e]);
    for &v in &order {
        for &(x, y) in &m.requests {
            if m.lca(x, y) != v || covered(&in_cut, x, y) {
                continue;
            }
            for e in [m.top_arm_edge(x, v), m.top_arm_edge(y, v)]
                .into_iter()
                .flatten()
            {
                if !in_cut[e] {
                    in_cut[e] = true;
                    added.push(e);
                }
            }
        }
    }
    // Reverse delete.
    for &e in added.iter().rev() {
        in_cut[e] = false;
        let still_ok = m.requests.iter().all(|&(x, y)| covered(&in_cut, x, y));
        if !still_ok {
            in_cut[e] = true;
        }
    }
    let cut: Vec<usize> = (0..m.tree.edge_count()).filter(|&e| in_cut[e]).collect();
    CutSolution::new(m, cut).expect("primal-dual cut covers every request")
}

/// Result of [`reduce_multicut`]: an equivalent smaller instance plus the
/// number of edges that were forced into every optimal cut, so that
/// `OPT(original) = OPT(instance) + forced_cuts`.
#[derive(Debug, Clone)]
pub struct ReducedMulticut {
    pub instance: MulticutInstance,
    pub forced_cuts: usize,
}

/// Exhaustively applies sound reduction rules:
///
/// 1. drop a request whose path contains another request's path;
/// 2. force-cut the edge of a request joining adjacent vertices (every
///    feasible cut contains it), drop the requests it covers, and contract
///    it;
/// 3. contract edges lying on no request path;
/// 4. delete request-free leaves.
///
/// The optimum is preserved as `OPT(original) = OPT(reduced) + forced_cuts`.
pub fn reduce_multicut(m: &MulticutInstance) -> ReducedMulticut {
    let mut inst = m.clone();
    let mut forced = 0usize;
    loop {
        let mut changed = false;

        // Rule 1: dominated requests. Path containment: any cut hitting the
        // inner path also hits the outer one.
        let paths: Vec<BTreeSet<usize>> = inst
            .requests
            .iter()
            .map(|&(x, y)| inst.path_edges(x, y).into_iter().collect())
            .collect();
        let mut drop = vec![false; paths.len()];
        for i in 0..paths.len() {
            for j in 0..paths.len() {
                if i != j && !drop[i] && !drop[j] && paths[i].is_subset(&paths[j]) {
                    drop[j] = true;
                }
            }
        }
        if drop.iter().any(|&d| d) {
            let requests = inst
                .requests
                .iter()
                .zip(&drop)
                .filter(|(_, &d)| !d)
                .map(|(&r, _)| r)
                .collect();
            inst = MulticutInstance::with_tree(inst.tree.clone(), requests);
            changed = true;
        }

        // Rule 2: adjacent-pair requests force their edge.
        if let Some(&(x, y)) = inst
            .requests
            .iter()
            .find(|&&(x, y)| inst.tree.edge_id(x, y).is_some())
        {
            let edge = inst.tree.edge_id(x, y).unwrap();
            forced += 1;
            // Requests whose path uses the forced edge are now satisfied;
            // afterwards no surviving path crosses it, so contracting the
            // edge is optimum-preserving.
            let survivors: Vec<(usize, usize)> = inst
                .requests
                .iter()
                .copied()
                .filter(|&(a, b)| !inst.path_edges(a, b).contains(&edge))
                .collect();
            inst = contract_edges(&inst, &[edge], survivors);
            changed = true;
        }

        // Rule 3: contract edges on no request path.
        let mut used = vec![false; inst.tree.edge_count()];
        for &(x, y) in &inst.requests {
            for e in inst.path_edges(x, y) {
                used[e] = true;
            }
        }
        let unused: Vec<usize> = (0..inst.tree.edge_count()).filter(|&e| !used[e]).collect();
        if !unused.is_empty() {
            let requests = inst.requests.clone();
            inst = contract_edges(&inst, &unused, requests);
            changed = true;
        }

        // Rule 4: request-free leaves. Their edges lie on no request path,
        // so rule 3 already contracts them; kept as an explicit cheap pass
        // for instances entering with fresh requests.
        let mut touched = vec![false; inst.tree.vertex_count()];
        for &(x, y) in &inst.requests {
            touched[x] = true;
            touched[y] = true;
        }
        let keep: Vec<usize> = (0..inst.tree.vertex_count())
            .filter(|&v| inst.tree.degree(v) != 1 || touched[v])
            .collect();
        if keep.len() < inst.tree.vertex_count() && !keep.is_empty() {
            let sub = inst.tree.induced(&keep);
            let mut new_of_orig = vec![usize::MAX; inst.tree.vertex_count()];
            for (new, &orig) in sub.vertex_to_orig.iter().enumerate() {
                new_of_orig[orig] = new;
            }
            let requests = inst
                .requests
                .iter()
                .map(|&(x, y)| (new_of_orig[x], new_of_orig[y]))
                .collect();
            inst = MulticutInstance::with_tree(sub.graph, requests);
            changed = true;
        }

        if !changed {
            break;
        }
    }
    ReducedMulticut {
        instance: inst,
        forced_cuts: forced,
    }
}

/// Contracts the given edges (merging endpoint classes) and remaps the
/// surviving requests. No surviving request path may cross a contracted
/// edge.
fn contract_edges(
    m: &MulticutInstance,
    edges: &[usize],
    requests: Vec<(usize, usize)>,
) -> MulticutInstance {
    let n = m.tree.vertex_count();
    let mut class = (0..n).collect::<Vec<usize>>();
    fn find(class: &mut Vec<usize>, v: usize) -> usize {
        if class[v] != v {
            let r = find(class, class[v]);
            class[v] = r;
            r
        } else {
            v
        }
    }
    for &e in edges {
        let (u, v) = m.tree.edge(e);
        let (ru, rv) = (find(&mut class, u), find(&mut class, v));
        if ru != rv {
            let (lo, hi) = (ru.min(rv), ru.max(rv));
            class[hi] = lo;
        }
    }
    let mut rep: Vec<usize> = (0..n).map(|v| find(&mut class, v)).collect();
    let mut new_id = vec![usize::MAX; n];
    let mut next = 0usize;
    for v in 0..n {
        if new_id[rep[v]] == usize::MAX {
            new_id[rep[v]] = next;
            next += 1;
        }
    }
    for v in 0..n {
        rep[v] = new_id[rep[v]];
    }
    let contracted: BTreeSet<usize> = edges.iter().copied().collect();
    let new_edges: Vec<(usize, usize)> = (0..m.tree.edge_count())
        .filter(|e| !contracted.contains(e))
        .map(|e| {
            let (u, v) = m.tree.edge(e);
            (rep[u], rep[v])
        })
        .collect();
    let new_requests: Vec<(usize, usize)> = requests
        .into_iter()
        .map(|(x, y)| {
            debug_assert_ne!(rep[x], rep[y], "request merged by contraction");
            (rep[x].min(rep[y]), rep[x].max(rep[y]))
        })
        .collect();
    let tree = ColoredGraph::new(next, new_edges, vec![0; next], 1)
        .expect("contraction of tree edges yields a tree");
    let mut reqs = new_requests;
    reqs.sort_unstable();
    reqs.dedup();
    MulticutInstance::with_tree(tree, reqs)
}

/// Exact or 2-approximate MCC solving mode for trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McTreeMode {
    Exact,
    Approx,
}

/// MCC on a forest through the multicut reduction. Exact mode returns the
/// optimum component count; approx mode at most twice the optimum. Inputs
/// with cycles are rejected.
pub fn solve_mcc_tree(g: &ColoredGraph, mode: McTreeMode) -> Result<SolveResult> {
    if !g.is_forest() {
        return Err(Error::shape("mcc tree solver requires an acyclic input"));
    }
    let (ng, edge_map, removed) = g.normalize_with_map();
    let mut deleted: BTreeSet<usize> = removed.into_iter().collect();
    for sub in ng.component_subgraphs() {
        let m = mcc_to_multicut(&sub.graph)?;
        let cut = match mode {
            McTreeMode::Exact => {
                let upper = approx2_multicut(&m).value;
                solve_multicut_fpt(&m, upper).expect("2-approx value bounds the optimum")
            }
            McTreeMode::Approx => approx2_multicut(&m),
        };
        let comps = Partition::from_deleted(&sub.graph, cut.cut_edges.iter().copied())?
            .components()
            .len();
        assert_eq!(
            comps,
            cut.value + 1,
            "cutting j tree edges must yield j + 1 components"
        );
        for local in cut.cut_edges {
            deleted.insert(edge_map[sub.edge_to_orig[local]]);
        }
    }
    let partition = Partition::from_deleted(g, deleted)?;
    let tag = match mode {
        McTreeMode::Exact => "mcc/tree-exact",
        McTreeMode::Approx => "mcc/tree-approx2",
    };
    SolveResult::checked(g, Problem::Mcc, partition, tag)
}

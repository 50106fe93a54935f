//! Acceptance suite: one test per gate, each printing a PASS line with the
//! checked quantities. Everything is seed-pinned and runs in a couple of
//! minutes on a small machine.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use ccomp_core::generators::{self, is_to_mec_value};
use ccomp_core::graph::{is_colorful_partition, ColoredGraph, Partition, Problem};
use ccomp_core::mec_fpt::{self, LabelingMode};
use ccomp_core::mec_kernel::{self, KernelOutcome};
use ccomp_core::multicut::{self, McTreeMode, MulticutInstance};
use ccomp_core::oracle::{self, OracleLimits};
use ccomp_core::path_dp::{self, PathInstance};

fn path_graph(colors: &[usize], q: usize) -> ColoredGraph {
    let n = colors.len();
    let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    ColoredGraph::new(n, edges, colors.to_vec(), q).unwrap()
}

/// The nine-vertex multicut sample with terminal pairs
/// {(1,7), (4,5), (3,4)}; its optimum cut has two edges and the derived
/// colored tree has MCC optimum three.
fn sample_multicut() -> MulticutInstance {
    MulticutInstance::new(
        9,
        vec![
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (1, 5),
            (2, 6),
            (3, 7),
            (7, 8),
        ],
        vec![(1, 7), (4, 5), (3, 4)],
    )
    .unwrap()
}

/// The five-vertex sample graph whose minimum vertex cover has size three.
fn sample_vc_graph() -> ColoredGraph {
    ColoredGraph::new(
        5,
        vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (3, 4)],
        vec![0; 5],
        1,
    )
    .unwrap()
}

/// Criterion 1: the path DPs agree with the oracle on every 3-coloring of
/// paths with up to 7 vertices.
#[test]
fn criterion_1_path_dp_oracle_agreement() {
    let mut checked = 0u64;
    for n in 1..=7usize {
        let mut coloring = vec![0usize; n];
        loop {
            let g = path_graph(&coloring, 3);
            let p = PathInstance::from_graph(&g).unwrap();
            let mcc_dp = path_dp::mcc_path(&p).unwrap().objective_value;
            let mcc_oracle = oracle::oracle_mcc(&g).unwrap().objective_value;
            assert_eq!(mcc_dp, mcc_oracle, "mcc mismatch on {:?}", coloring);
            let mec_dp = path_dp::mec_path(&p).unwrap().objective_value;
            let mec_oracle = oracle::oracle_mec(&g).unwrap().objective_value;
            assert_eq!(mec_dp, mec_oracle, "mec mismatch on {:?}", coloring);
            checked += 1;
            let mut i = 0;
            while i < n && coloring[i] == 2 {
                coloring[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            coloring[i] += 1;
        }
    }
    println!(
        "criterion 1 PASS: {} path colorings, both DPs match the oracle exactly",
        checked
    );
}

fn random_colored_tree(rng: &mut ChaCha8Rng, max_n: usize, max_q: usize) -> ColoredGraph {
    let n = rng.gen_range(1..=max_n);
    let q = if n == 1 {
        1
    } else {
        rng.gen_range(2..=max_q.max(2))
    };
    let mut parent = vec![0usize; n];
    for v in 1..n {
        parent[v] = rng.gen_range(0..v);
    }
    let mut colors = vec![rng.gen_range(0..q)];
    for v in 1..n {
        loop {
            let c = rng.gen_range(0..q);
            if c != colors[parent[v]] {
                colors.push(c);
                break;
            }
        }
    }
    let edges: Vec<_> = (1..n).map(|v| (parent[v], v)).collect();
    ColoredGraph::new(n, edges, colors, q).unwrap()
}

/// Criterion 2: the exact multicut-based tree solver matches the oracle on
/// 300 seeded random colored trees (n <= 12, q <= 5).
#[test]
fn criterion_2_tree_mcc_oracle_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let trees: Vec<ColoredGraph> = (0..300)
        .map(|_| random_colored_tree(&mut rng, 12, 5))
        .collect();
    trees.par_iter().for_each(|g| {
        let exact = multicut::solve_mcc_tree(g, McTreeMode::Exact)
            .unwrap()
            .objective_value;
        let want = oracle::oracle_mcc(g).unwrap().objective_value;
        assert_eq!(exact, want, "tree {:?}", g.edges());
    });
    println!("criterion 2 PASS: 300 random trees, exact tree solver equals the oracle");
}

/// Criterion 3: the nine-vertex sample instance has multicut optimum 2 and
/// its gadget tree has MCC optimum 3.
#[test]
fn criterion_3_sample_multicut_fixture() {
    let m = sample_multicut();
    let branch = multicut::solve_multicut_fpt(&m, 8).unwrap();
    assert_eq!(branch.value, 2);
    let brute = oracle::oracle_multicut(&m, &OracleLimits::default()).unwrap();
    assert_eq!(brute.value, 2);

    let gadget = multicut::multicut_to_mcc(&m);
    assert_eq!(gadget.graph.vertex_count(), 15);
    let mcc = oracle::oracle_mcc(&gadget.graph).unwrap().objective_value;
    assert_eq!(mcc, 3);
    let tree = multicut::solve_mcc_tree(&gadget.graph, McTreeMode::Exact).unwrap();
    assert_eq!(tree.objective_value, 3);
    println!("criterion 3 PASS: sample instance has cut optimum 2 and gadget MCC optimum 3");
}

/// Criterion 4: the vertex-cover gadget of the five-vertex sample graph is
/// an 18-vertex tree with MCC optimum 4 (cover 3 plus one).
#[test]
fn criterion_4_vc_gadget_fixture() {
    let base = sample_vc_graph();
    assert_eq!(oracle::oracle_min_vertex_cover(&base).unwrap(), 3);
    let gadget = generators::vc_to_mcc(&base);
    assert_eq!(gadget.graph.vertex_count(), 18);
    let mcc = oracle::oracle_mcc(&gadget.graph).unwrap().objective_value;
    assert_eq!(mcc, 4);
    println!("criterion 4 PASS: 18-vertex gadget, MCC optimum 4 = cover 3 + 1");
}

/// Criterion 5: the primal-dual approximation never exceeds twice the exact
/// value on 300 seeded random trees.
#[test]
fn criterion_5_approximation_ratio() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let trees: Vec<ColoredGraph> = (0..300)
        .map(|_| random_colored_tree(&mut rng, 12, 5))
        .collect();
    let worst = trees
        .par_iter()
        .map(|g| {
            let exact = multicut::solve_mcc_tree(g, McTreeMode::Exact)
                .unwrap()
                .objective_value;
            let approx = multicut::solve_mcc_tree(g, McTreeMode::Approx)
                .unwrap()
                .objective_value;
            assert!(
                approx <= 2 * exact,
                "ratio violated: approx {} exact {} on {:?}",
                approx,
                exact,
                g.edges()
            );
            approx as f64 / exact as f64
        })
        .reduce(|| 1.0, f64::max);
    println!(
        "criterion 5 PASS: 300 random trees, worst approx/exact ratio {:.3} <= 2",
        worst
    );
}

/// Criterion 6: multicut optimum equals gadget MCC optimum minus one on 200
/// seeded random instances (n <= 10, up to 4 requests).
#[test]
fn criterion_6_reduction_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut instances = Vec::new();
    for _ in 0..200 {
        let n = rng.gen_range(2..=10);
        let max_requests = (n * (n - 1) / 2).min(4);
        let r = rng.gen_range(0..=max_requests);
        instances.push(generators::random_multicut(n, r, &mut rng).unwrap());
    }
    instances.par_iter().for_each(|m| {
        let cut = multicut::solve_multicut_fpt(m, m.tree().edge_count()).unwrap();
        let brute = oracle::oracle_multicut(m, &OracleLimits::default()).unwrap();
        assert_eq!(cut.value, brute.value);
        let gadget = multicut::multicut_to_mcc(m);
        let mcc = oracle::oracle_mcc(&gadget.graph).unwrap().objective_value;
        assert_eq!(cut.value as u64, mcc - 1, "requests {:?}", m.requests());
    });
    println!("criterion 6 PASS: 200 random instances, cut optimum = gadget MCC optimum - 1");
}

fn random_colored_graph(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    max_m: usize,
    max_q: usize,
) -> ColoredGraph {
    let n = rng.gen_range(1..=max_n);
    let q = rng.gen_range(1..=max_q);
    let colors: Vec<usize> = (0..n).map(|_| rng.gen_range(0..q)).collect();
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if colors[u] != colors[v] {
                pairs.push((u, v));
            }
        }
    }
    pairs.shuffle(rng);
    let m = rng.gen_range(0..=pairs.len().min(max_m));
    ColoredGraph::new(n, pairs[..m].to_vec(), colors, q).unwrap()
}

/// Criterion 7: the general kernel preserves the threshold decision for
/// k <= 4 on 200 random graphs (m <= 18); the tree kernel preserves the
/// optimum exactly on 200 random trees, and its outputs keep at most one
/// leaf per (parent, color) pair.
#[test]
fn criterion_7_kernels_preserve_answers() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let graphs: Vec<ColoredGraph> = (0..200)
        .map(|_| random_colored_graph(&mut rng, 12, 18, 4))
        .collect();
    graphs.par_iter().for_each(|g| {
        let opt = oracle::oracle_mec(g).unwrap().objective_value;
        for k in 0..=4u64 {
            match mec_kernel::kernelize_mec(g, k).unwrap().outcome {
                KernelOutcome::Yes(w) => {
                    assert!(w.is_colorful(g));
                    assert!(w.mec_value() >= k && opt >= k);
                }
                KernelOutcome::Reduced { graph, .. } => {
                    let red = oracle::oracle_mec(&graph).unwrap().objective_value;
                    assert_eq!(opt >= k, red >= k, "k={} opt={} red={}", k, opt, red);
                }
            }
        }
    });

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0107);
    let trees: Vec<ColoredGraph> = (0..200)
        .map(|_| random_colored_tree(&mut rng, 14, 5))
        .collect();
    let mut reduced_count = 0usize;
    for (i, g) in trees.iter().enumerate() {
        let k = (i as u64 % 6) + 1;
        match mec_kernel::kernelize_mec_tree(g, k).unwrap().outcome {
            KernelOutcome::Yes(w) => {
                assert!(w.is_colorful(g));
                assert!(w.mec_value() >= k);
                assert!(oracle::oracle_mec(g).unwrap().objective_value >= k);
            }
            KernelOutcome::Reduced { graph, .. } => {
                reduced_count += 1;
                let opt = oracle::oracle_mec(g).unwrap().objective_value;
                let red = oracle::oracle_mec(&graph).unwrap().objective_value;
                assert_eq!(opt, red, "tree optimum changed under the kernel");
                // Structural assertion: one leaf per (parent, color).
                let mut seen = std::collections::HashSet::new();
                for v in 0..graph.vertex_count() {
                    if graph.degree(v) == 1 {
                        let host = graph.neighbors(v)[0].0;
                        assert!(
                            seen.insert((host, graph.color(v))),
                            "two same-colored leaves at vertex {}",
                            host
                        );
                    }
                }
            }
        }
    }
    assert!(
        reduced_count > 0,
        "suite never exercised the reduced branch"
    );
    println!(
        "criterion 7 PASS: 200 graphs decision-preserved (k <= 4); 200 trees optimum-preserved ({} reduced outcomes)",
        reduced_count
    );
}

/// Criterion 8: exhaustive color coding equals the oracle on random trees
/// (n <= 10, q <= 4); randomized mode with ceil(e^h ln 100) trials matches
/// exhaustive on at least 99% of a 200-instance seed-pinned suite.
#[test]
fn criterion_8_color_coding_exactness() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let trees: Vec<ColoredGraph> = (0..40)
        .map(|_| random_colored_tree(&mut rng, 10, 4))
        .collect();
    trees.par_iter().for_each(|g| {
        let n = g.vertex_count();
        let want = oracle::oracle_mec(g).unwrap().objective_value;
        let got = mec_fpt::mec_tree_fpt(g, n, LabelingMode::Exhaustive, 0, 1)
            .unwrap()
            .objective_value;
        assert_eq!(got, want, "tree {:?} colors {:?}", g.edges(), g.colors());
    });

    // Randomized-versus-exhaustive at label budget h = 3:
    // trials = ceil(e^3 * ln 100) = 93.
    let h = 3usize;
    let trials = ((std::f64::consts::E.powi(h as i32)) * 100f64.ln()).ceil() as usize;
    assert_eq!(trials, 93);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0108);
    let suite: Vec<ColoredGraph> = (0..200)
        .map(|_| random_colored_tree(&mut rng, 6, 3))
        .collect();
    let matches: usize = suite
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let exhaustive = mec_fpt::mec_tree_fpt(g, h, LabelingMode::Exhaustive, 0, 1)
                .unwrap()
                .objective_value;
            let randomized =
                mec_fpt::mec_tree_fpt(g, h, LabelingMode::Randomized, trials, 1000 + i as u64)
                    .unwrap()
                    .objective_value;
            assert!(randomized <= exhaustive);
            usize::from(randomized == exhaustive)
        })
        .sum();
    assert!(
        matches * 100 >= suite.len() * 99,
        "randomized matched exhaustive on only {}/200 instances",
        matches
    );
    println!(
        "criterion 8 PASS: 40 trees exact vs oracle; randomized matched exhaustive on {}/200 (needs >= 198)",
        matches
    );
}

/// Criterion 9: gadget correspondences. Vertex-cover gadget bidirectional on
/// a seeded suite (n <= 7); independent-set gadget forward identity for
/// n <= 4 over brute-forced independent sets.
#[test]
fn criterion_9_gadget_correspondences() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let mut suite = Vec::new();
    for _ in 0..40 {
        let n = rng.gen_range(1..=7usize);
        let cap = (n * (n - 1) / 2).min(7);
        let m = rng.gen_range(0..=cap);
        suite.push(generators::random_plain_graph(n, m, &mut rng).unwrap());
    }
    suite.par_iter().for_each(|base| {
        let k = oracle::oracle_min_vertex_cover(base).unwrap() as u64;
        let gadget = generators::vc_to_mcc(base);
        let mcc = oracle::oracle_mcc(&gadget.graph).unwrap().objective_value;
        assert_eq!(mcc, k + 1, "cover {} vs gadget MCC {}", k, mcc);
    });

    let mut forward_checked = 0u64;
    for n in 1..=4usize {
        let all_pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0109 + n as u64);
        for _ in 0..5 {
            let mut pairs = all_pairs.clone();
            pairs.shuffle(&mut rng);
            let m = rng.gen_range(0..=pairs.len());
            let base = ColoredGraph::new(n, pairs[..m].to_vec(), vec![0; n], 1).unwrap();
            let gadget = generators::is_to_mec(&base, None).unwrap();
            let padding = n * n * n;
            for subset in 0u32..(1 << n) {
                let independent = base
                    .edges()
                    .iter()
                    .all(|&(u, v)| subset >> u & 1 == 0 || subset >> v & 1 == 0);
                if !independent {
                    continue;
                }
                let k = subset.count_ones() as usize;
                let cut: Vec<bool> = (0..n).map(|v| subset >> v & 1 == 0).collect();
                let partition = gadget.cut_paths(&cut).unwrap();
                assert!(partition.is_colorful(&gadget.graph));
                assert_eq!(partition.mec_value(), is_to_mec_value(n, k, padding));
                forward_checked += 1;
            }
        }
    }
    println!(
        "criterion 9 PASS: 40 cover gadgets bidirectional; {} independent sets hit the closure formula exactly",
        forward_checked
    );
}

/// Criterion 10: structural assertions. DFS back edges join ancestors;
/// cutting j tree edges yields j + 1 components; every solver's output
/// passes independent verification.
#[test]
fn criterion_10_structural_assertions() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_000a);

    // Back-edge ancestor property on random connected graphs.
    let mut back_edges_checked = 0usize;
    for _ in 0..60 {
        let n = rng.gen_range(2..=12);
        let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        let mut extra: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .filter(|e| !edges.contains(e))
            .collect();
        extra.shuffle(&mut rng);
        let add = rng.gen_range(0..=extra.len().min(6));
        edges.extend_from_slice(&extra[..add]);
        let colors: Vec<usize> = (0..n).collect();
        let g = ColoredGraph::new(n, edges, colors, n).unwrap();
        let d = mec_kernel::dfs_decompose(&g).unwrap();
        for &e in &d.back_edges {
            let (u, v) = g.edge(e);
            assert!(d.is_ancestor(u, v) || d.is_ancestor(v, u));
            back_edges_checked += 1;
        }
    }

    // Tree cut property: j cuts give j + 1 components.
    for _ in 0..60 {
        let tree = random_colored_tree(&mut rng, 12, 4);
        let m = tree.edge_count();
        let cut_count = if m == 0 { 0 } else { rng.gen_range(0..=m) };
        let mut ids: Vec<usize> = (0..m).collect();
        ids.shuffle(&mut rng);
        let partition = Partition::from_deleted(&tree, ids[..cut_count].to_vec()).unwrap();
        assert_eq!(partition.components().len(), cut_count + 1);
    }

    // Every solver output re-validates independently.
    let mut solutions = 0usize;
    for i in 0..15 {
        let tree = random_colored_tree(&mut rng, 10, 4);
        let mut results = vec![
            multicut::solve_mcc_tree(&tree, McTreeMode::Exact).unwrap(),
            multicut::solve_mcc_tree(&tree, McTreeMode::Approx).unwrap(),
            oracle::oracle_mcc(&tree).unwrap(),
            oracle::oracle_mec(&tree).unwrap(),
            mec_fpt::mec_tree_fpt(&tree, tree.vertex_count(), LabelingMode::Exhaustive, 0, 1)
                .unwrap(),
            mec_fpt::mec_tree_fpt_recolor(&tree, 3, 40, i).unwrap(),
        ];
        if tree.is_path() {
            let p = PathInstance::from_graph(&tree).unwrap();
            results.push(path_dp::mcc_path(&p).unwrap());
            results.push(path_dp::mec_path(&p).unwrap());
        }
        for res in results {
            let deleted: Vec<usize> = res.partition.deleted_edges().iter().copied().collect();
            assert!(is_colorful_partition(&tree, deleted.iter().copied()).unwrap());
            let fresh = Partition::from_deleted(&tree, deleted).unwrap();
            let problem = if res.algorithm_tag.starts_with("mcc") {
                Problem::Mcc
            } else {
                Problem::Mec
            };
            assert_eq!(
                problem.objective(&fresh),
                res.objective_value,
                "{}",
                res.algorithm_tag
            );
            assert!(res.certificate_checked);
            solutions += 1;
        }
    }
    println!(
        "criterion 10 PASS: {} back edges ancestor-checked; 60 tree cuts component-counted; {} solutions re-verified",
        back_edges_checked, solutions
    );
}

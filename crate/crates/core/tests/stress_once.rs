//! One-off deep stress (run manually): DP vs oracle on many shaped trees.
use ccomp_core::generators;
use ccomp_core::graph::ColoredGraph;
use ccomp_core::mec_fpt::{self, LabelingMode};
use ccomp_core::mec_kernel::{self, KernelOutcome};
use ccomp_core::multicut::{self, McTreeMode};
use ccomp_core::oracle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn shaped_tree(rng: &mut ChaCha8Rng, n: usize, q: usize, shape: u8) -> ColoredGraph {
    let mut parent = vec![0usize; n];
    for v in 1..n {
        parent[v] = match shape {
            0 => rng.gen_range(0..v),            // uniform random
            1 => v - 1,                          // path
            2 => 0,                              // star
            3 => (v - 1) / 2,                    // binary-ish
            _ => if v > 1 && rng.gen_bool(0.7) { v - 1 } else { rng.gen_range(0..v) }, // caterpillar-ish
        };
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

#[test]
#[ignore]
fn stress_colorcoding_vs_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    let mut cases = Vec::new();
    for i in 0..300 {
        let n = rng.gen_range(2..=10);
        let q = rng.gen_range(2..=4);
        let shape = (i % 5) as u8;
        cases.push(shaped_tree(&mut rng, n, q, shape));
    }
    cases.par_iter().enumerate().for_each(|(i, g)| {
        let want = oracle::oracle_mec(g).unwrap().objective_value;
        let res = mec_fpt::mec_tree_fpt(g, g.vertex_count(), LabelingMode::Exhaustive, 0, 1).unwrap();
        assert_eq!(res.objective_value, want, "case {} edges {:?} colors {:?}", i, g.edges(), g.colors());
        // Recolor with generous trials should reach the same value.
        if i % 3 == 0 {
            let h = g.vertex_count().min(4);
            let reco = mec_fpt::mec_tree_fpt_recolor(g, h, 300, 5 + i as u64).unwrap();
            let capped = mec_fpt::mec_tree_fpt(g, h, LabelingMode::Exhaustive, 0, 1).unwrap();
            assert_eq!(reco.objective_value, capped.objective_value, "recolor case {}", i);
        }
        // MCC cross-check too.
        let mcc = multicut::solve_mcc_tree(g, McTreeMode::Exact).unwrap().objective_value;
        assert_eq!(mcc, oracle::oracle_mcc(g).unwrap().objective_value, "mcc case {}", i);
    });
    println!("stress: 300 shaped trees, all solvers agree with the oracle");
}

#[test]
#[ignore]
fn stress_kernel_denser_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(778);
    let mut cases = Vec::new();
    for _ in 0..120 {
        let n = rng.gen_range(4..=10);
        let q = rng.gen_range(2..=5);
        let colors: Vec<usize> = (0..n).map(|_| rng.gen_range(0..q)).collect();
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if colors[u] != colors[v] {
                    pairs.push((u, v));
                }
            }
        }
        use rand::seq::SliceRandom;
        pairs.shuffle(&mut rng);
        let m = rng.gen_range(0..=pairs.len().min(18));
        cases.push(ColoredGraph::new(n, pairs[..m].to_vec(), colors, q).unwrap());
    }
    cases.par_iter().for_each(|g| {
        let opt = oracle::oracle_mec(g).unwrap().objective_value;
        for k in 0..=6u64 {
            match mec_kernel::kernelize_mec(g, k).unwrap().outcome {
                KernelOutcome::Yes(w) => {
                    assert!(w.is_colorful(g) && w.mec_value() >= k && opt >= k)
                }
                KernelOutcome::Reduced { graph, .. } => {
                    let red = oracle::oracle_mec(&graph).unwrap().objective_value;
                    assert_eq!(opt >= k, red >= k, "k={}", k);
                }
            }
        }
    });
    println!("stress: 120 denser graphs, kernel decision preserved for k <= 6");
}

#[test]
#[ignore]
fn stress_multicut_adversarial() {
    let mut rng = ChaCha8Rng::seed_from_u64(779);
    for _ in 0..200 {
        let n: usize = rng.gen_range(2..=11);
        let max_r = (n * (n - 1) / 2).min(8);
        let r = rng.gen_range(0..=max_r);
        let m = generators::random_multicut(n, r, &mut rng).unwrap();
        let exact = multicut::solve_multicut_fpt(&m, m.tree().edge_count()).unwrap();
        let brute = oracle::oracle_multicut(&m, &oracle::OracleLimits::default()).unwrap();
        assert_eq!(exact.value, brute.value, "requests {:?}", m.requests());
        let approx = multicut::approx2_multicut(&m);
        assert!(approx.value <= 2 * exact.value);
        let red = multicut::reduce_multicut(&m);
        let after = oracle::oracle_multicut(&red.instance, &oracle::OracleLimits::default()).unwrap();
        assert_eq!(exact.value, after.value + red.forced_cuts);
    }
    println!("stress: 200 multicut instances with up to 8 requests, all routes agree");
}

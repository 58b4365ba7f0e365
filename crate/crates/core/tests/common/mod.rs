//! Strategies and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use fpgraph::graph::DirectedGraph;
use fpgraph::maps::TableMap;
use fpgraph::metric::{FiniteMetricSpace, PointSet};
use fpgraph::rational::{rat, Rational};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub const LABELS: [&str; 6] = ["1", "2", "3", "4", "5", "6"];

/// Shortest-path closure of random positive weights; always a metric.
pub fn metric_space(max_n: usize) -> impl Strategy<Value = FiniteMetricSpace> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((1i64..=12, 1i64..=4), n * n).prop_map(move |w| {
            let mut d = vec![vec![Rational::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        let (p, q) = w[i.min(j) * n + i.max(j)];
                        d[i][j] = rat(p, q);
                    }
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        let via = d[i][k].clone() + d[k][j].clone();
                        if via < d[i][j] {
                            d[i][j] = via;
                        }
                    }
                }
            }
            FiniteMetricSpace::from_rows(&LABELS[..n], d).expect("square")
        })
    })
}

pub fn graph_on(n: usize) -> impl Strategy<Value = DirectedGraph> {
    prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
        let edges = (0..n * n).filter(|&k| bits[k]).map(|k| (k / n, k % n));
        DirectedGraph::new(n, edges).expect("in range")
    })
}

/// A total table map on an `n`-point space, as raw output masks.
pub fn table_masks(n: usize) -> impl Strategy<Value = Vec<u32>> {
    let full = (1u32 << n) - 1;
    prop::collection::vec(1..=full, full as usize)
}

pub fn table(space: &FiniteMetricSpace, masks: &[u32]) -> TableMap {
    let n = space.len();
    TableMap::from_fn(space, |u| {
        PointSet::from_mask(masks[u.mask() as usize - 1], n).unwrap()
    })
}

/// Space, S-table and T-table together.
pub fn two_map_instance(
    max_n: usize,
) -> impl Strategy<Value = (FiniteMetricSpace, Vec<u32>, Vec<u32>)> {
    metric_space(max_n).prop_flat_map(|x| {
        let n = x.len();
        (Just(x), table_masks(n), table_masks(n))
    })
}

/// `H(A, B)` straight from the sup/inf definition.
pub fn hausdorff_oracle(x: &FiniteMetricSpace, a: &PointSet, b: &PointSet) -> Rational {
    let gap = |p: usize, set: &PointSet| set.indices().map(|q| x.d(p, q).clone()).min().unwrap();
    let one_way =
        |from: &PointSet, to: &PointSet| from.indices().map(|p| gap(p, to)).max().unwrap();
    one_way(a, b).max(one_way(b, a))
}

/// Vertices reachable from `v` by a path of length at least one, by BFS.
pub fn bfs_reach(g: &DirectedGraph, v: usize) -> u32 {
    let n = g.vertex_count();
    let mut seen = 0u32;
    let mut frontier: Vec<usize> = (0..n).filter(|&w| g.has_edge(v, w)).collect();
    while let Some(w) = frontier.pop() {
        if seen & (1 << w) != 0 {
            continue;
        }
        seen |= 1 << w;
        frontier.extend((0..n).filter(|&u| g.has_edge(w, u)));
    }
    seen
}

/// `count` values drawn from `strategy` with a fixed seed.
pub fn samples<S: Strategy>(strategy: S, count: usize) -> Vec<S::Value> {
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]);
    let mut runner = TestRunner::new_with_rng(Config::default(), rng);
    (0..count)
        .map(|_| strategy.new_tree(&mut runner).expect("strategy").current())
        .collect()
}

//! Seeded instance generators for tests, examples and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Partition, SignedGraph};

/// Erdős–Rényi style signed graph: each pair becomes an edge with probability
/// `edge_prob`, negative with probability `negative_prob`. Nodes are labeled
/// `"0".."n-1"` and isolated nodes are preserved.
pub fn random_signed_graph(n: usize, edge_prob: f64, negative_prob: f64, seed: u64) -> SignedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_prob) {
                let sign = if rng.gen_bool(negative_prob) { -1 } else { 1 };
                edges.push((labels[i].as_str(), labels[j].as_str(), sign));
            }
        }
    }
    let mut g = SignedGraph::from_edges(edges).expect("generated edges are valid");
    for label in &labels {
        g.ensure_node(label).expect("labels are nonempty");
    }
    g
}

/// Complete signed graph with planted clusters: positive inside each group,
/// negative between groups, then `flips` distinct edges get their sign
/// inverted. Returns the graph and the planted partition, whose frustration
/// is exactly `flips`.
pub fn planted_clusters(group_sizes: &[usize], flips: usize, seed: u64) -> (SignedGraph, Partition) {
    let n: usize = group_sizes.iter().sum();
    let mut membership = Vec::with_capacity(n);
    for (c, &size) in group_sizes.iter().enumerate() {
        membership.extend(std::iter::repeat_n(c as u32, size));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut signs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            signs.push(if membership[i] == membership[j] { 1i8 } else { -1i8 });
        }
    }
    assert!(flips <= signs.len(), "cannot flip more edges than exist");
    let mut order: Vec<usize> = (0..signs.len()).collect();
    order.shuffle(&mut rng);
    for &idx in order.iter().take(flips) {
        signs[idx] = -signs[idx];
    }

    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut edges = Vec::with_capacity(signs.len());
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            edges.push((labels[i].as_str(), labels[j].as_str(), signs[idx]));
            idx += 1;
        }
    }
    let g = SignedGraph::from_edges(edges).expect("generated edges are valid");
    let p = Partition::new(membership).expect("membership labels are in range");
    (g, p)
}

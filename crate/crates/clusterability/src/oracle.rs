//! Exhaustive reference solver. Enumerates set partitions as
//! restricted-growth strings and keeps exact minima; exists purely as a
//! correctness oracle for the branch-and-bound solver and the heuristic, so
//! it stays deliberately simple: no bounding, no branching order tricks.

use crate::error::{Error, Result};
use crate::frustration;
use crate::graph::{Partition, SignedGraph};

/// Largest node count the oracle will enumerate by default. Bell(12) is
/// about 4.2 million partitions, a couple of seconds of work.
pub const DEFAULT_NODE_LIMIT: usize = 12;

/// Global optimum over partitions of any cluster count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustiveOptimum {
    /// Minimum number of frustrated edges over all partitions.
    pub value: u64,
    /// Lexicographically smallest canonical partition achieving it.
    pub partition: Partition,
    /// Smallest cluster count whose at-most-k optimum equals `value`.
    pub min_optimal_clusters: usize,
}

/// Minimum frustration over partitions into at most `k` clusters, with the
/// lexicographically smallest canonical optimal partition.
pub fn best_partition_at_most_k(g: &SignedGraph, k: usize) -> Result<(u64, Partition)> {
    best_partition_at_most_k_limited(g, k, DEFAULT_NODE_LIMIT)
}

/// Same as [`best_partition_at_most_k`] with an explicit enumeration cap.
pub fn best_partition_at_most_k_limited(
    g: &SignedGraph,
    k: usize,
    node_limit: usize,
) -> Result<(u64, Partition)> {
    let n = g.node_count();
    if n > node_limit {
        return Err(Error::TooLarge { n, limit: node_limit });
    }
    if k < 1 || (n > 0 && k > n) {
        return Err(Error::BadK { k, n });
    }
    if n == 0 {
        return Ok((0, Partition::new(Vec::new())?));
    }
    let mut enumerator = Enumerator::new(g, k, false);
    enumerator.run();
    let best = Partition::new(enumerator.best_assignment)?;
    Ok((enumerator.best_value, best))
}

/// Minimum frustration over all partitions, its witness, and the smallest
/// cluster count at which that minimum is already reachable.
pub fn best_partition(g: &SignedGraph) -> Result<ExhaustiveOptimum> {
    best_partition_limited(g, DEFAULT_NODE_LIMIT)
}

/// Same as [`best_partition`] with an explicit enumeration cap.
pub fn best_partition_limited(g: &SignedGraph, node_limit: usize) -> Result<ExhaustiveOptimum> {
    let n = g.node_count();
    if n > node_limit {
        return Err(Error::TooLarge { n, limit: node_limit });
    }
    if n == 0 {
        return Ok(ExhaustiveOptimum {
            value: 0,
            partition: Partition::new(Vec::new())?,
            min_optimal_clusters: 0,
        });
    }
    let mut enumerator = Enumerator::new(g, n, true);
    enumerator.run();
    let value = enumerator.best_value;
    let min_optimal_clusters = enumerator
        .best_by_cluster_count
        .iter()
        .position(|&v| v == value)
        .map(|idx| idx + 1)
        .expect("the optimum is achieved at some cluster count");
    Ok(ExhaustiveOptimum {
        value,
        partition: Partition::new(enumerator.best_assignment)?,
        min_optimal_clusters,
    })
}

struct Enumerator<'a> {
    /// Earlier neighbors `(j, sign)` with `j < i`, per node.
    earlier: Vec<Vec<(u32, i8)>>,
    cap: usize,
    assignment: Vec<u32>,
    best_value: u64,
    best_assignment: Vec<u32>,
    /// Index `c` holds the best value among partitions using exactly `c + 1`
    /// clusters. Only tracked for the unbounded search.
    best_by_cluster_count: Vec<u64>,
    track_counts: bool,
    g: &'a SignedGraph,
}

impl<'a> Enumerator<'a> {
    fn new(g: &'a SignedGraph, cap: usize, track_counts: bool) -> Self {
        let n = g.node_count();
        let mut earlier = vec![Vec::new(); n];
        for e in g.edges() {
            earlier[e.v as usize].push((e.u, e.sign));
        }
        Enumerator {
            earlier,
            cap,
            assignment: vec![0; n],
            best_value: u64::MAX,
            best_assignment: vec![0; n],
            best_by_cluster_count: vec![u64::MAX; n],
            track_counts,
            g,
        }
    }

    fn run(&mut self) {
        self.recurse(0, 0, 0);
        debug_assert_eq!(
            self.best_value,
            frustration::assignment_frustration(self.g, &self.best_assignment)
        );
    }

    /// Restricted-growth enumeration in lexicographic order: node `i` may take
    /// any label used so far or the next fresh one, capped at `cap`. Cost is
    /// accumulated from edges to already-placed nodes, so leaves evaluate in
    /// O(1) beyond the recursion itself.
    fn recurse(&mut self, i: usize, used: usize, cost: u64) {
        // Strictly worse prefixes cannot reach the optimum; equal-cost ones
        // must survive so per-count minima at the optimum stay exact.
        if cost > self.best_value {
            return;
        }
        if i == self.assignment.len() {
            if cost < self.best_value {
                self.best_value = cost;
                self.best_assignment.copy_from_slice(&self.assignment);
            }
            if self.track_counts && cost < self.best_by_cluster_count[used - 1] {
                self.best_by_cluster_count[used - 1] = cost;
            }
            return;
        }
        let limit = (used + 1).min(self.cap);
        for c in 0..limit as u32 {
            let mut delta = 0u64;
            for &(j, sign) in &self.earlier[i] {
                let same = self.assignment[j as usize] == c;
                if (sign > 0) != same {
                    delta += 1;
                }
            }
            self.assignment[i] = c;
            let now_used = used.max(c as usize + 1);
            self.recurse(i + 1, now_used, cost + delta);
        }
    }
}

//! Frustration evaluation: exact integer counts of edges that contradict a
//! partition, plus the pairwise same-cluster view used by the
//! correlation-clustering model.
//!
//! An edge is *frustrated* under a partition when it is positive with
//! endpoints in different clusters, or negative with endpoints in the same
//! cluster. All arithmetic here is integral; there is no floating point on
//! any counting path.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Partition, SignedGraph, TriadSet};

/// Why an edge counts as frustrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrustrationReason {
    PositiveBetweenClusters,
    NegativeWithinCluster,
}

impl std::fmt::Display for FrustrationReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FrustrationReason::PositiveBetweenClusters => write!(f, "positive-between-clusters"),
            FrustrationReason::NegativeWithinCluster => write!(f, "negative-within-cluster"),
        }
    }
}

/// One frustrated edge and the rule it violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrustratedEdge {
    pub u: u32,
    pub v: u32,
    pub sign: i8,
    pub reason: FrustrationReason,
}

/// Full classification of a graph's edges under one partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrustrationReport {
    /// Total number of frustrated edges.
    pub total: u64,
    pub frustrated_edges: Vec<FrustratedEdge>,
    /// Negative edges inside each cluster, keyed by cluster index.
    pub per_cluster_internal_negative: BTreeMap<u32, u64>,
    /// Positive edges whose endpoints lie in different clusters.
    pub inter_cluster_positive: u64,
}

/// Classifies every edge of `g` under `p`.
pub fn count_frustration(g: &SignedGraph, p: &Partition) -> Result<FrustrationReport> {
    if p.len() != g.node_count() {
        return Err(Error::SizeMismatch {
            expected: g.node_count(),
            got: p.len(),
        });
    }
    let mut report = FrustrationReport {
        total: 0,
        frustrated_edges: Vec::new(),
        per_cluster_internal_negative: BTreeMap::new(),
        inter_cluster_positive: 0,
    };
    for e in g.edges() {
        let same = p.cluster_of(e.u) == p.cluster_of(e.v);
        let reason = match (e.sign > 0, same) {
            (true, false) => FrustrationReason::PositiveBetweenClusters,
            (false, true) => FrustrationReason::NegativeWithinCluster,
            _ => continue,
        };
        report.total += 1;
        report.frustrated_edges.push(FrustratedEdge {
            u: e.u,
            v: e.v,
            sign: e.sign,
            reason,
        });
        match reason {
            FrustrationReason::PositiveBetweenClusters => report.inter_cluster_positive += 1,
            FrustrationReason::NegativeWithinCluster => {
                *report
                    .per_cluster_internal_negative
                    .entry(p.cluster_of(e.u))
                    .or_insert(0) += 1;
            }
        }
    }
    Ok(report)
}

/// Frustration total for a raw assignment slice; hot path for the solvers,
/// which guarantee the length themselves.
pub(crate) fn assignment_frustration(g: &SignedGraph, assignment: &[u32]) -> u64 {
    debug_assert_eq!(assignment.len(), g.node_count());
    let mut total = 0u64;
    for e in g.edges() {
        let same = assignment[e.u as usize] == assignment[e.v as usize];
        if (e.sign > 0) != same {
            total += 1;
        }
    }
    total
}

/// Binary same-cluster indicator over all node pairs `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairIndicator {
    n: usize,
    bits: Vec<bool>,
}

impl PairIndicator {
    /// All pairs apart (the all-singleton relation).
    pub fn new(n: usize) -> Self {
        PairIndicator {
            n,
            bits: vec![false; n * n.saturating_sub(1) / 2],
        }
    }

    /// `y_ij = 1` iff `i` and `j` share a cluster of `p`.
    pub fn from_partition(p: &Partition) -> Self {
        let n = p.len();
        let mut y = PairIndicator::new(n);
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                if p.cluster_of(i) == p.cluster_of(j) {
                    y.set(i, j, true);
                }
            }
        }
        y
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    fn index(&self, i: u32, j: u32) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let (i, j, n) = (i as usize, j as usize, self.n);
        assert!(j < n, "pair ({i}, {j}) out of range for {n} nodes");
        i * (2 * n - i - 1) / 2 + (j - i - 1)
    }

    pub fn get(&self, i: u32, j: u32) -> bool {
        self.bits[self.index(i, j)]
    }

    pub fn set(&mut self, i: u32, j: u32, same: bool) {
        let idx = self.index(i, j);
        self.bits[idx] = same;
    }
}

/// Objective of the pairwise model: sum over edges of `1 - y_ij` for positive
/// edges and `y_ij` for negative edges. Equals the frustration total whenever
/// `y` is derived from a partition.
pub fn pairwise_objective(g: &SignedGraph, y: &PairIndicator) -> u64 {
    assert_eq!(y.node_count(), g.node_count(), "indicator size mismatch");
    let mut total = 0u64;
    for e in g.edges() {
        let same = y.get(e.u, e.v);
        if e.sign > 0 {
            total += u64::from(!same);
        } else {
            total += u64::from(same);
        }
    }
    total
}

/// Returns the triads of `t` on which `y` breaks transitivity: exactly two of
/// the three pair indicators set. Empty iff `y` restricted to `t` is
/// transitive.
pub fn check_transitivity(y: &PairIndicator, t: &TriadSet) -> Vec<(u32, u32, u32)> {
    t.iter()
        .filter(|&(i, j, k)| {
            let set = u8::from(y.get(i, j)) + u8::from(y.get(i, k)) + u8::from(y.get(j, k));
            set == 2
        })
        .collect()
}

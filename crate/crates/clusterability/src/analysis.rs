//! Coalition composition statistics: sizes, attribute summaries and edge-mix
//! ratios for the clusters of a partition.
//!
//! Isolated nodes keep their cluster membership in partition files but are
//! excluded from composition statistics, since their optimal placement is
//! arbitrary. Statistics are reported against the canonicalized partition,
//! so cluster ids match the partition files written by the CLI.

use crate::error::{Error, Result};
use crate::graph::{Partition, SignedGraph};

/// Composition summary of one cluster.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterStats {
    pub cluster: u32,
    /// Member count, isolates excluded.
    pub size: usize,
    /// Median ideology of members (midpoint of the two middle values for
    /// even sizes); `None` for clusters with no non-isolated members.
    pub median_ideology: Option<f64>,
    /// Arithmetic mean effectiveness of members.
    pub mean_effectiveness: Option<f64>,
    /// Negative edges with both endpoints in this cluster.
    pub internal_negative: u64,
    /// Positive edges with exactly one endpoint in this cluster.
    pub external_positive: u64,
}

/// How edges are attributed to coalitions when computing edge mixes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeAttribution {
    /// An edge counts toward every coalition containing one of its
    /// endpoints: internal edges once, cross edges toward both sides.
    #[default]
    PerEndpoint,
    /// Only edges with both endpoints inside the coalition count.
    InternalOnly,
}

/// Edge-sign and co-partisanship tallies for one coalition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoalitionEdgeMix {
    pub cluster: u32,
    pub positive: u64,
    pub negative: u64,
    /// Positive edges whose endpoints share a party.
    pub positive_copartisan: u64,
    /// Negative edges whose endpoints share a party.
    pub negative_copartisan: u64,
}

impl CoalitionEdgeMix {
    /// Negative edges per positive edge; `None` when no positive edges exist
    /// to divide by.
    pub fn negative_to_positive_ratio(&self) -> Option<f64> {
        (self.positive > 0).then(|| self.negative as f64 / self.positive as f64)
    }

    /// Share of negative edges that are co-partisan; `None` on 0/0.
    pub fn fraction_negative_copartisan(&self) -> Option<f64> {
        (self.negative > 0).then(|| self.negative_copartisan as f64 / self.negative as f64)
    }

    /// Share of positive edges that are co-partisan; `None` on 0/0.
    pub fn fraction_positive_copartisan(&self) -> Option<f64> {
        (self.positive > 0).then(|| self.positive_copartisan as f64 / self.positive as f64)
    }
}

/// Per-cluster sizes, ideology medians, effectiveness means and edge counts.
/// Requires ideology and effectiveness on every non-isolated node.
pub fn cluster_stats(g: &SignedGraph, p: &Partition) -> Result<Vec<ClusterStats>> {
    if p.len() != g.node_count() {
        return Err(Error::SizeMismatch {
            expected: g.node_count(),
            got: p.len(),
        });
    }
    let p = p.canonicalize();
    let clusters = p.cluster_count();
    let mut ideologies: Vec<Vec<f64>> = vec![Vec::new(); clusters];
    let mut effectiveness_sum = vec![0.0f64; clusters];
    let mut internal_negative = vec![0u64; clusters];
    let mut external_positive = vec![0u64; clusters];

    for i in 0..g.node_count() as u32 {
        if g.is_isolate(i) {
            continue;
        }
        let c = p.cluster_of(i) as usize;
        ideologies[c].push(g.ideology(i)?);
        effectiveness_sum[c] += g.effectiveness(i)?;
    }
    for e in g.edges() {
        let (cu, cv) = (p.cluster_of(e.u) as usize, p.cluster_of(e.v) as usize);
        if cu == cv {
            if e.sign < 0 {
                internal_negative[cu] += 1;
            }
        } else if e.sign > 0 {
            external_positive[cu] += 1;
            external_positive[cv] += 1;
        }
    }

    Ok((0..clusters)
        .map(|c| {
            let members = &mut ideologies[c];
            members.sort_by(f64::total_cmp);
            let size = members.len();
            ClusterStats {
                cluster: c as u32,
                size,
                median_ideology: median_of_sorted(members),
                mean_effectiveness: (size > 0).then(|| effectiveness_sum[c] / size as f64),
                internal_negative: internal_negative[c],
                external_positive: external_positive[c],
            }
        })
        .collect())
}

fn median_of_sorted(sorted: &[f64]) -> Option<f64> {
    let n = sorted.len();
    if n == 0 {
        return None;
    }
    if n % 2 == 1 {
        Some(sorted[n / 2])
    } else {
        Some((sorted[n / 2 - 1] + sorted[n / 2]) / 2.0)
    }
}

/// Sign and co-partisanship mix of the edges attributed to each coalition.
/// Requires the party attribute on every node incident to an edge.
pub fn edge_mix(
    g: &SignedGraph,
    p: &Partition,
    attribution: EdgeAttribution,
) -> Result<Vec<CoalitionEdgeMix>> {
    if p.len() != g.node_count() {
        return Err(Error::SizeMismatch {
            expected: g.node_count(),
            got: p.len(),
        });
    }
    let p = p.canonicalize();
    let clusters = p.cluster_count();
    let mut mixes: Vec<CoalitionEdgeMix> = (0..clusters)
        .map(|c| CoalitionEdgeMix {
            cluster: c as u32,
            positive: 0,
            negative: 0,
            positive_copartisan: 0,
            negative_copartisan: 0,
        })
        .collect();

    for e in g.edges() {
        let copartisan = g.party(e.u)? == g.party(e.v)?;
        let (cu, cv) = (p.cluster_of(e.u) as usize, p.cluster_of(e.v) as usize);
        let targets: &[usize] = if cu == cv {
            &[cu][..]
        } else {
            match attribution {
                EdgeAttribution::PerEndpoint => &[cu, cv][..],
                EdgeAttribution::InternalOnly => &[][..],
            }
        };
        for &c in targets {
            let mix = &mut mixes[c];
            if e.sign > 0 {
                mix.positive += 1;
                mix.positive_copartisan += u64::from(copartisan);
            } else {
                mix.negative += 1;
                mix.negative_copartisan += u64::from(copartisan);
            }
        }
    }
    Ok(mixes)
}

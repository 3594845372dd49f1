//! CSV interchange formats.
//!
//! * Edge lists: header `source,target,sign`, sign written as the literal
//!   `1` or `-1`.
//! * Node attributes: header `node,party,ideology,effectiveness`.
//! * Partitions: header `node,cluster`, one row per node using the external
//!   labels; arbitrary integer cluster ids are accepted and canonicalized.
//! * Report writers for per-edge classification, cluster statistics and
//!   edge mixes.
//!
//! All files are UTF-8 and comma-separated with no quoting of numeric
//! fields.

use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;

use crate::analysis::{ClusterStats, CoalitionEdgeMix};
use crate::error::{Error, Result};
use crate::frustration::FrustrationReport;
use crate::graph::{NodeAttributes, Partition, SignedGraph};

fn check_headers(headers: &csv::StringRecord, expected: &[&str], what: &str) -> Result<()> {
    let got: Vec<&str> = headers.iter().map(str::trim).collect();
    if got != expected {
        return Err(Error::InvalidFile {
            path: what.into(),
            message: format!(
                "expected header `{}`, found `{}`",
                expected.join(","),
                got.join(",")
            ),
        });
    }
    Ok(())
}

/// Reads an edge-list CSV (`source,target,sign`).
pub fn read_edge_list<R: Read>(reader: R) -> Result<SignedGraph> {
    let mut csv_reader = csv::Reader::from_reader(reader);
    check_headers(csv_reader.headers()?, &["source", "target", "sign"], "edge list")?;
    let mut rows: Vec<(String, String, i8)> = Vec::new();
    for record in csv_reader.records() {
        let record = record?;
        let source = record.get(0).unwrap_or_default().trim().to_string();
        let target = record.get(1).unwrap_or_default().trim().to_string();
        let sign = match record.get(2).map(str::trim) {
            Some("1") => 1,
            Some("-1") => -1,
            other => {
                return Err(Error::InvalidFile {
                    path: "edge list".into(),
                    message: format!(
                        "sign field must be the literal 1 or -1, got `{}`",
                        other.unwrap_or_default()
                    ),
                })
            }
        };
        rows.push((source, target, sign));
    }
    SignedGraph::from_edges(rows.iter().map(|(a, b, s)| (a.as_str(), b.as_str(), *s)))
}

/// Reads an edge-list CSV from a path.
pub fn load_edge_list(path: impl AsRef<Path>) -> Result<SignedGraph> {
    read_edge_list(std::fs::File::open(path)?)
}

/// Writes the graph back out as an edge-list CSV.
pub fn write_edge_list<W: Write>(writer: W, g: &SignedGraph) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["source", "target", "sign"])?;
    for e in g.edges() {
        w.write_record([g.label(e.u), g.label(e.v), &e.sign.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a `node,party,ideology,effectiveness` CSV and attaches the rows to
/// the graph. Unknown labels become isolated nodes when `add_missing` is
/// set, and are an error otherwise.
pub fn read_attributes<R: Read>(reader: R, g: &mut SignedGraph, add_missing: bool) -> Result<()> {
    let mut csv_reader = csv::Reader::from_reader(reader);
    check_headers(
        csv_reader.headers()?,
        &["node", "party", "ideology", "effectiveness"],
        "attributes",
    )?;
    let mut rows = Vec::new();
    for record in csv_reader.records() {
        let record = record?;
        let node = record.get(0).unwrap_or_default().trim().to_string();
        let party = record.get(1).unwrap_or_default().trim().to_string();
        let ideology: f64 = parse_field(record.get(2), "ideology", &node)?;
        let effectiveness: f64 = parse_field(record.get(3), "effectiveness", &node)?;
        if add_missing {
            g.ensure_node(&node)?;
        }
        rows.push((
            node,
            NodeAttributes {
                party,
                ideology,
                effectiveness,
            },
        ));
    }
    g.attach_attributes(rows)
}

/// [`read_attributes`] from a path, erroring on labels absent from the graph.
pub fn load_attributes(path: impl AsRef<Path>, g: &mut SignedGraph) -> Result<()> {
    read_attributes(std::fs::File::open(path)?, g, false)
}

fn parse_field(field: Option<&str>, name: &str, node: &str) -> Result<f64> {
    field
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::MissingAttribute {
            node: node.to_string(),
            attribute: name.to_string(),
        })
}

/// Reads a `node,cluster` CSV covering exactly the nodes of `g` and returns
/// the canonicalized partition.
pub fn read_partition<R: Read>(reader: R, g: &SignedGraph) -> Result<Partition> {
    let mut csv_reader = csv::Reader::from_reader(reader);
    check_headers(csv_reader.headers()?, &["node", "cluster"], "partition")?;
    let mut by_node: HashMap<u32, u64> = HashMap::new();
    for record in csv_reader.records() {
        let record = record?;
        let node = record.get(0).unwrap_or_default().trim();
        let index = g
            .index_of(node)
            .ok_or_else(|| Error::UnknownNode(node.to_string()))?;
        let cluster: u64 = record
            .get(1)
            .unwrap_or_default()
            .trim()
            .parse()
            .map_err(|_| Error::BadClusterIndex {
                index: u64::MAX,
                nodes: g.node_count(),
            })?;
        by_node.insert(index, cluster);
    }
    if by_node.len() != g.node_count() {
        return Err(Error::SizeMismatch {
            expected: g.node_count(),
            got: by_node.len(),
        });
    }
    // Arbitrary ids from external files are remapped to 0..count in node
    // order, which is exactly canonical form.
    let mut relabel: HashMap<u64, u32> = HashMap::new();
    let mut assignment = Vec::with_capacity(g.node_count());
    for i in 0..g.node_count() as u32 {
        let raw = by_node[&i];
        let next = relabel.len() as u32;
        assignment.push(*relabel.entry(raw).or_insert(next));
    }
    Partition::new(assignment)
}

/// [`read_partition`] from a path.
pub fn load_partition(path: impl AsRef<Path>, g: &SignedGraph) -> Result<Partition> {
    read_partition(std::fs::File::open(path)?, g)
}

/// Writes a `node,cluster` CSV using the graph's external labels.
pub fn write_partition<W: Write>(writer: W, g: &SignedGraph, p: &Partition) -> Result<()> {
    if p.len() != g.node_count() {
        return Err(Error::SizeMismatch {
            expected: g.node_count(),
            got: p.len(),
        });
    }
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["node", "cluster"])?;
    for i in 0..g.node_count() as u32 {
        w.write_record([g.label(i), &p.cluster_of(i).to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the per-edge classification CSV
/// (`source,target,sign,frustrated,reason`).
pub fn write_edge_classification<W: Write>(
    writer: W,
    g: &SignedGraph,
    report: &FrustrationReport,
) -> Result<()> {
    let mut frustrated: HashMap<(u32, u32), String> = HashMap::new();
    for fe in &report.frustrated_edges {
        frustrated.insert((fe.u, fe.v), fe.reason.to_string());
    }
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["source", "target", "sign", "frustrated", "reason"])?;
    for e in g.edges() {
        let reason = frustrated.get(&(e.u, e.v));
        w.write_record([
            g.label(e.u),
            g.label(e.v),
            &e.sign.to_string(),
            if reason.is_some() { "1" } else { "0" },
            reason.map(String::as_str).unwrap_or(""),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn fmt_opt(value: Option<f64>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

/// Writes `cluster,size,median_ideology,mean_effectiveness`.
pub fn write_cluster_stats<W: Write>(writer: W, stats: &[ClusterStats]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["cluster", "size", "median_ideology", "mean_effectiveness"])?;
    for s in stats {
        w.write_record([
            s.cluster.to_string(),
            s.size.to_string(),
            fmt_opt(s.median_ideology),
            fmt_opt(s.mean_effectiveness),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `cluster,neg_pos_ratio,frac_neg_copartisan,frac_pos_copartisan`;
/// undefined ratios (0/0) are left empty rather than forced to zero.
pub fn write_edge_mix<W: Write>(writer: W, mixes: &[CoalitionEdgeMix]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record([
        "cluster",
        "neg_pos_ratio",
        "frac_neg_copartisan",
        "frac_pos_copartisan",
    ])?;
    for m in mixes {
        w.write_record([
            m.cluster.to_string(),
            fmt_opt(m.negative_to_positive_ratio()),
            fmt_opt(m.fraction_negative_copartisan()),
            fmt_opt(m.fraction_positive_copartisan()),
        ])?;
    }
    w.flush()?;
    Ok(())
}

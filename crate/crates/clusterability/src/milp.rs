//! Binary linear program export and solution verification.
//!
//! Two model families are emitted in LP text format, so any external MILP
//! solver can cross-validate the native search:
//!
//! * the **k-partition model** ([`write_k_partition_model`]): binaries
//!   `x_<i>_<c>` (node `i` in cluster `c`) and `f_<i>_<j>` (edge `(i, j)`
//!   frustrated), one assignment row per node and one linking row per
//!   (edge, cluster) pair — `n*k + m` binaries, `m*k + n` constraints;
//! * the **clustering model** ([`write_clustering_model`]): binaries
//!   `y_<i>_<j>` for every node pair `i < j` and three transitivity rows per
//!   connected triad — `n*(n-1)/2` binaries, `3*|T|` constraints. The
//!   objective carries an explicit constant equal to the positive edge count
//!   so its optimum equals the frustrated-edge count directly.
//!
//! # Layout
//!
//! The emitted text is byte-stable for a given graph: header comments
//! (`\ ...`) carry the naming scheme and the declared dimensions, the
//! objective lists one term per edge in edge order, constraint rows follow
//! in node/edge/triad order, and the `Binaries` section lists all variables
//! eight per line. Node indices are 0-based positions in the graph's label
//! table.
//!
//! Solution files are parsed as `name value` pairs, one per line; `#` starts
//! a comment and a `# Objective value = <v>` comment, when present, is
//! checked against the recomputed objective. Values are accepted if within
//! `1e-6` of 0 or 1, as external solvers emit floats.

use std::fmt::Write as _;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::frustration::{count_frustration, pairwise_objective, PairIndicator};
use crate::graph::{Partition, SignedGraph};

/// Which model family a file encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// Node-to-cluster assignment with a fixed cluster budget.
    KPartition,
    /// Pairwise same-cluster formulation without a cluster budget.
    Clustering,
}

const BINARIES_PER_LINE: usize = 8;

/// Writes the k-partition model for `g`. `n*k + m` binaries,
/// `m*k + n` constraint rows.
pub fn write_k_partition_model(g: &SignedGraph, k: usize, out: &mut impl Write) -> Result<()> {
    let n = g.node_count();
    if k < 1 || (n > 0 && k > n) {
        return Err(Error::BadK { k, n });
    }
    let m = g.edge_count();
    let binaries = n * k + m;
    let constraints = m * k + n;
    writeln!(out, "\\ k-partition frustration model")?;
    writeln!(
        out,
        "\\ minimize frustrated edges over partitions into at most {k} clusters"
    )?;
    writeln!(
        out,
        "\\ x_<i>_<c> = 1 iff node i is in cluster c; f_<i>_<j> = 1 iff edge (i, j) is frustrated"
    )?;
    writeln!(out, "\\ node indices are 0-based positions in the label table")?;
    writeln!(
        out,
        "\\ nodes={n} edges={m} clusters={k} binaries={binaries} constraints={constraints}"
    )?;
    writeln!(out, "Minimize")?;
    let mut obj = String::from(" obj:");
    if m == 0 {
        obj.push_str(" 0");
    }
    for (idx, e) in g.edges().iter().enumerate() {
        if idx == 0 {
            write!(obj, " f_{}_{}", e.u, e.v).unwrap();
        } else {
            write!(obj, " + f_{}_{}", e.u, e.v).unwrap();
        }
    }
    writeln!(out, "{obj}")?;
    writeln!(out, "Subject To")?;
    for i in 0..n {
        let mut row = format!(" assign_{i}:");
        for c in 0..k {
            if c == 0 {
                write!(row, " x_{i}_{c}").unwrap();
            } else {
                write!(row, " + x_{i}_{c}").unwrap();
            }
        }
        writeln!(out, "{row} = 1")?;
    }
    for e in g.edges() {
        let (i, j) = (e.u, e.v);
        for c in 0..k {
            if e.sign > 0 {
                writeln!(out, " pos_{i}_{j}_{c}: f_{i}_{j} - x_{i}_{c} + x_{j}_{c} >= 0")?;
            } else {
                writeln!(out, " neg_{i}_{j}_{c}: f_{i}_{j} - x_{i}_{c} - x_{j}_{c} >= -1")?;
            }
        }
    }
    writeln!(out, "Binaries")?;
    let names = (0..n)
        .flat_map(|i| (0..k).map(move |c| format!("x_{i}_{c}")))
        .chain(g.edges().iter().map(|e| format!("f_{}_{}", e.u, e.v)));
    write_name_block(out, names)?;
    writeln!(out, "End")?;
    Ok(())
}

/// [`write_k_partition_model`] into a `String`.
pub fn k_partition_model_string(g: &SignedGraph, k: usize) -> Result<String> {
    let mut buf = Vec::new();
    write_k_partition_model(g, k, &mut buf)?;
    Ok(String::from_utf8(buf).expect("model text is ASCII"))
}

/// Writes the clustering model for `g`. `n*(n-1)/2` binaries, `3*|T|`
/// constraint rows over the connected triads `T`.
pub fn write_clustering_model(g: &SignedGraph, out: &mut impl Write) -> Result<()> {
    let n = g.node_count();
    let m = g.edge_count();
    let pairs = n * n.saturating_sub(1) / 2;
    let triads = g.connected_triad_count();
    let constraints = 3 * triads;
    writeln!(out, "\\ correlation clustering frustration model")?;
    writeln!(
        out,
        "\\ minimize frustrated edges over partitions into any number of clusters"
    )?;
    writeln!(
        out,
        "\\ y_<i>_<j> = 1 iff nodes i and j share a cluster (0-based, i < j)"
    )?;
    writeln!(
        out,
        "\\ the objective constant equals the positive edge count so optima are frustration counts"
    )?;
    writeln!(
        out,
        "\\ nodes={n} edges={m} triads={triads} binaries={pairs} constraints={constraints}"
    )?;
    writeln!(out, "Minimize")?;
    let mut obj = format!(" obj: {}", g.positive_edge_count());
    for e in g.edges() {
        if e.sign > 0 {
            write!(obj, " - y_{}_{}", e.u, e.v).unwrap();
        } else {
            write!(obj, " + y_{}_{}", e.u, e.v).unwrap();
        }
    }
    writeln!(out, "{obj}")?;
    writeln!(out, "Subject To")?;
    let mut io_error: Option<io::Error> = None;
    g.for_each_connected_triad(|i, j, k| {
        if io_error.is_some() {
            return;
        }
        let result = (|| -> io::Result<()> {
            writeln!(out, " tri_{i}_{j}_{k}_a: y_{i}_{j} + y_{i}_{k} - y_{j}_{k} <= 1")?;
            writeln!(out, " tri_{i}_{j}_{k}_b: y_{i}_{j} + y_{j}_{k} - y_{i}_{k} <= 1")?;
            writeln!(out, " tri_{i}_{j}_{k}_c: y_{i}_{k} + y_{j}_{k} - y_{i}_{j} <= 1")?;
            Ok(())
        })();
        if let Err(e) = result {
            io_error = Some(e);
        }
    });
    if let Some(e) = io_error {
        return Err(e.into());
    }
    writeln!(out, "Binaries")?;
    let names = (0..n as u32)
        .flat_map(|i| (i + 1..n as u32).map(move |j| format!("y_{i}_{j}")));
    write_name_block(out, names)?;
    writeln!(out, "End")?;
    Ok(())
}

/// [`write_clustering_model`] into a `String`.
pub fn clustering_model_string(g: &SignedGraph) -> Result<String> {
    let mut buf = Vec::new();
    write_clustering_model(g, &mut buf)?;
    Ok(String::from_utf8(buf).expect("model text is ASCII"))
}

fn write_name_block(out: &mut impl Write, names: impl Iterator<Item = String>) -> io::Result<()> {
    let mut line = String::new();
    let mut on_line = 0;
    for name in names {
        line.push(' ');
        line.push_str(&name);
        on_line += 1;
        if on_line == BINARIES_PER_LINE {
            writeln!(out, "{line}")?;
            line.clear();
            on_line = 0;
        }
    }
    if !line.is_empty() {
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// Declared `(binaries, constraints)` of an exported model, read back from
/// the text itself (constraint rows counted, binary names counted).
pub fn model_dimensions(model: &str) -> (usize, usize) {
    let mut constraints = 0;
    let mut binaries = 0;
    let mut section = "";
    for line in model.lines() {
        let trimmed = line.trim();
        match trimmed {
            "Subject To" | "Binaries" | "End" | "Minimize" => {
                section = trimmed;
                continue;
            }
            _ => {}
        }
        match section {
            "Subject To" if trimmed.contains(':') => constraints += 1,
            "Binaries" => binaries += trimmed.split_whitespace().count(),
            _ => {}
        }
    }
    (binaries, constraints)
}

/// A verified partition decoded from an external solver's solution file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImportedSolution {
    pub partition: Partition,
    /// Objective of the solution; always equals the frustration count of
    /// `partition` once verification has passed.
    pub objective: u64,
}

/// Parses a solution file for the given model kind, reconstructs the
/// partition, and verifies it: assignment consistency for the k-partition
/// model, transitivity for the clustering model, and agreement between the
/// reported objective and the recomputed frustration count.
pub fn import_solution(g: &SignedGraph, kind: ModelKind, solution: &str) -> Result<ImportedSolution> {
    let parsed = parse_solution(solution)?;
    match kind {
        ModelKind::KPartition => import_k_partition(g, &parsed),
        ModelKind::Clustering => import_clustering(g, &parsed),
    }
}

struct ParsedSolution {
    values: Vec<(String, bool)>,
    commented_objective: Option<u64>,
}

fn parse_solution(text: &str) -> Result<ParsedSolution> {
    let mut values = Vec::new();
    let mut commented_objective = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(rest) = comment.trim().strip_prefix("Objective value =") {
                commented_objective = rest.trim().parse::<f64>().ok().map(|v| v.round() as u64);
            }
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(name), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::SolutionFormat {
                line: lineno + 1,
                reason: "expected `name value`".to_string(),
            });
        };
        let value: f64 = value.parse().map_err(|_| Error::SolutionFormat {
            line: lineno + 1,
            reason: format!("cannot parse `{value}` as a number"),
        })?;
        let rounded = value.round();
        if (value - rounded).abs() > 1e-6 || !(rounded == 0.0 || rounded == 1.0) {
            return Err(Error::NonBinaryValue {
                name: name.to_string(),
                value,
            });
        }
        values.push((name.to_string(), rounded == 1.0));
    }
    Ok(ParsedSolution {
        values,
        commented_objective,
    })
}

fn split_indices(name: &str, prefix: &str) -> Option<(u32, u32)> {
    let rest = name.strip_prefix(prefix)?;
    let mut parts = rest.split('_');
    let a = parts.next()?.parse().ok()?;
    let b = parts.next()?.parse().ok()?;
    if parts.next().is_some() {
        return None;
    }
    Some((a, b))
}

fn import_k_partition(g: &SignedGraph, parsed: &ParsedSolution) -> Result<ImportedSolution> {
    let n = g.node_count();
    let mut chosen: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut f_total = 0u64;
    for (name, active) in &parsed.values {
        if let Some((i, c)) = split_indices(name, "x_") {
            if (i as usize) >= n || (c as usize) >= n {
                return Err(Error::SolutionFormat {
                    line: 0,
                    reason: format!("variable `{name}` is out of range"),
                });
            }
            if *active {
                chosen[i as usize].push(c);
            }
        } else if let Some((i, j)) = split_indices(name, "f_") {
            if (i as usize) >= n || (j as usize) >= n {
                return Err(Error::SolutionFormat {
                    line: 0,
                    reason: format!("variable `{name}` is out of range"),
                });
            }
            f_total += u64::from(*active);
        } else {
            return Err(Error::SolutionFormat {
                line: 0,
                reason: format!("unknown variable `{name}`"),
            });
        }
    }
    let mut assignment = vec![0u32; n];
    for (i, clusters) in chosen.iter().enumerate() {
        if clusters.len() != 1 {
            return Err(Error::InconsistentAssignment(i as u32, clusters.len()));
        }
        assignment[i] = clusters[0];
    }
    let partition = Partition::new(assignment)?.canonicalize();
    let recomputed = count_frustration(g, &partition)?.total;
    if f_total != recomputed {
        return Err(Error::ObjectiveMismatch {
            reported: f_total,
            recomputed,
        });
    }
    if let Some(reported) = parsed.commented_objective {
        if reported != recomputed {
            return Err(Error::ObjectiveMismatch {
                reported,
                recomputed,
            });
        }
    }
    Ok(ImportedSolution {
        partition,
        objective: recomputed,
    })
}

fn import_clustering(g: &SignedGraph, parsed: &ParsedSolution) -> Result<ImportedSolution> {
    let n = g.node_count();
    let mut y = PairIndicator::new(n);
    for (name, active) in &parsed.values {
        let Some((i, j)) = split_indices(name, "y_") else {
            return Err(Error::SolutionFormat {
                line: 0,
                reason: format!("unknown variable `{name}`"),
            });
        };
        if (i as usize) >= n || (j as usize) >= n || i >= j {
            return Err(Error::SolutionFormat {
                line: 0,
                reason: format!("variable `{name}` is out of range"),
            });
        }
        y.set(i, j, *active);
    }

    // Components of the y = 1 relation, with unlinked nodes kept apart: the
    // finest partition consistent with the indicators.
    let mut assignment = vec![u32::MAX; n];
    let mut next = 0u32;
    for start in 0..n as u32 {
        if assignment[start as usize] != u32::MAX {
            continue;
        }
        let cluster = next;
        next += 1;
        let mut stack = vec![start];
        assignment[start as usize] = cluster;
        while let Some(i) = stack.pop() {
            for j in 0..n as u32 {
                if i != j && assignment[j as usize] == u32::MAX && y.get(i.min(j), i.max(j)) {
                    assignment[j as usize] = cluster;
                    stack.push(j);
                }
            }
        }
    }
    let partition = Partition::new(assignment)?.canonicalize();

    // The closure of a transitive indicator is itself; any pair that joined a
    // component without being marked witnesses a transitivity violation on
    // the full triple set.
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            let same = partition.cluster_of(i) == partition.cluster_of(j);
            if same && !y.get(i, j) {
                return Err(Error::TransitivityViolation(i, j));
            }
        }
    }

    let recomputed = count_frustration(g, &partition)?.total;
    debug_assert_eq!(recomputed, pairwise_objective(g, &y));
    if let Some(reported) = parsed.commented_objective {
        if reported != recomputed {
            return Err(Error::ObjectiveMismatch {
                reported,
                recomputed,
            });
        }
    }
    Ok(ImportedSolution {
        partition,
        objective: recomputed,
    })
}

/// Encodes a partition as a k-partition solution file, the same format
/// [`import_solution`] accepts.
pub fn encode_k_partition_solution(g: &SignedGraph, k: usize, p: &Partition) -> Result<String> {
    let n = g.node_count();
    if k < 1 || (n > 0 && k > n) {
        return Err(Error::BadK { k, n });
    }
    let p = p.canonicalize();
    if p.cluster_count() > k {
        return Err(Error::WarmStartTooWide {
            clusters: p.cluster_count(),
            k,
        });
    }
    let report = count_frustration(g, &p)?;
    let mut out = String::new();
    writeln!(out, "# Objective value = {}", report.total).unwrap();
    for i in 0..n as u32 {
        for c in 0..k as u32 {
            writeln!(out, "x_{i}_{c} {}", u32::from(p.cluster_of(i) == c)).unwrap();
        }
    }
    for e in g.edges() {
        let frustrated = (e.sign > 0) != (p.cluster_of(e.u) == p.cluster_of(e.v));
        writeln!(out, "f_{}_{} {}", e.u, e.v, u32::from(frustrated)).unwrap();
    }
    Ok(out)
}

/// Encodes a partition as a clustering solution file.
pub fn encode_clustering_solution(g: &SignedGraph, p: &Partition) -> Result<String> {
    let report = count_frustration(g, p)?;
    let n = g.node_count();
    let mut out = String::new();
    writeln!(out, "# Objective value = {}", report.total).unwrap();
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            let same = p.cluster_of(i) == p.cluster_of(j);
            writeln!(out, "y_{i}_{j} {}", u32::from(same)).unwrap();
        }
    }
    Ok(out)
}

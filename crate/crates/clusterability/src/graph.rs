//! Signed graphs, node partitions and connected triads.
//!
//! A [`SignedGraph`] is an undirected simple graph whose edges carry a sign
//! of `+1` (collaboration) or `-1` (opposition). Nodes are indexed `0..n` in
//! first-appearance order of their external string labels; all algorithms work
//! on indices and the labels only resurface at the I/O boundary.
//!
//! A [`Partition`] assigns every node to a cluster. Its canonical form is a
//! restricted-growth string: cluster labels appear in increasing order of
//! first use, which removes the label symmetry between otherwise identical
//! partitions.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Per-node attributes carried by the legislative networks.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeAttributes {
    pub party: String,
    /// Ideology score in `[-1, 1]`.
    pub ideology: f64,
    /// Effectiveness score, nonnegative.
    pub effectiveness: f64,
}

/// An undirected signed edge with `u < v` and `sign` in `{-1, +1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    pub sign: i8,
}

/// Immutable signed network. Construct with [`SignedGraph::from_edges`],
/// optionally attach attributes, then share freely across threads.
#[derive(Debug, Clone)]
pub struct SignedGraph {
    labels: Vec<String>,
    label_index: HashMap<String, u32>,
    edges: Vec<Edge>,
    /// Sorted neighbor lists `(neighbor, sign)` per node.
    adj: Vec<Vec<(u32, i8)>>,
    m_plus: usize,
    m_minus: usize,
    attributes: Vec<Option<NodeAttributes>>,
}

impl SignedGraph {
    /// Builds a graph from `(label, label, sign)` triples.
    ///
    /// Nodes are indexed in first-appearance order. Self-loops, repeated
    /// unordered pairs (with any signs) and signs outside `{-1, +1}` are
    /// rejected.
    pub fn from_edges<'a, I>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str, i8)>,
    {
        let mut g = SignedGraph {
            labels: Vec::new(),
            label_index: HashMap::new(),
            edges: Vec::new(),
            adj: Vec::new(),
            m_plus: 0,
            m_minus: 0,
            attributes: Vec::new(),
        };
        let mut seen: HashMap<(u32, u32), ()> = HashMap::new();
        for (a, b, sign) in edges {
            if sign != 1 && sign != -1 {
                return Err(Error::BadSign(sign as i64));
            }
            if a == b {
                return Err(Error::SelfLoop(a.to_string()));
            }
            let i = g.intern(a)?;
            let j = g.intern(b)?;
            let (u, v) = if i < j { (i, j) } else { (j, i) };
            if seen.insert((u, v), ()).is_some() {
                return Err(Error::DuplicateEdge(
                    g.labels[u as usize].clone(),
                    g.labels[v as usize].clone(),
                ));
            }
            g.edges.push(Edge { u, v, sign });
            g.adj[u as usize].push((v, sign));
            g.adj[v as usize].push((u, sign));
            if sign > 0 {
                g.m_plus += 1;
            } else {
                g.m_minus += 1;
            }
        }
        for nbrs in &mut g.adj {
            nbrs.sort_unstable_by_key(|&(j, _)| j);
        }
        Ok(g)
    }

    /// Adds an isolated node if the label is new; returns its index.
    ///
    /// Lets loaders preserve nodes that appear in an attribute file but have
    /// no edges.
    pub fn ensure_node(&mut self, label: &str) -> Result<u32> {
        self.intern(label)
    }

    fn intern(&mut self, label: &str) -> Result<u32> {
        if label.is_empty() {
            return Err(Error::EmptyLabel);
        }
        if let Some(&i) = self.label_index.get(label) {
            return Ok(i);
        }
        let i = self.labels.len() as u32;
        self.labels.push(label.to_string());
        self.label_index.insert(label.to_string(), i);
        self.adj.push(Vec::new());
        self.attributes.push(None);
        Ok(i)
    }

    /// Attaches attributes by node label. Every label must name an existing
    /// node; later rows overwrite earlier ones.
    pub fn attach_attributes<I>(&mut self, rows: I) -> Result<()>
    where
        I: IntoIterator<Item = (String, NodeAttributes)>,
    {
        for (label, attrs) in rows {
            let i = *self
                .label_index
                .get(&label)
                .ok_or(Error::UnknownNode(label))?;
            self.attributes[i as usize] = Some(attrs);
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn positive_edge_count(&self) -> usize {
        self.m_plus
    }

    pub fn negative_edge_count(&self) -> usize {
        self.m_minus
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: u32) -> &str {
        &self.labels[i as usize]
    }

    pub fn index_of(&self, label: &str) -> Option<u32> {
        self.label_index.get(label).copied()
    }

    /// Adjacency entry `a_ij` in `{-1, 0, +1}`; `a_ii = 0`.
    pub fn sign(&self, i: u32, j: u32) -> i8 {
        if i == j {
            return 0;
        }
        match self.adj[i as usize].binary_search_by_key(&j, |&(v, _)| v) {
            Ok(pos) => self.adj[i as usize][pos].1,
            Err(_) => 0,
        }
    }

    /// Sorted `(neighbor, sign)` pairs of node `i`.
    pub fn neighbors(&self, i: u32) -> &[(u32, i8)] {
        &self.adj[i as usize]
    }

    pub fn degree(&self, i: u32) -> usize {
        self.adj[i as usize].len()
    }

    pub fn is_isolate(&self, i: u32) -> bool {
        self.adj[i as usize].is_empty()
    }

    pub fn attributes(&self, i: u32) -> Option<&NodeAttributes> {
        self.attributes[i as usize].as_ref()
    }

    fn require_attributes(&self, i: u32, attribute: &str) -> Result<&NodeAttributes> {
        self.attributes(i).ok_or_else(|| Error::MissingAttribute {
            node: self.label(i).to_string(),
            attribute: attribute.to_string(),
        })
    }

    pub(crate) fn party(&self, i: u32) -> Result<&str> {
        Ok(&self.require_attributes(i, "party")?.party)
    }

    pub(crate) fn ideology(&self, i: u32) -> Result<f64> {
        Ok(self.require_attributes(i, "ideology")?.ideology)
    }

    pub(crate) fn effectiveness(&self, i: u32) -> Result<f64> {
        Ok(self.require_attributes(i, "effectiveness")?.effectiveness)
    }

    /// Groups nodes by a categorical attribute value, canonicalized.
    ///
    /// Currently `party` is the only categorical attribute.
    pub fn attribute_partition(&self, attribute: &str) -> Result<Partition> {
        if attribute != "party" {
            return Err(Error::UnknownAttribute(attribute.to_string()));
        }
        let mut by_value: HashMap<&str, u32> = HashMap::new();
        let mut assignment = Vec::with_capacity(self.node_count());
        for i in 0..self.node_count() as u32 {
            let value = self.party(i)?;
            let next = by_value.len() as u32;
            assignment.push(*by_value.entry(value).or_insert(next));
        }
        Ok(Partition::new(assignment)?.canonicalize())
    }

    /// Calls `f(i, j, k)` for every connected triad: a triple `i < j < k`
    /// joined by at least two edges.
    pub fn for_each_connected_triad<F: FnMut(u32, u32, u32)>(&self, mut f: F) {
        let n = self.node_count();
        if n < 3 {
            return;
        }
        // Dense O(n^3 / 6) sweep emits triads in lexicographic order, which
        // keeps model exports byte-stable. Adequate up to a few thousand
        // nodes; beyond that enumerate sparsely and sort.
        if n <= 4096 {
            let mut mat = vec![0i8; n * n];
            for e in &self.edges {
                mat[e.u as usize * n + e.v as usize] = e.sign;
                mat[e.v as usize * n + e.u as usize] = e.sign;
            }
            for i in 0..n {
                for j in i + 1..n {
                    let ij = (mat[i * n + j] != 0) as u8;
                    for k in j + 1..n {
                        let cnt =
                            ij + (mat[i * n + k] != 0) as u8 + (mat[j * n + k] != 0) as u8;
                        if cnt >= 2 {
                            f(i as u32, j as u32, k as u32);
                        }
                    }
                }
            }
        } else {
            let mut triads = self.sparse_triads();
            triads.sort_unstable();
            for (i, j, k) in triads {
                f(i, j, k);
            }
        }
    }

    fn sparse_triads(&self) -> Vec<(u32, u32, u32)> {
        let mut out = Vec::new();
        // Triads whose two largest nodes both see the smallest pair member:
        // enumerate pairs of below-k neighbors at the top node k.
        for k in 0..self.node_count() as u32 {
            let below: Vec<u32> = self.adj[k as usize]
                .iter()
                .map(|&(j, _)| j)
                .filter(|&j| j < k)
                .collect();
            for a in 0..below.len() {
                for b in a + 1..below.len() {
                    out.push((below[a], below[b], k));
                }
            }
        }
        // Remaining triads have the edge (i, j) plus exactly one edge to k.
        for e in &self.edges {
            let (i, j) = (e.u, e.v);
            for &(k, _) in &self.adj[i as usize] {
                if k > j && self.sign(j, k) == 0 {
                    out.push((i, j, k));
                }
            }
            for &(k, _) in &self.adj[j as usize] {
                if k > j && self.sign(i, k) == 0 {
                    out.push((i, j, k));
                }
            }
        }
        out
    }

    /// The set of connected triads, ordered lexicographically.
    pub fn connected_triads(&self) -> TriadSet {
        let mut triads = Vec::new();
        self.for_each_connected_triad(|i, j, k| triads.push((i, j, k)));
        TriadSet { triads }
    }

    /// `|T|` without materializing the triad list.
    pub fn connected_triad_count(&self) -> u64 {
        let mut count = 0u64;
        self.for_each_connected_triad(|_, _, _| count += 1);
        count
    }
}

/// Node triples `i < j < k` connected by at least two edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriadSet {
    triads: Vec<(u32, u32, u32)>,
}

impl TriadSet {
    /// All `C(n, 3)` triples; the full constraint support used by
    /// transitivity checks in tests and solution verification.
    pub fn complete(n: usize) -> Self {
        let mut triads = Vec::new();
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                for k in j + 1..n as u32 {
                    triads.push((i, j, k));
                }
            }
        }
        TriadSet { triads }
    }

    pub fn len(&self) -> usize {
        self.triads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triads.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        self.triads.iter().copied()
    }

    pub fn as_slice(&self) -> &[(u32, u32, u32)] {
        &self.triads
    }
}

/// Assignment of every node to a cluster index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    assignment: Vec<u32>,
    cluster_count: usize,
}

impl Partition {
    /// Wraps an assignment vector; every index must be below the node count.
    pub fn new(assignment: Vec<u32>) -> Result<Self> {
        let n = assignment.len();
        for &c in &assignment {
            if c as usize >= n {
                return Err(Error::BadClusterIndex {
                    index: c as u64,
                    nodes: n,
                });
            }
        }
        let cluster_count = distinct(&assignment);
        Ok(Partition {
            assignment,
            cluster_count,
        })
    }

    /// Every node in its own cluster.
    pub fn singletons(n: usize) -> Self {
        Partition {
            assignment: (0..n as u32).collect(),
            cluster_count: n,
        }
    }

    /// All nodes in one cluster (empty for `n = 0`).
    pub fn single_cluster(n: usize) -> Self {
        Partition {
            assignment: vec![0; n],
            cluster_count: usize::from(n > 0),
        }
    }

    /// Builds a partition of `n` nodes from explicit node groups. Groups must
    /// be disjoint and cover `0..n`.
    pub fn from_groups(n: usize, groups: &[&[usize]]) -> Result<Self> {
        let mut assignment = vec![u32::MAX; n];
        for (c, group) in groups.iter().enumerate() {
            for &i in *group {
                if i >= n || assignment[i] != u32::MAX {
                    return Err(Error::BadClusterIndex {
                        index: i as u64,
                        nodes: n,
                    });
                }
                assignment[i] = c as u32;
            }
        }
        if assignment.contains(&u32::MAX) {
            return Err(Error::SizeMismatch {
                expected: n,
                got: groups.iter().map(|g| g.len()).sum(),
            });
        }
        Partition::new(assignment)
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Cluster index of node `i`.
    pub fn cluster_of(&self, i: u32) -> u32 {
        self.assignment[i as usize]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.assignment
    }

    /// Number of distinct clusters in use.
    pub fn cluster_count(&self) -> usize {
        self.cluster_count
    }

    /// Relabels clusters in first-appearance order, yielding the canonical
    /// restricted-growth form. Frustration counts are unaffected.
    pub fn canonicalize(&self) -> Partition {
        Partition {
            assignment: canonical_labels(&self.assignment),
            cluster_count: self.cluster_count,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.assignment == canonical_labels(&self.assignment)
    }

    /// Node indices grouped per cluster, in canonical cluster order.
    pub fn clusters(&self) -> Vec<Vec<u32>> {
        let canon = self.canonicalize();
        let mut groups = vec![Vec::new(); canon.cluster_count];
        for (i, &c) in canon.assignment.iter().enumerate() {
            groups[c as usize].push(i as u32);
        }
        groups
    }
}

fn canonical_labels(assignment: &[u32]) -> Vec<u32> {
    let mut relabel: HashMap<u32, u32> = HashMap::new();
    assignment
        .iter()
        .map(|&c| {
            let next = relabel.len() as u32;
            *relabel.entry(c).or_insert(next)
        })
        .collect()
}

fn distinct(assignment: &[u32]) -> usize {
    let mut seen: Vec<u32> = assignment.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> SignedGraph {
        SignedGraph::from_edges([
            ("1", "3", 1),
            ("2", "3", 1),
            ("1", "4", -1),
            ("1", "5", -1),
            ("2", "5", -1),
            ("3", "4", -1),
            ("4", "5", -1),
        ])
        .unwrap()
    }

    #[test]
    fn toy_counts() {
        let g = toy();
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.edge_count(), 7);
        assert_eq!(g.positive_edge_count(), 2);
        assert_eq!(g.negative_edge_count(), 5);
        // First-appearance interning: "1"=0, "3"=1, "2"=2, "4"=3, "5"=4.
        assert_eq!(g.index_of("3"), Some(1));
        assert_eq!(g.sign(0, 1), 1); // "1"-"3"
        assert_eq!(g.sign(1, 0), 1);
        assert_eq!(g.sign(0, 2), 0); // "1"-"2" not adjacent
        assert_eq!(g.sign(0, 0), 0);
    }

    #[test]
    fn empty_edge_list() {
        let g = SignedGraph::from_edges([]).unwrap();
        assert_eq!(g.node_count(), 0);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn duplicate_edge_rejected() {
        let err = SignedGraph::from_edges([("a", "b", 1), ("a", "b", -1)]).unwrap_err();
        assert!(matches!(err, Error::DuplicateEdge(_, _)));
        // Reversed orientation is the same unordered pair.
        let err = SignedGraph::from_edges([("a", "b", 1), ("b", "a", 1)]).unwrap_err();
        assert!(matches!(err, Error::DuplicateEdge(_, _)));
    }

    #[test]
    fn self_loop_and_bad_sign_rejected() {
        assert!(matches!(
            SignedGraph::from_edges([("a", "a", 1)]).unwrap_err(),
            Error::SelfLoop(_)
        ));
        assert!(matches!(
            SignedGraph::from_edges([("a", "b", 2)]).unwrap_err(),
            Error::BadSign(2)
        ));
        assert!(matches!(
            SignedGraph::from_edges([("a", "b", 0)]).unwrap_err(),
            Error::BadSign(0)
        ));
    }

    /// Independent count over all C(5,3) triples, straight off the edge list.
    fn triad_count_by_enumeration(edges: &[(usize, usize)], n: usize) -> usize {
        let has = |a: usize, b: usize| edges.iter().any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b));
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let edges_in =
                        has(i, j) as usize + has(i, k) as usize + has(j, k) as usize;
                    if edges_in >= 2 {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn toy_has_nine_connected_triads() {
        // The toy edge set in index space ("1"=0, "3"=1, "2"=2, "4"=3, "5"=4).
        let pairs = [(0, 1), (1, 2), (0, 3), (0, 4), (2, 4), (1, 3), (3, 4)];
        assert_eq!(triad_count_by_enumeration(&pairs, 5), 9);
        let g = toy();
        let t = g.connected_triads();
        assert_eq!(t.len(), 9);
        assert_eq!(g.connected_triad_count(), 9);
        // Strictly ordered, listed once.
        let mut sorted = t.as_slice().to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), t.len());
        assert!(t.iter().all(|(i, j, k)| i < j && j < k));
    }

    #[test]
    fn edgeless_and_triangle_triads() {
        let mut g = SignedGraph::from_edges([]).unwrap();
        for l in ["a", "b", "c", "d"] {
            g.ensure_node(l).unwrap();
        }
        assert_eq!(g.connected_triads().len(), 0);

        let tri = SignedGraph::from_edges([("a", "b", 1), ("b", "c", 1), ("a", "c", 1)]).unwrap();
        assert_eq!(tri.connected_triads().len(), 1);
    }

    #[test]
    fn sparse_triad_path_matches_dense() {
        let g = toy();
        let mut sparse = g.sparse_triads();
        sparse.sort_unstable();
        assert_eq!(sparse, g.connected_triads().as_slice().to_vec());
    }

    #[test]
    fn canonicalize_examples() {
        let p = Partition::new(vec![2, 2, 2, 0, 0]).unwrap();
        assert_eq!(p.canonicalize().as_slice(), &[0, 0, 0, 1, 1]);
        let p = Partition::new(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(p.canonicalize().as_slice(), &[0, 1, 2, 3]);
        let p = Partition::new(vec![1, 0, 1]).unwrap();
        assert_eq!(p.canonicalize().as_slice(), &[0, 1, 0]);
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let p = Partition::new(vec![4, 1, 4, 3, 1, 0]).unwrap();
        let once = p.canonicalize();
        assert_eq!(once, once.canonicalize());
        assert!(once.is_canonical());
        assert_eq!(once.cluster_count(), p.cluster_count());
    }

    #[test]
    fn partition_validation() {
        assert!(matches!(
            Partition::new(vec![0, 5, 1]).unwrap_err(),
            Error::BadClusterIndex { .. }
        ));
        let p = Partition::from_groups(5, &[&[0, 1, 2], &[3, 4]]).unwrap();
        assert_eq!(p.as_slice(), &[0, 0, 0, 1, 1]);
        assert!(Partition::from_groups(3, &[&[0, 1]]).is_err());
        assert!(Partition::from_groups(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    fn attributed(parties: &[&str]) -> SignedGraph {
        let mut g = SignedGraph::from_edges([]).unwrap();
        let labels: Vec<String> = (0..parties.len()).map(|i| format!("n{i}")).collect();
        for l in &labels {
            g.ensure_node(l).unwrap();
        }
        g.attach_attributes(parties.iter().zip(&labels).map(|(p, l)| {
            (
                l.clone(),
                NodeAttributes {
                    party: p.to_string(),
                    ideology: 0.0,
                    effectiveness: 1.0,
                },
            )
        }))
        .unwrap();
        g
    }

    #[test]
    fn attribute_partition_examples() {
        let g = attributed(&["D", "D", "R", "R"]);
        assert_eq!(g.attribute_partition("party").unwrap().as_slice(), &[0, 0, 1, 1]);

        let g = attributed(&["D", "D", "D"]);
        assert_eq!(g.attribute_partition("party").unwrap().as_slice(), &[0, 0, 0]);

        let g = attributed(&["D", "R", "I", "D"]);
        assert_eq!(g.attribute_partition("party").unwrap().as_slice(), &[0, 1, 2, 0]);
    }

    #[test]
    fn attribute_partition_errors() {
        let mut g = attributed(&["D", "R"]);
        g.ensure_node("late").unwrap();
        assert!(matches!(
            g.attribute_partition("party").unwrap_err(),
            Error::MissingAttribute { .. }
        ));
        let g = attributed(&["D"]);
        assert!(matches!(
            g.attribute_partition("ideology").unwrap_err(),
            Error::UnknownAttribute(_)
        ));
    }

    #[test]
    fn triad_count_bounded_by_all_triples() {
        let g = toy();
        let n = g.node_count() as u64;
        assert!(g.connected_triad_count() <= n * (n - 1) * (n - 2) / 6);
        assert_eq!(TriadSet::complete(5).len(), 10);
    }
}

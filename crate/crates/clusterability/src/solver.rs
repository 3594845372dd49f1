//! Exact branch-and-bound search for minimum-frustration partitions, with and
//! without a cap on the number of clusters.
//!
//! The search assigns nodes to clusters one at a time in descending-degree
//! order. Cluster labels follow restricted-growth order (a node may reuse any
//! label seen so far or open the next fresh one), which eliminates the
//! factorial label symmetry between equivalent partitions. At every search
//! node the incumbent is compared against an admissible lower bound built
//! from three disjoint edge classes:
//!
//! 1. frustration already fixed among assigned nodes,
//! 2. for each unassigned node, the cheapest frustration it must incur on its
//!    edges toward assigned nodes, over every cluster still open to it,
//! 3. a greedy packing of edge-disjoint triangles among unassigned nodes that
//!    cannot be partitioned without frustration: triangles with exactly one
//!    negative edge always cost at least one, and all-negative triangles cost
//!    at least one when at most two clusters are allowed.
//!
//! The incumbent starts from the local-search heuristic, so search only has
//! to prove optimality or improve on it. A completed run returns
//! [`SolveStatus::Optimal`] with a lower-bound certificate equal to the
//! optimum; an interrupted run returns [`SolveStatus::FeasibleBound`] with
//! the incumbent and the best global lower bound established so far.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frustration::assignment_frustration;
use crate::graph::{Partition, SignedGraph};
use crate::heuristic::{local_search, HeuristicConfig};
use crate::DEFAULT_SEED;

/// Outcome quality of a solve. There is no infeasible outcome: every
/// assignment of nodes to clusters is feasible, so search always holds a
/// partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// The incumbent is provably optimal: best bound equals its value.
    Optimal,
    /// Interrupted by the time budget; the incumbent is feasible and the
    /// reported lower bound is valid, but they need not coincide.
    FeasibleBound,
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolveStatus::Optimal => write!(f, "optimal"),
            SolveStatus::FeasibleBound => write!(f, "feasible-bound"),
        }
    }
}

/// Result of one exact solve.
#[derive(Debug, Clone)]
pub struct SolveResult {
    /// Value of the returned partition (the optimum when status is Optimal).
    pub optimum: u64,
    pub partition: Partition,
    /// Proven global lower bound; equals `optimum` when status is Optimal.
    pub lower_bound: u64,
    /// Node-to-cluster assignments tried during search.
    pub nodes_explored: u64,
    pub wall_time: Duration,
    /// Cluster cap the solve ran under; `None` for the unbounded search.
    pub k_limit: Option<usize>,
    pub status: SolveStatus,
}

/// Tuning and budget knobs shared by all solve entry points.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Wall-clock budget; `None` runs to proven optimality.
    pub time_limit: Option<Duration>,
    /// Worker threads; 0 uses all available cores, 1 is fully serial.
    pub threads: usize,
    /// Force single-threaded search so the returned partition (not just its
    /// value) is reproducible run to run.
    pub deterministic: bool,
    /// Seed for the warm-start heuristic.
    pub seed: u64,
    /// Restarts for the warm-start heuristic.
    pub restarts: usize,
    /// Optional feasible partition used to initialize the incumbent.
    pub warm_start: Option<Partition>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            time_limit: None,
            threads: 1,
            deterministic: false,
            seed: DEFAULT_SEED,
            restarts: 8,
            warm_start: None,
        }
    }
}

/// Minimum frustration over partitions into at most `k` clusters.
pub fn solve_k(g: &SignedGraph, k: usize) -> Result<SolveResult> {
    solve_k_with(g, k, &SolveOptions::default())
}

/// [`solve_k`] with explicit options.
pub fn solve_k_with(g: &SignedGraph, k: usize, opts: &SolveOptions) -> Result<SolveResult> {
    solve_impl(g, Some(k), opts)
}

/// Minimum frustration over partitions of any cluster count.
pub fn solve_unbounded(g: &SignedGraph) -> Result<SolveResult> {
    solve_unbounded_with(g, &SolveOptions::default())
}

/// [`solve_unbounded`] with explicit options.
pub fn solve_unbounded_with(g: &SignedGraph, opts: &SolveOptions) -> Result<SolveResult> {
    solve_impl(g, None, opts)
}

/// Smallest cluster count at which the at-most-k optimum stops improving.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KMinStar {
    Exact(usize),
    /// No k within the requested range reaches the unbounded optimum.
    GreaterThan(usize),
    /// At least one solve was interrupted, so stagnation cannot be certified.
    Unresolved,
}

impl std::fmt::Display for KMinStar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KMinStar::Exact(k) => write!(f, "{k}"),
            KMinStar::GreaterThan(k) => write!(f, ">{k}"),
            KMinStar::Unresolved => write!(f, "unresolved"),
        }
    }
}

/// Per-k optima together with the unbounded optimum and the stagnation point.
#[derive(Debug, Clone)]
pub struct StagnationCurve {
    pub per_k: BTreeMap<usize, SolveResult>,
    pub unbounded: SolveResult,
    pub k_min_star: KMinStar,
}

impl StagnationCurve {
    /// Map `k -> optimum` for the requested range.
    pub fn values(&self) -> BTreeMap<usize, u64> {
        self.per_k.iter().map(|(&k, r)| (k, r.optimum)).collect()
    }

    /// The unbounded optimum.
    pub fn c_of_g(&self) -> u64 {
        self.unbounded.optimum
    }

    pub fn complete(&self) -> bool {
        self.unbounded.status == SolveStatus::Optimal
            && self
                .per_k
                .values()
                .all(|r| r.status == SolveStatus::Optimal)
    }
}

/// Solves for every `k` in `1..=k_max` plus the unbounded problem, applying
/// the time budget to each solve separately, and locates the smallest `k`
/// whose optimum equals the unbounded one.
pub fn stagnation_curve(g: &SignedGraph, k_max: usize, opts: &SolveOptions) -> Result<StagnationCurve> {
    let n = g.node_count();
    if k_max < 1 || (n > 0 && k_max > n) {
        return Err(Error::BadK { k: k_max, n });
    }
    let mut per_k = BTreeMap::new();
    for k in 1..=k_max {
        per_k.insert(k, solve_k_with(g, k, opts)?);
    }
    let unbounded = solve_unbounded_with(g, opts)?;
    let all_optimal = unbounded.status == SolveStatus::Optimal
        && per_k.values().all(|r| r.status == SolveStatus::Optimal);
    let k_min_star = if !all_optimal {
        KMinStar::Unresolved
    } else {
        per_k
            .iter()
            .find(|(_, r)| r.optimum == unbounded.optimum)
            .map(|(&k, _)| KMinStar::Exact(k))
            .unwrap_or(KMinStar::GreaterThan(k_max))
    };
    Ok(StagnationCurve {
        per_k,
        unbounded,
        k_min_star,
    })
}

fn solve_impl(g: &SignedGraph, k_limit: Option<usize>, opts: &SolveOptions) -> Result<SolveResult> {
    let started = Instant::now();
    let n = g.node_count();
    if let Some(k) = k_limit {
        if k < 1 || (n > 0 && k > n) {
            return Err(Error::BadK { k, n });
        }
    }
    if n == 0 {
        return Ok(trivial_result(Partition::single_cluster(0), k_limit, started));
    }
    let k = k_limit.unwrap_or(n).min(n);
    if g.edge_count() == 0 {
        return Ok(trivial_result(Partition::single_cluster(n), k_limit, started));
    }
    if let Some(w) = &opts.warm_start {
        if w.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                got: w.len(),
            });
        }
        if w.cluster_count() > k {
            return Err(Error::WarmStartTooWide {
                clusters: w.cluster_count(),
                k,
            });
        }
    }

    let heuristic_cfg = HeuristicConfig {
        max_clusters: Some(k),
        restarts: opts.restarts,
        rng_seed: opts.seed,
        ..HeuristicConfig::default()
    };
    let (upper, warm) = local_search(g, &heuristic_cfg, opts.warm_start.as_ref());
    if upper == 0 {
        // Frustration counts are nonnegative, so the incumbent is optimal.
        return Ok(SolveResult {
            optimum: 0,
            partition: warm.canonicalize(),
            lower_bound: 0,
            nodes_explored: 0,
            wall_time: started.elapsed(),
            k_limit,
            status: SolveStatus::Optimal,
        });
    }

    let ctx = Context::new(g, k);
    let shared = Shared {
        best: Mutex::new((upper, warm.as_slice().to_vec())),
        incumbent: AtomicU64::new(upper),
        interrupted: AtomicBool::new(false),
        deadline: opts.time_limit.map(|limit| started + limit),
        nodes: AtomicU64::new(0),
    };

    let threads = if opts.deterministic {
        1
    } else if opts.threads == 0 {
        std::thread::available_parallelism().map_or(1, |p| p.get())
    } else {
        opts.threads
    };

    let pending_bounds: Vec<u64> = if threads > 1 {
        let prefixes = ctx.frontier(threads * 8);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool construction cannot fail with positive size");
        pool.install(|| {
            prefixes
                .par_iter()
                .map(|prefix| run_subtree(&ctx, &shared, prefix))
                .collect()
        })
    } else {
        vec![run_subtree(&ctx, &shared, &[])]
    };

    let (optimum, assignment) = shared.best.into_inner().expect("search holds no poisoned lock");
    debug_assert_eq!(optimum, assignment_frustration(g, &assignment));
    let interrupted = shared.interrupted.load(Ordering::Relaxed);
    let lower_bound = if interrupted {
        pending_bounds
            .into_iter()
            .min()
            .unwrap_or(optimum)
            .min(optimum)
    } else {
        optimum
    };
    Ok(SolveResult {
        optimum,
        partition: Partition::new(assignment)?.canonicalize(),
        lower_bound,
        nodes_explored: shared.nodes.load(Ordering::Relaxed),
        wall_time: started.elapsed(),
        k_limit,
        status: if interrupted {
            SolveStatus::FeasibleBound
        } else {
            SolveStatus::Optimal
        },
    })
}

fn trivial_result(partition: Partition, k_limit: Option<usize>, started: Instant) -> SolveResult {
    SolveResult {
        optimum: 0,
        partition,
        lower_bound: 0,
        nodes_explored: 0,
        wall_time: started.elapsed(),
        k_limit,
        status: SolveStatus::Optimal,
    }
}

/// Runs one DFS task rooted at `prefix` (labels for the first positions in
/// branching order). Returns `u64::MAX` when the subtree was fully explored
/// or pruned, otherwise a valid lower bound on every leaf left unexplored.
fn run_subtree(ctx: &Context, shared: &Shared, prefix: &[u32]) -> u64 {
    let mut dfs = Dfs::new(ctx, shared);
    for (pos, &c) in prefix.iter().enumerate() {
        dfs.apply(pos, c);
    }
    let used = prefix.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    dfs.search(prefix.len(), used);
    shared.nodes.fetch_add(dfs.nodes, Ordering::Relaxed);
    dfs.pending_lower_bound
}

struct Shared {
    /// Best feasible value and its assignment in original node order.
    best: Mutex<(u64, Vec<u32>)>,
    /// Mirror of `best.0` for cheap lock-free reads.
    incumbent: AtomicU64,
    interrupted: AtomicBool,
    deadline: Option<Instant>,
    nodes: AtomicU64,
}

/// Immutable per-solve data in branching-position space.
struct Context<'a> {
    g: &'a SignedGraph,
    n: usize,
    k: usize,
    /// position -> original node index
    order: Vec<u32>,
    /// adjacency between positions, sorted
    adj: Vec<Vec<(u32, i8)>>,
    /// packing[d] = admissible triangle bound over positions >= d
    packing: Vec<u64>,
}

/// Triangle enumeration is skipped beyond this size; the bound simply
/// degrades to zero, which stays admissible.
const PACKING_NODE_LIMIT: usize = 512;
const PACKING_TRIANGLE_LIMIT: usize = 100_000;

impl<'a> Context<'a> {
    fn new(g: &'a SignedGraph, k: usize) -> Self {
        let n = g.node_count();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let mut pos_of = vec![0u32; n];
        for (pos, &v) in order.iter().enumerate() {
            pos_of[v as usize] = pos as u32;
        }
        let mut adj = vec![Vec::new(); n];
        for (pos, &v) in order.iter().enumerate() {
            adj[pos] = g
                .neighbors(v)
                .iter()
                .map(|&(u, s)| (pos_of[u as usize], s))
                .collect();
            adj[pos].sort_unstable_by_key(|&(q, _)| q);
        }
        let packing = triangle_packing_bounds(n, k, &adj);
        Context {
            g,
            n,
            k,
            order,
            adj,
            packing,
        }
    }

    /// Breadth-first expansion of assignment prefixes until at least
    /// `target` independent subtrees exist.
    fn frontier(&self, target: usize) -> Vec<Vec<u32>> {
        let mut queue: VecDeque<Vec<u32>> = VecDeque::from([Vec::new()]);
        while queue.len() < target {
            let Some(prefix) = queue.pop_front() else {
                break;
            };
            if prefix.len() == self.n {
                queue.push_back(prefix);
                break; // everything is already a full assignment
            }
            let used = prefix.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
            let limit = (used + 1).min(self.k);
            for c in 0..limit as u32 {
                let mut child = prefix.clone();
                child.push(c);
                queue.push_back(child);
            }
        }
        queue.into()
    }
}

/// Lower bounds from edge-disjoint triangles that no partition can satisfy.
/// `bounds[d]` only packs triangles entirely within positions `>= d`, the
/// still-unassigned suffix at depth `d`, keeping it disjoint from the fixed
/// and attachment costs.
fn triangle_packing_bounds(n: usize, k: usize, adj: &[Vec<(u32, i8)>]) -> Vec<u64> {
    if n > PACKING_NODE_LIMIT {
        return vec![0; n + 1];
    }
    let mut edge_id: HashMap<(u32, u32), u32> = HashMap::new();
    for (p, nbrs) in adj.iter().enumerate() {
        for &(q, _) in nbrs {
            if (p as u32) < q {
                let id = edge_id.len() as u32;
                edge_id.insert((p as u32, q), id);
            }
        }
    }
    let sign_of = |a: u32, b: u32, adj: &[Vec<(u32, i8)>]| -> i8 {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        match adj[a as usize].binary_search_by_key(&b, |&(q, _)| q) {
            Ok(i) => adj[a as usize][i].1,
            Err(_) => 0,
        }
    };

    // Qualifying triangles (a < b < c by position) with their edge ids.
    let mut triangles: Vec<([u32; 3], [u32; 3])> = Vec::new();
    'outer: for c in 0..n as u32 {
        let below: Vec<(u32, i8)> = adj[c as usize]
            .iter()
            .copied()
            .filter(|&(q, _)| q < c)
            .collect();
        for i in 0..below.len() {
            for j in i + 1..below.len() {
                let (a, s_ac) = below[i];
                let (b, s_bc) = below[j];
                let s_ab = sign_of(a, b, adj);
                if s_ab == 0 {
                    continue;
                }
                let negatives =
                    u8::from(s_ab < 0) + u8::from(s_ac < 0) + u8::from(s_bc < 0);
                let forced = negatives == 1 || (k <= 2 && negatives == 3);
                if forced {
                    triangles.push((
                        [a, b, c],
                        [edge_id[&(a, b)], edge_id[&(a, c)], edge_id[&(b, c)]],
                    ));
                    if triangles.len() >= PACKING_TRIANGLE_LIMIT {
                        break 'outer; // a subset still packs soundly
                    }
                }
            }
        }
    }
    triangles.sort_unstable_by_key(|&(nodes, _)| nodes);

    let mut bounds = vec![0u64; n + 1];
    let mut stamp = vec![u32::MAX; edge_id.len()];
    for (d, bound) in bounds.iter_mut().enumerate() {
        let mut packed = 0u64;
        for &(nodes, edges) in &triangles {
            if (nodes[0] as usize) < d {
                continue;
            }
            if edges.iter().all(|&e| stamp[e as usize] != d as u32) {
                for &e in &edges {
                    stamp[e as usize] = d as u32;
                }
                packed += 1;
            }
        }
        *bound = packed;
    }
    bounds
}

/// Depth-first worker state. Positions `0..depth` are assigned; the arrays
/// below cache, for every node, how its edges fall against the assigned
/// prefix so both branching costs and bounds come out in O(1) per cluster.
struct Dfs<'a> {
    ctx: &'a Context<'a>,
    shared: &'a Shared,
    label: Vec<u32>,
    /// cluster_pos[v * k + c]: positive edges from position v to assigned
    /// nodes in cluster c (cluster_neg likewise).
    cluster_pos: Vec<u32>,
    cluster_neg: Vec<u32>,
    /// Positive edges from each position to assigned nodes.
    pos_to_assigned: Vec<u32>,
    fixed_cost: u64,
    nodes: u64,
    steps: u64,
    /// Min over bounds of subtrees abandoned due to an interrupt.
    pending_lower_bound: u64,
    /// Scratch: per-depth candidate lists, preallocated.
    candidates: Vec<Vec<(u64, u32)>>,
}

impl<'a> Dfs<'a> {
    fn new(ctx: &'a Context<'a>, shared: &'a Shared) -> Self {
        let n = ctx.n;
        let k = ctx.k;
        Dfs {
            ctx,
            shared,
            label: vec![u32::MAX; n],
            cluster_pos: vec![0; n * k],
            cluster_neg: vec![0; n * k],
            pos_to_assigned: vec![0; n],
            fixed_cost: 0,
            nodes: 0,
            steps: 0,
            pending_lower_bound: u64::MAX,
            candidates: vec![Vec::new(); n + 1],
        }
    }

    fn assignment_cost(&self, v: usize, c: u32) -> u64 {
        let idx = v * self.ctx.k + c as usize;
        (self.pos_to_assigned[v] - self.cluster_pos[idx]) as u64 + self.cluster_neg[idx] as u64
    }

    fn apply(&mut self, v: usize, c: u32) -> u64 {
        let cost = self.assignment_cost(v, c);
        self.fixed_cost += cost;
        self.label[v] = c;
        let k = self.ctx.k;
        for &(q, s) in &self.ctx.adj[v] {
            if (q as usize) > v {
                let idx = q as usize * k + c as usize;
                if s > 0 {
                    self.cluster_pos[idx] += 1;
                    self.pos_to_assigned[q as usize] += 1;
                } else {
                    self.cluster_neg[idx] += 1;
                }
            }
        }
        self.nodes += 1;
        cost
    }

    fn undo(&mut self, v: usize, c: u32, cost: u64) {
        self.fixed_cost -= cost;
        self.label[v] = u32::MAX;
        let k = self.ctx.k;
        for &(q, s) in &self.ctx.adj[v] {
            if (q as usize) > v {
                let idx = q as usize * k + c as usize;
                if s > 0 {
                    self.cluster_pos[idx] -= 1;
                    self.pos_to_assigned[q as usize] -= 1;
                } else {
                    self.cluster_neg[idx] -= 1;
                }
            }
        }
    }

    /// Admissible bound for the state where positions `0..depth` are fixed
    /// and `used` clusters are open.
    fn lower_bound(&self, depth: usize, used: usize) -> u64 {
        let k = self.ctx.k;
        let fresh_allowed = used < k;
        let mut h = self.fixed_cost + self.ctx.packing[depth];
        for v in depth..self.ctx.n {
            let base = self.pos_to_assigned[v] as u64;
            let mut cheapest = if fresh_allowed { base } else { u64::MAX };
            let row = v * k;
            for c in 0..used {
                let cost = base - self.cluster_pos[row + c] as u64
                    + self.cluster_neg[row + c] as u64;
                cheapest = cheapest.min(cost);
            }
            h += cheapest;
        }
        h
    }

    fn interrupted(&mut self) -> bool {
        self.steps += 1;
        if self.steps & 1023 == 0 {
            if let Some(deadline) = self.shared.deadline {
                if Instant::now() >= deadline {
                    self.shared.interrupted.store(true, Ordering::Relaxed);
                }
            }
        }
        self.shared.interrupted.load(Ordering::Relaxed)
    }

    /// Explores the subtree below the current prefix. Returns true when the
    /// subtree is exhausted (or soundly pruned), false when abandoned; in the
    /// latter case `pending_lower_bound` covers every unexplored leaf.
    fn search(&mut self, depth: usize, used: usize) -> bool {
        if depth == self.ctx.n {
            self.offer_incumbent();
            return true;
        }
        let bound = self.lower_bound(depth, used);
        if bound >= self.shared.incumbent.load(Ordering::Relaxed) {
            return true; // cannot strictly improve here
        }
        if self.interrupted() {
            self.pending_lower_bound = self.pending_lower_bound.min(bound);
            return false;
        }

        let limit = (used + 1).min(self.ctx.k);
        let mut cand = std::mem::take(&mut self.candidates[depth]);
        cand.clear();
        for c in 0..limit as u32 {
            cand.push((self.assignment_cost(depth, c), c));
        }
        cand.sort_unstable();

        let mut completed = true;
        for &(_, c) in &cand {
            if self.interrupted() {
                completed = false;
                break;
            }
            let cost = self.apply(depth, c);
            let done = self.search(depth + 1, used.max(c as usize + 1));
            self.undo(depth, c, cost);
            if !done {
                completed = false;
                break;
            }
        }
        self.candidates[depth] = cand;
        if !completed {
            // Unexplored siblings remain below this node; its own bound
            // covers all of them.
            self.pending_lower_bound = self.pending_lower_bound.min(bound);
        }
        completed
    }

    fn offer_incumbent(&mut self) {
        let value = self.fixed_cost;
        if value >= self.shared.incumbent.load(Ordering::Relaxed) {
            return;
        }
        let mut best = self.shared.best.lock().expect("incumbent lock");
        if value < best.0 {
            let mut assignment = vec![0u32; self.ctx.n];
            for (pos, &node) in self.ctx.order.iter().enumerate() {
                assignment[node as usize] = self.label[pos];
            }
            debug_assert_eq!(value, assignment_frustration(self.ctx.g, &assignment));
            *best = (value, assignment);
            self.shared.incumbent.store(value, Ordering::Relaxed);
        }
    }
}

/// Counts the leaves of the symmetry-broken search tree without any bounding,
/// used to verify that restricted-growth branching enumerates each canonical
/// partition exactly once.
#[cfg(test)]
pub(crate) fn unpruned_leaf_count(g: &SignedGraph, k: usize) -> u64 {
    fn recurse(n: usize, k: usize, depth: usize, used: usize) -> u64 {
        if depth == n {
            return 1;
        }
        let limit = (used + 1).min(k);
        (0..limit)
            .map(|c| recurse(n, k, depth + 1, used.max(c + 1)))
            .sum()
    }
    recurse(g.node_count(), k, 0, 0)
}

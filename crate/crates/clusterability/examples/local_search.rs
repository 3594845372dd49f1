//! Restarted local search on graphs too large for exact search, and a
//! sanity comparison against the exact optimum where one is computable.
//!
//! ```bash
//! cargo run --release --example local_search
//! ```

use std::time::Instant;

use clusterability::synthetic::random_signed_graph;
use clusterability::{local_search, solve_unbounded, HeuristicConfig};

fn main() -> Result<(), clusterability::Error> {
    // Small instance: the heuristic should land on the exact optimum.
    let small = random_signed_graph(12, 0.5, 0.6, 3);
    let cfg = HeuristicConfig {
        restarts: 16,
        ..HeuristicConfig::default()
    };
    let (heuristic_value, _) = local_search(&small, &cfg, None);
    let exact = solve_unbounded(&small)?;
    println!(
        "12-node graph: heuristic={} exact={} (gap {})",
        heuristic_value,
        exact.optimum,
        heuristic_value - exact.optimum
    );

    // Large instance: upper bound only, no optimality claim.
    let large = random_signed_graph(400, 0.08, 0.7, 4);
    println!(
        "\n400-node graph: {} edges ({} negative)",
        large.edge_count(),
        large.negative_edge_count()
    );
    let started = Instant::now();
    let (value, partition) = local_search(&large, &cfg, None);
    println!(
        "local search upper bound: {value} frustrated edges across {} clusters in {:?}",
        partition.cluster_count(),
        started.elapsed()
    );
    println!("(no optimality guarantee at this size; use the exact solver to certify)");
    Ok(())
}

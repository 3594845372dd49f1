//! Sweep the cluster cap k and find the point where adding more clusters
//! stops reducing the number of frustrated edges.
//!
//! ```bash
//! cargo run --example stagnation_curve
//! ```

use clusterability::synthetic::random_signed_graph;
use clusterability::{stagnation_curve, SolveOptions};

fn main() -> Result<(), clusterability::Error> {
    let g = random_signed_graph(16, 0.5, 0.65, 8);
    println!(
        "random graph: {} nodes, {} edges ({} negative)",
        g.node_count(),
        g.edge_count(),
        g.negative_edge_count()
    );

    let curve = stagnation_curve(&g, 8, &SolveOptions::default())?;
    println!("\n  k | minimum frustrated edges");
    println!("----+--------------------------");
    for (k, value) in curve.values() {
        let marker = if value == curve.c_of_g() { "  <- stagnated" } else { "" };
        println!("{k:>3} | {value}{marker}");
    }
    println!(
        "\nunbounded optimum: {} (explored {} assignments)",
        curve.c_of_g(),
        curve.unbounded.nodes_explored
    );
    println!("smallest cap reaching it: k = {}", curve.k_min_star);
    Ok(())
}

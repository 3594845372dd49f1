//! Walkthrough on a five-node signed network: evaluate hand-picked
//! partitions, then let the exact solver find the optima.
//!
//! ```bash
//! cargo run --example toy_network
//! ```

use clusterability::{count_frustration, solve_k, solve_unbounded, Partition, SignedGraph};

fn main() -> Result<(), clusterability::Error> {
    // Two positive edges (1-3, 2-3) and five negative ones.
    let g = SignedGraph::from_edges([
        ("1", "3", 1),
        ("2", "3", 1),
        ("1", "4", -1),
        ("1", "5", -1),
        ("2", "5", -1),
        ("3", "4", -1),
        ("4", "5", -1),
    ])?;
    println!(
        "graph: {} nodes, {} edges ({} positive, {} negative)\n",
        g.node_count(),
        g.edge_count(),
        g.positive_edge_count(),
        g.negative_edge_count()
    );

    // A partition into {1,2,3} and {4,5} leaves exactly one contradiction:
    // the negative edge 4-5 sits inside a cluster.
    let two_clusters = Partition::from_groups(
        5,
        &[
            &[0, 1, 2], // indices of "1", "3", "2"
            &[3, 4],    // indices of "4", "5"
        ],
    )?;
    let report = count_frustration(&g, &two_clusters)?;
    println!("two clusters by hand: {} frustrated edge(s)", report.total);
    for e in &report.frustrated_edges {
        println!(
            "  {}-{} (sign {}): {}",
            g.label(e.u),
            g.label(e.v),
            e.sign,
            e.reason
        );
    }

    // Splitting 4 and 5 apart removes the contradiction entirely.
    let three_clusters = Partition::from_groups(5, &[&[0, 1, 2], &[3], &[4]])?;
    println!(
        "three clusters by hand: {} frustrated edges\n",
        count_frustration(&g, &three_clusters)?.total
    );

    // The solver proves those are the best possible values.
    for k in [2, 3] {
        let result = solve_k(&g, k)?;
        println!(
            "solve_k(k={k}): optimum={} status={} clusters used={}",
            result.optimum,
            result.status,
            result.partition.cluster_count()
        );
    }
    let free = solve_unbounded(&g)?;
    println!(
        "solve_unbounded: optimum={} partition={:?}",
        free.optimum,
        free.partition.as_slice()
    );
    Ok(())
}

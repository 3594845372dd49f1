//! Cross-check the branch-and-bound solver against exhaustive enumeration
//! on a batch of random instances.
//!
//! ```bash
//! cargo run --example exact_vs_enumeration
//! ```

use clusterability::oracle;
use clusterability::synthetic::random_signed_graph;
use clusterability::{solve_k, solve_unbounded};

fn main() -> Result<(), clusterability::Error> {
    let mut agreements = 0;
    for seed in 0..30 {
        let n = 5 + (seed % 5) as usize;
        let g = random_signed_graph(n, 0.6, 0.55, seed);
        for k in 1..=n {
            let fast = solve_k(&g, k)?.optimum;
            let (slow, _) = oracle::best_partition_at_most_k(&g, k)?;
            assert_eq!(fast, slow, "disagreement at n={n} k={k} seed={seed}");
            agreements += 1;
        }
        let fast = solve_unbounded(&g)?;
        let slow = oracle::best_partition(&g)?;
        assert_eq!(fast.optimum, slow.value);
        println!(
            "seed {seed:>2}: n={n} m={:>2}  optimum={} (search explored {} assignments, \
             enumeration would visit every partition)",
            g.edge_count(),
            fast.optimum,
            fast.nodes_explored
        );
        agreements += 1;
    }
    println!("\n{agreements} solver/enumeration comparisons, all equal");
    Ok(())
}

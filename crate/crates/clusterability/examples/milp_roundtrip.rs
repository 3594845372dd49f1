//! Export the two binary linear programs, then verify an external-style
//! solution file against the graph.
//!
//! ```bash
//! cargo run --example milp_roundtrip
//! ```

use clusterability::milp::{
    clustering_model_string, encode_clustering_solution, import_solution, k_partition_model_string,
    model_dimensions, ModelKind,
};
use clusterability::{solve_unbounded, SignedGraph};

fn main() -> Result<(), clusterability::Error> {
    let g = SignedGraph::from_edges([
        ("1", "3", 1),
        ("2", "3", 1),
        ("1", "4", -1),
        ("1", "5", -1),
        ("2", "5", -1),
        ("3", "4", -1),
        ("4", "5", -1),
    ])?;

    let fixed_k = k_partition_model_string(&g, 3)?;
    let (binaries, constraints) = model_dimensions(&fixed_k);
    println!("k-partition model (k=3): {binaries} binaries, {constraints} constraints");

    let clustering = clustering_model_string(&g)?;
    let (binaries, constraints) = model_dimensions(&clustering);
    println!("clustering model: {binaries} binaries, {constraints} constraints\n");
    println!("--- clustering model text ---\n{clustering}");

    // Solve natively, encode the optimum the way an external solver would
    // report it, and round-trip it through the verifier.
    let exact = solve_unbounded(&g)?;
    let solution_file = encode_clustering_solution(&g, &exact.partition)?;
    println!("--- solution file ---\n{solution_file}");
    let verified = import_solution(&g, ModelKind::Clustering, &solution_file)?;
    println!(
        "verified objective {} == native optimum {}",
        verified.objective, exact.optimum
    );
    Ok(())
}

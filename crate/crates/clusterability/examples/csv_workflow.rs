//! File-based workflow mirroring the CLI: write an edge list, load it,
//! solve, store the partition, and evaluate it from disk again.
//!
//! ```bash
//! cargo run --example csv_workflow
//! ```

use clusterability::{count_frustration, io, solve_k};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("clusterability-csv-workflow");
    std::fs::create_dir_all(&dir)?;

    let edges_path = dir.join("toy.csv");
    std::fs::write(
        &edges_path,
        "source,target,sign\n1,3,1\n2,3,1\n1,4,-1\n1,5,-1\n2,5,-1\n3,4,-1\n4,5,-1\n",
    )?;
    let g = io::load_edge_list(&edges_path)?;
    println!("loaded {} with {} nodes", edges_path.display(), g.node_count());

    let result = solve_k(&g, 3)?;
    let partition_path = dir.join("toy.partition.csv");
    io::write_partition(std::fs::File::create(&partition_path)?, &g, &result.partition)?;
    println!(
        "solved to optimum {} and wrote {}",
        result.optimum,
        partition_path.display()
    );

    let reloaded = io::load_partition(&partition_path, &g)?;
    let report = count_frustration(&g, &reloaded)?;
    println!("reloaded partition re-evaluates to {}", report.total);
    assert_eq!(report.total, result.optimum);

    println!("\npartition file contents:");
    print!("{}", std::fs::read_to_string(&partition_path)?);
    Ok(())
}

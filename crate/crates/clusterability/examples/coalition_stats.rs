//! Compare an attribute-based partition against the optimal one on a small
//! legislature-style network, then summarize coalition composition.
//!
//! ```bash
//! cargo run --example coalition_stats
//! ```

use clusterability::analysis::{cluster_stats, edge_mix, EdgeAttribution};
use clusterability::graph::NodeAttributes;
use clusterability::{count_frustration, solve_unbounded, SignedGraph};

fn main() -> Result<(), clusterability::Error> {
    // Two party blocs plus one defector ("eve") who collaborates across the
    // aisle and opposes her own side.
    let mut g = SignedGraph::from_edges([
        ("alice", "bob", 1),
        ("alice", "carol", 1),
        ("bob", "carol", 1),
        ("dan", "erin", 1),
        ("dan", "frank", 1),
        ("erin", "frank", 1),
        ("alice", "dan", -1),
        ("bob", "erin", -1),
        ("carol", "frank", -1),
        ("eve", "alice", -1),
        ("eve", "bob", -1),
        ("eve", "dan", 1),
        ("eve", "erin", 1),
    ])?;
    let attributes = [
        ("alice", "D", -0.6, 1.1),
        ("bob", "D", -0.5, 0.9),
        ("carol", "D", -0.4, 1.0),
        ("dan", "R", 0.5, 1.2),
        ("erin", "R", 0.6, 0.8),
        ("frank", "R", 0.7, 1.0),
        ("eve", "D", -0.1, 2.4),
    ];
    g.attach_attributes(attributes.iter().map(|(n, p, i, e)| {
        (
            n.to_string(),
            NodeAttributes {
                party: p.to_string(),
                ideology: *i,
                effectiveness: *e,
            },
        )
    }))?;

    let by_party = g.attribute_partition("party")?;
    let party_frustration = count_frustration(&g, &by_party)?.total;
    let optimal = solve_unbounded(&g)?;
    println!(
        "party partition: {party_frustration} frustrated edges; optimal partition: {} \
         (using {} clusters)\n",
        optimal.optimum,
        optimal.partition.cluster_count()
    );

    println!("composition of the optimal clusters:");
    for s in cluster_stats(&g, &optimal.partition)? {
        println!(
            "  cluster {}: size={} median ideology={:+.2} mean effectiveness={:.2}",
            s.cluster,
            s.size,
            s.median_ideology.unwrap_or(f64::NAN),
            s.mean_effectiveness.unwrap_or(f64::NAN)
        );
    }

    println!("\nedge mix per cluster (cross edges count toward both sides):");
    for m in edge_mix(&g, &optimal.partition, EdgeAttribution::PerEndpoint)? {
        println!(
            "  cluster {}: {} positive / {} negative, negative co-partisan share: {}",
            m.cluster,
            m.positive,
            m.negative,
            m.fraction_negative_copartisan()
                .map_or("n/a".to_string(), |v| format!("{v:.2}")),
        );
    }
    Ok(())
}

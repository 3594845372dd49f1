//! End-to-end tests of the `clusterability` binary: exit codes, output
//! files, and the round trip between solve and evaluate.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use clusterability::milp;
use clusterability::synthetic::random_signed_graph;

const TOY_CSV: &str = "source,target,sign\n1,3,1\n2,3,1\n1,4,-1\n1,5,-1\n2,5,-1\n3,4,-1\n4,5,-1\n";

const TOY_ATTRIBUTES: &str = "node,party,ideology,effectiveness\n\
                              1,D,-0.5,1.2\n2,D,-0.3,0.8\n3,D,-0.1,1.0\n4,R,0.4,0.9\n5,R,0.6,1.1\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_clusterability"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin()
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn write_toy(dir: &Path) -> PathBuf {
    let path = dir.join("toy.csv");
    std::fs::write(&path, TOY_CSV).unwrap();
    path
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn solve_k_writes_partition_and_record() {
    let dir = tempfile::tempdir().unwrap();
    write_toy(dir.path());
    let output = run(&["solve-k", "--k", "3", "toy.csv"], dir.path());
    assert!(output.status.success(), "{output:?}");

    let record = read_json(&dir.path().join("toy.result.json"));
    assert_eq!(record["optimum"], 0);
    assert_eq!(record["lower_bound"], 0);
    assert_eq!(record["status"], "optimal");
    assert_eq!(record["k_limit"], 3);

    let partition = std::fs::read_to_string(dir.path().join("toy.partition.csv")).unwrap();
    assert!(partition.starts_with("node,cluster\n"));
    assert_eq!(partition.lines().count(), 6);

    // Round trip: evaluate accepts the written partition and reproduces the
    // solver's optimum.
    let output = run(
        &["evaluate", "--partition", "toy.partition.csv", "toy.csv"],
        dir.path(),
    );
    assert!(output.status.success());
    assert!(stdout(&output).contains("frustrated edges: 0 total"));
}

#[test]
fn solve_k_one_counts_negative_edges() {
    let dir = tempfile::tempdir().unwrap();
    write_toy(dir.path());
    let output = run(&["solve-k", "--k", "1", "toy.csv"], dir.path());
    assert!(output.status.success());
    let record = read_json(&dir.path().join("toy.result.json"));
    assert_eq!(record["optimum"], 5);
    assert_eq!(record["cluster_count"], 1);
}

#[test]
fn unbounded_solve_and_curve() {
    let dir = tempfile::tempdir().unwrap();
    write_toy(dir.path());
    let output = run(&["solve", "toy.csv", "--out-prefix", "free"], dir.path());
    assert!(output.status.success());
    assert_eq!(read_json(&dir.path().join("free.result.json"))["optimum"], 0);

    let output = run(&["curve", "--k-max", "5", "toy.csv"], dir.path());
    assert!(output.status.success());
    let record = read_json(&dir.path().join("toy.result.json"));
    assert_eq!(record["c_of_g"], 0);
    assert_eq!(record["k_min_star"], 3);
    assert_eq!(record["k_min_star_display"], "3");
    let optima: Vec<u64> = record["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["optimum"].as_u64().unwrap())
        .collect();
    assert_eq!(optima, vec![5, 1, 0, 0, 0]);
}

#[test]
fn evaluate_fixed_partition_and_classification() {
    let dir = tempfile::tempdir().unwrap();
    write_toy(dir.path());
    std::fs::write(
        dir.path().join("two.csv"),
        "node,cluster\n1,0\n2,0\n3,0\n4,1\n5,1\n",
    )
    .unwrap();
    let output = run(&["evaluate", "--partition", "two.csv", "toy.csv"], dir.path());
    assert!(output.status.success());
    assert!(stdout(&output).contains("frustrated edges: 1 total"));
    let edges = std::fs::read_to_string(dir.path().join("toy.edges.csv")).unwrap();
    assert!(edges.contains("4,5,-1,1,negative-within-cluster"));
}

#[test]
fn evaluate_by_attribute_single_party_counts_negatives() {
    let dir = tempfile::tempdir().unwrap();
    write_toy(dir.path());
    let single_party = TOY_ATTRIBUTES.replace(",R,", ",D,");
    std::fs::write(dir.path().join("attrs.csv"), single_party).unwrap();
    let output = run(
        &[
            "evaluate",
            "--by-attribute",
            "party",
            "--attributes",
            "attrs.csv",
            "toy.csv",
        ],
        dir.path(),
    );
    assert!(output.status.success(), "{output:?}");
    assert!(stdout(&output).contains("frustrated edges: 5 total"));
}

#[test]
fn export_and_import_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    write_toy(dir.path());
    let output = run(
        &["export", "--model", "eq2", "toy.csv", "-o", "toy.lp"],
        dir.path(),
    );
    assert!(output.status.success());
    let model = std::fs::read_to_string(dir.path().join("toy.lp")).unwrap();
    assert_eq!(milp::model_dimensions(&model), (10, 27));

    // Encode the balanced three-cluster solution by hand and verify it.
    std::fs::write(
        dir.path().join("solution.txt"),
        "# Objective value = 0\ny_0_1 1\ny_0_2 1\ny_1_2 1\n",
    )
    .unwrap();
    let output = run(
        &[
            "import",
            "--model",
            "eq2",
            "--solution",
            "solution.txt",
            "toy.csv",
        ],
        dir.path(),
    );
    assert!(output.status.success(), "{output:?}");
    assert!(stdout(&output).contains("objective=0"));

    let corrupted = "# Objective value = 2\ny_0_1 1\ny_0_2 1\ny_1_2 1\n";
    std::fs::write(dir.path().join("bad.txt"), corrupted).unwrap();
    let output = run(
        &["import", "--model", "eq2", "--solution", "bad.txt", "toy.csv"],
        dir.path(),
    );
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("objective"));
}

#[test]
fn export_eq1_requires_k() {
    let dir = tempfile::tempdir().unwrap();
    write_toy(dir.path());
    let output = run(&["export", "--model", "eq1", "toy.csv"], dir.path());
    assert_eq!(output.status.code(), Some(1));
    let output = run(
        &["export", "--model", "eq1", "--k", "3", "toy.csv", "-o", "toy1.lp"],
        dir.path(),
    );
    assert!(output.status.success());
    let model = std::fs::read_to_string(dir.path().join("toy1.lp")).unwrap();
    assert_eq!(milp::model_dimensions(&model), (22, 26));
}

#[test]
fn stats_reports_and_failure_modes() {
    let dir = tempfile::tempdir().unwrap();
    write_toy(dir.path());
    std::fs::write(dir.path().join("attrs.csv"), TOY_ATTRIBUTES).unwrap();
    std::fs::write(
        dir.path().join("one.csv"),
        "node,cluster\n1,0\n2,0\n3,0\n4,0\n5,0\n",
    )
    .unwrap();
    let output = run(
        &[
            "stats",
            "--attributes",
            "attrs.csv",
            "--partition",
            "one.csv",
            "toy.csv",
        ],
        dir.path(),
    );
    assert!(output.status.success(), "{output:?}");
    let stats = std::fs::read_to_string(dir.path().join("toy.cluster-stats.csv")).unwrap();
    let mut lines = stats.lines();
    assert_eq!(
        lines.next(),
        Some("cluster,size,median_ideology,mean_effectiveness")
    );
    assert_eq!(lines.clone().count(), 1); // single cluster covers everyone
    assert!(lines.next().unwrap().starts_with("0,5,"));
    let mix = std::fs::read_to_string(dir.path().join("toy.edge-mix.csv")).unwrap();
    assert!(mix.starts_with("cluster,neg_pos_ratio,frac_neg_copartisan,frac_pos_copartisan"));

    // An attribute file that misses a node fails with a one-line diagnostic.
    let partial = "node,party,ideology,effectiveness\n1,D,-0.5,1.2\n";
    std::fs::write(dir.path().join("partial.csv"), partial).unwrap();
    let output = run(
        &[
            "stats",
            "--attributes",
            "partial.csv",
            "--partition",
            "one.csv",
            "toy.csv",
        ],
        dir.path(),
    );
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert_eq!(stderr.lines().count(), 1);
    assert!(stderr.contains("attribute"), "{stderr}");
}

#[test]
fn by_attribute_party_stats() {
    let dir = tempfile::tempdir().unwrap();
    write_toy(dir.path());
    std::fs::write(dir.path().join("attrs.csv"), TOY_ATTRIBUTES).unwrap();
    let output = run(
        &[
            "stats",
            "--attributes",
            "attrs.csv",
            "--by-attribute",
            "party",
            "toy.csv",
        ],
        dir.path(),
    );
    assert!(output.status.success(), "{output:?}");
    let stats = std::fs::read_to_string(dir.path().join("toy.cluster-stats.csv")).unwrap();
    assert_eq!(stats.lines().count(), 3); // header + D + R
}

#[test]
fn deterministic_runs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let g = random_signed_graph(14, 0.5, 0.6, 2024);
    let mut csv = Vec::new();
    clusterability::io::write_edge_list(&mut csv, &g).unwrap();
    std::fs::write(dir.path().join("random.csv"), csv).unwrap();

    let args = [
        "solve",
        "random.csv",
        "--deterministic",
        "--seed",
        "7",
        "--out-prefix",
    ];
    let output = run(&[&args[..], &["a"]].concat(), dir.path());
    assert!(output.status.success());
    let output = run(&[&args[..], &["b"]].concat(), dir.path());
    assert!(output.status.success());

    let pa = std::fs::read_to_string(dir.path().join("a.partition.csv")).unwrap();
    let pb = std::fs::read_to_string(dir.path().join("b.partition.csv")).unwrap();
    assert_eq!(pa, pb);

    let mut ra = read_json(&dir.path().join("a.result.json"));
    let mut rb = read_json(&dir.path().join("b.result.json"));
    for r in [&mut ra, &mut rb] {
        let obj = r.as_object_mut().unwrap();
        obj.remove("wall_time_seconds");
        obj.remove("partition_file");
        obj.remove("input");
    }
    assert_eq!(ra, rb);
}

#[test]
fn time_limited_solve_exits_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let g = random_signed_graph(40, 0.5, 0.6, 99);
    let mut csv = Vec::new();
    clusterability::io::write_edge_list(&mut csv, &g).unwrap();
    std::fs::write(dir.path().join("hard.csv"), csv).unwrap();

    let output = run(
        &["solve", "hard.csv", "--time-limit", "0.01"],
        dir.path(),
    );
    assert_eq!(output.status.code(), Some(2), "{output:?}");
    // The incumbent is still written.
    let record = read_json(&dir.path().join("hard.result.json"));
    assert_eq!(record["status"], "feasible-bound");
    assert!(record["lower_bound"].as_u64().unwrap() <= record["optimum"].as_u64().unwrap());
    assert!(dir.path().join("hard.partition.csv").exists());
}

#[test]
fn io_failures_exit_one_with_a_single_diagnostic_line() {
    let dir = tempfile::tempdir().unwrap();
    let output = run(&["solve", "missing.csv"], dir.path());
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert_eq!(stderr.lines().count(), 1, "{stderr}");
    assert!(stderr.starts_with("error:"));

    std::fs::write(dir.path().join("bad.csv"), "a,b,c\n1,2,3\n").unwrap();
    let output = run(&["solve", "bad.csv"], dir.path());
    assert_eq!(output.status.code(), Some(1));

    // Mismatched node set between the graph and a partition file.
    write_toy(dir.path());
    std::fs::write(dir.path().join("short.csv"), "node,cluster\n1,0\n2,0\n").unwrap();
    let output = run(
        &["evaluate", "--partition", "short.csv", "toy.csv"],
        dir.path(),
    );
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn warm_start_file_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    write_toy(dir.path());
    std::fs::write(
        dir.path().join("warm.csv"),
        "node,cluster\n1,0\n2,0\n3,0\n4,1\n5,2\n",
    )
    .unwrap();
    let output = run(
        &["solve", "toy.csv", "--warm-start", "warm.csv"],
        dir.path(),
    );
    assert!(output.status.success(), "{output:?}");
    assert_eq!(read_json(&dir.path().join("toy.result.json"))["optimum"], 0);
}

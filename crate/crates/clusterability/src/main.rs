fn main() {
    std::process::exit(clusterability::cli::run());
}

fn main() {
    std::process::exit(plm::cli::run(std::env::args()));
}

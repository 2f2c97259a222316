fn main() {
    std::process::exit(qstoch_cli::run(std::env::args()));
}

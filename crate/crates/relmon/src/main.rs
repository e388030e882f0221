fn main() {
    std::process::exit(relmon::cli::main());
}

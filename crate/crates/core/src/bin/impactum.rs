fn main() {
    std::process::exit(impactum::cli::main());
}

fn main() {
    std::process::exit(polyperc::cli::main());
}

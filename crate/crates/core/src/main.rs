fn main() {
    std::process::exit(picode::cli::run());
}

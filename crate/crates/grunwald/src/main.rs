fn main() {
    std::process::exit(grunwald::cli::run());
}

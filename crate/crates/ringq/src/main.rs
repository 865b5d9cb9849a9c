fn main() {
    std::process::exit(ringq::cli::run());
}

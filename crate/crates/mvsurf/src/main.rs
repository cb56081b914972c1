fn main() {
    std::process::exit(mvsurf::cli::run());
}

fn main() {
    std::process::exit(gabor_zak::cli::run(std::env::args()));
}

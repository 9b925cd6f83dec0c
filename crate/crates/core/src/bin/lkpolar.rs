fn main() {
    std::process::exit(lkpolar::cli::run(std::env::args()));
}

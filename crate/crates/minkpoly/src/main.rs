fn main() {
    std::process::exit(minkpoly::cli::run());
}

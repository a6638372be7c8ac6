fn main() {
    std::process::exit(apolar_kit::cli::run());
}

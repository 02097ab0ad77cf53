fn main() {
    std::process::exit(bicrossed::cli::run());
}

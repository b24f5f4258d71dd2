fn main() {
    std::process::exit(luroth_cli::run());
}

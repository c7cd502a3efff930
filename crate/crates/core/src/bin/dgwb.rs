fn main() {
    std::process::exit(dgwb::cli::main_with_args(std::env::args()));
}

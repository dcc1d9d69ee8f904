fn main() {
    std::process::exit(heavycov::harness::cli::main_with_args(std::env::args_os()));
}

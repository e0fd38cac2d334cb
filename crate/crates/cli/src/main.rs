fn main() {
    std::process::exit(edeco_cli::main_with_args(std::env::args().skip(1).collect()));
}

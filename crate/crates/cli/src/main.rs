fn main() {
    std::process::exit(laplext_cli::main_with_args(std::env::args_os()));
}

fn main() {
    std::process::exit(eigenshift_cli::main_with_args(std::env::args_os()));
}

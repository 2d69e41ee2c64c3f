fn main() {
    std::process::exit(conical_cli::main_with_args(std::env::args_os()));
}

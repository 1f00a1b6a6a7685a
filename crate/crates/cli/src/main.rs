fn main() {
    std::process::exit(entrobound_cli::main_with_args(std::env::args_os()));
}

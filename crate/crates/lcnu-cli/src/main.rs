fn main() {
    std::process::exit(lcnu_cli::main_with_args(std::env::args_os()));
}

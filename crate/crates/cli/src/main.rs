fn main() {
    std::process::exit(refclass_cli::main_with_args(std::env::args_os()));
}

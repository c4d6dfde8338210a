fn main() {
    std::process::exit(isodyn::cli::main_with_args(std::env::args_os()));
}

fn main() {
    std::process::exit(su2gap::cli::main_with_args(std::env::args_os()));
}

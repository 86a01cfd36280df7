fn main() {
    std::process::exit(linrel::cli::main_with_args(std::env::args_os()));
}

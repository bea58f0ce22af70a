fn main() {
    std::process::exit(so3ft::cli::main_with_args(std::env::args_os()));
}

fn main() {
    std::process::exit(photocell::cli::main_with_args(std::env::args_os()));
}

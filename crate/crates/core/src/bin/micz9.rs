fn main() {
    std::process::exit(micz_core::cli::main_with_args(std::env::args_os()));
}

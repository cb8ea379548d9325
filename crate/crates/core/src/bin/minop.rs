fn main() {
    std::process::exit(minop::cli::main_with_args(std::env::args_os()));
}

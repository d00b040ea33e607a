fn main() {
    std::process::exit(gfa::cli::main_with_args(std::env::args_os()));
}

fn main() {
    std::process::exit(wigsmooth::cli::main_with_args(std::env::args_os()));
}

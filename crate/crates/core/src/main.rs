fn main() {
    std::process::exit(grr_census::cli::main_with_args(std::env::args_os()));
}

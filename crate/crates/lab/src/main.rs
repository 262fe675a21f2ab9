fn main() {
    std::process::exit(dlpp_lab::cli::run_cli(std::env::args_os()));
}

fn main() {
    std::process::exit(gmf_exponents::cli::run_cli(std::env::args_os()));
}

fn main() {
    std::process::exit(g2lab::cli::run_cli(std::env::args_os()));
}

fn main() {
    std::process::exit(graphchi_cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(su11_cli::run(std::env::args_os()));
}

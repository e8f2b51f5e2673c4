fn main() {
    std::process::exit(polmod::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(porigami::cli::run(std::env::args_os()));
}

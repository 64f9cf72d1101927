fn main() {
    std::process::exit(wordform::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(stancecraft::cli::run(std::env::args_os()));
}

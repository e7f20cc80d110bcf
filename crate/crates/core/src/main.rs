fn main() {
    std::process::exit(benchred::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(hamming_revival::cli::run(std::env::args_os()));
}

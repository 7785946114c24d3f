fn main() {
    std::process::exit(aqrm::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(ygn::cli::run(std::env::args_os()));
}

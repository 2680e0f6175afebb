fn main() {
    std::process::exit(svl::cli::run(std::env::args_os()));
}

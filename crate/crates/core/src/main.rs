fn main() {
    std::process::exit(fqw_core::cli::run(std::env::args_os()));
}

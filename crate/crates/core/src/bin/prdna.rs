fn main() {
    std::process::exit(prdna::cli::run(std::env::args_os()));
}

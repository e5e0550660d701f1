fn main() {
    std::process::exit(teich::cli::run(std::env::args_os()));
}

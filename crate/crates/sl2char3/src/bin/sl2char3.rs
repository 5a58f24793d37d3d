fn main() {
    std::process::exit(sl2char3::cli::run(std::env::args_os()));
}

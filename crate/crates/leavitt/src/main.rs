fn main() {
    std::process::exit(leavitt::cli::run(std::env::args_os()));
}

fn main() {
    std::process::exit(integen::cli::run(std::env::args_os()));
}

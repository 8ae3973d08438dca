fn main() {
    std::process::exit(restivo::cli::main_with_args(std::env::args_os()));
}

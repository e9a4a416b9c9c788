fn main() {
    std::process::exit(hornkit_cli::run(std::env::args_os()));
}

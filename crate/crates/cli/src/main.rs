fn main() {
    std::process::exit(crossed_cli::run(std::env::args_os()));
}

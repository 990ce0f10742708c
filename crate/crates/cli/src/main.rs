fn main() {
    std::process::exit(myolo_cli::run(std::env::args_os()));
}

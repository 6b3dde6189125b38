fn main() {
    std::process::exit(arrangement_cli::run(std::env::args_os()));
}

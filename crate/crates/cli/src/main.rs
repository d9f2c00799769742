fn main() {
    std::process::exit(gaussbc_cli::run(std::env::args_os().collect()));
}

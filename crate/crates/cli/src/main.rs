fn main() {
    std::process::exit(upq_cli::main_with(std::env::args().skip(1)));
}

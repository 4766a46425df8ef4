fn main() {
    std::process::exit(superflag::cli::main_with(std::env::args_os()));
}

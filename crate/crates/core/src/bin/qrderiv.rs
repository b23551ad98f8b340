fn main() {
    std::process::exit(qrderiv::cli::main_with_args(std::env::args_os()));
}

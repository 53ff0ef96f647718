fn main() {
    std::process::exit(hpnc::cli::main_with_args(std::env::args_os()));
}

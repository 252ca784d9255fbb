fn main() -> std::process::ExitCode {
    hfsac::cli::main_with_args(std::env::args_os())
}

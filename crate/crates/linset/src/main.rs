use std::process::ExitCode;

fn main() -> ExitCode {
    linset::cli::main_with(std::env::args_os())
}

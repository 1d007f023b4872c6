use std::process::ExitCode;

fn main() -> ExitCode {
    maillet_cli::run(std::env::args_os())
}

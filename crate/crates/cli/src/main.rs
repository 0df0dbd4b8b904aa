use std::process::ExitCode;

fn main() -> ExitCode {
    goose_cli::main_with_args(std::env::args())
}

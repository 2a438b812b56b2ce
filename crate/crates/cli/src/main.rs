use std::process::ExitCode;

fn main() -> ExitCode {
    telebench_cli::run()
}

use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(hecke_cli::run_with(std::env::args_os(), &mut std::io::stdout().lock()))
}

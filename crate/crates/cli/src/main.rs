use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = apolar_cli::Cli::parse();
    let code = apolar_cli::run(&cli, &mut std::io::stdout(), &mut std::io::stderr());
    ExitCode::from(code)
}

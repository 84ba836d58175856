use std::process::ExitCode;

use clap::Parser;
use signed_ortho_cli::{output, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(outcome) => match output::emit(&outcome.rendered, outcome.out.as_deref()) {
            Ok(()) => outcome.exit_code(),
            Err(e) => {
                eprintln!("signed-ortho: {e}");
                e.exit_code()
            }
        },
        Err(e) => {
            eprintln!("signed-ortho: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}

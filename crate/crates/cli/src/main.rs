use std::process::ExitCode;

use clap::Parser;
use yamabe_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("yamabe: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Err(e) = outcome.table.emit(cli.common.format, cli.common.out.as_deref()) {
        eprintln!("yamabe: cannot write output: {e}");
        return ExitCode::from(1);
    }
    match outcome.failure {
        Some(msg) => {
            eprintln!("yamabe: {msg}");
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}

use std::io::{self, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use arcspoke::{Cli, CliError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version are not errors; every other usage error is 7
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(7),
            };
        }
    };
    let stdout = io::stdout();
    let stderr = io::stderr();
    let result = arcspoke::run(cli, &mut stdout.lock(), &mut stderr.lock());
    let _ = io::stdout().flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        // a closed pipe on stdout (`arcspoke corpus list | head`) is not a failure
        Err(CliError::Io { source, .. }) if source.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

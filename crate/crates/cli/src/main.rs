use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use ydlift::Error;
use ydlift_cli::commands::run_args;
use ydlift_cli::report::Report;

fn main() -> ExitCode {
    match run_args(std::env::args_os()) {
        Ok(report) => {
            emit(&report);
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            let report = Report::from_error("usage", "", &Error::Invalid(e.kind().to_string()));
            emit(&report);
            ExitCode::from(2)
        }
    }
}

fn emit(report: &Report) {
    // a closed pipe is not worth a panic
    let _ = writeln!(std::io::stdout(), "{}", report.to_json());
}

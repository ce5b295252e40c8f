use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use ifnorm_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // Help and version are not errors; bad arguments are config errors.
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    // A panic in a check is an internal fault, not a failed check.
    let result = std::panic::catch_unwind(|| execute(&cli));
    match result {
        Ok(Ok(out)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(3);
            }
            if let Some(rep) = &out.report {
                let s = rep.summary();
                eprintln!(
                    "{}: {} records, {} pass, {} fail, {} inconclusive",
                    rep.scenario, s.records, s.pass, s.fail, s.inconclusive
                );
            }
            ExitCode::from(out.exit_code)
        }
        Ok(Err(e)) => {
            eprintln!("ifnorm: {e}");
            ExitCode::from(e.exit_code())
        }
        Err(_) => ExitCode::from(3),
    }
}

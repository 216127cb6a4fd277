mod args;
mod commands;
mod report;

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command};
use commands::Failure;
use report::{ErrorInfo, Report};

const EXIT_DOMAIN: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut report = Report::new(cli.command.name(), commands::inputs(&cli.command, &cli.common));
    let start = Instant::now();
    let outcome = match cli.common.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| commands::execute(&cli.command, &cli.common)),
            Err(e) => Err(Failure::Usage(format!("--jobs {n}: {e}"))),
        },
        None => commands::execute(&cli.command, &cli.common),
    };
    report.timing_ms = start.elapsed().as_millis() as u64;

    // `gen` writes the graph to --out; its report always goes to stdout.
    let is_gen = matches!(cli.command, Command::Gen { .. });
    let mut table = None;
    let code = match outcome {
        Ok(out) => {
            report.result = Some(out.result);
            table = out.table;
            if let (true, Some(text)) = (is_gen, out.artifact) {
                let Some(path) = &cli.common.out else {
                    println!("{text}");
                    return ExitCode::SUCCESS;
                };
                if let Err(e) = fs::write(path, text + "\n") {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(EXIT_DOMAIN);
                }
            }
            0
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
        Err(Failure::Domain { name, message }) => {
            eprintln!("error: {name}: {message}");
            report.error = Some(ErrorInfo { name, message });
            EXIT_DOMAIN
        }
    };

    let text = table.unwrap_or_else(|| report.to_json());
    match cli.common.out.as_ref().filter(|_| !is_gen) {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(EXIT_DOMAIN);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}

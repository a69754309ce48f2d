use std::io::{self, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gvsql::bench;
use gvsql::cli::{self, OutputMode, Session};
use gvsql::Database;

/// Embedded relational engine with graph views and path queries.
#[derive(Debug, Parser)]
#[command(name = "gvsql", version)]
struct Args {
    /// Run a script file instead of the interactive shell.
    #[arg(long)]
    script: Option<PathBuf>,

    /// Load a headered CSV file into a table before anything else; the
    /// table is created from the header when missing. Repeatable.
    #[arg(long = "csv", value_name = "TABLE=PATH")]
    csv: Vec<String>,

    /// Run a benchmark, e.g. kind=reach,graph=random,n=10000,m=100000,seed=7
    #[arg(long, value_name = "SPEC")]
    bench: Option<String>,

    /// Result format.
    #[arg(long, default_value = "table", value_parser = ["table", "csv"])]
    output: String,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();

    if let Some(spec) = &args.bench {
        let spec = match bench::BenchSpec::parse(spec) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        };
        return match bench::run(&spec) {
            Ok(report) => {
                print!("{}", report.to_csv());
                let _ = stdout.lock().flush();
                if let Some(m) = report.mismatch() {
                    eprintln!("checksum mismatch: {m}");
                    ExitCode::from(3)
                } else {
                    ExitCode::SUCCESS
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        };
    }

    let mut db = Database::new();
    for item in &args.csv {
        let Some((table, path)) = item.split_once('=') else {
            eprintln!("error: --csv expects TABLE=PATH, got '{item}'");
            return ExitCode::from(2);
        };
        if let Err(e) = cli::load_csv(&mut db, table, path.as_ref()) {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }

    let mut session = Session::new(db, stdout.lock());
    session.set_mode(OutputMode::parse(&args.output).unwrap_or_default());

    if let Some(path) = &args.script {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(2);
            }
        };
        return match session.run_script(&text) {
            Ok(_) => ExitCode::SUCCESS,
            Err(e) => {
                let _ = session.into_output().flush();
                eprintln!("error: {}: {e}", path.display());
                ExitCode::from(1)
            }
        };
    }

    let stdin = io::stdin();
    let prompt = stdin.is_terminal();
    match session.repl(stdin.lock(), prompt) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

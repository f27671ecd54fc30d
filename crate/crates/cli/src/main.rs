mod args;
mod commands;
mod error;
mod table;
mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::{Cli, Command, Format};
use commands::Output;
use error::{CliError, CliResult};

fn write_output(output: &Output, out: Option<&Path>) -> CliResult<()> {
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = BufWriter::new(sink);
    match output {
        Output::Text(text) => w.write_all(text.as_bytes())?,
        Output::Table { config, table, oracle } => match config.format {
            Format::Csv => table.write_csv(&mut w)?,
            Format::Json => {
                let doc = json!({ "config": config, "rows": table.rows_json(), "oracle": oracle });
                serde_json::to_writer_pretty(&mut w, &doc)?;
                w.write_all(b"\n")?;
            }
        },
    }
    w.flush()?;
    Ok(())
}

fn run(cli: &Cli) -> CliResult<()> {
    let format = cli.format.unwrap_or(Format::Csv);
    let result = match &cli.command {
        Command::Generate(a) => commands::generate(a, cli.format),
        Command::Lines(a) => commands::lines(a, format),
        Command::Rqa(a) => commands::rqa(a, format),
        Command::Oracle(a) => commands::oracle(a, format),
        Command::Converge(a) => commands::converge(a, format),
        Command::Verify(a) => {
            let (report, failure) = verify::verify(a);
            write_output(&Output::Text(report), cli.out.as_deref())?;
            return match failure {
                None => Ok(()),
                Some((suite, c)) => Err(CliError::Verification(format!("{suite}: counterexample {c}"))),
            };
        }
    };
    write_output(&result?, cli.out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(k) = cli.threads {
        pool = pool.num_threads(k as usize);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("pdrqa: cannot start worker threads: {e}");
            return ExitCode::from(3);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pdrqa: {e}");
            e.exit_code()
        }
    }
}

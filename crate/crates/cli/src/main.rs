use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use gl6j_cli::{error_doc, render, run, Cli, Report};

fn configure_threads(threads: Option<usize>) -> Result<()> {
    #[cfg(feature = "parallel")]
    if let Some(t) = threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().context("configuring the thread pool")?;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

fn emit(text: &str, output: Option<&std::path::Path>) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let doc = serde_json::json!({ "error": { "kind": "usage", "message": e.kind().to_string(), "causes": [], "offset": null } });
            print!("{}", render(&doc));
            eprint!("{e}");
            return ExitCode::from(2);
        }
    };
    let result = configure_threads(cli.threads).and_then(|()| run(&cli.command, cli.threads));
    match result {
        Ok(Report { doc, summary }) => {
            if let Err(e) = emit(&render(&doc), cli.output.as_deref()) {
                eprintln!("error: {e:#}");
                return ExitCode::FAILURE;
            }
            eprintln!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let _ = emit(&render(&error_doc(&e)), cli.output.as_deref());
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use commhier_cli::render;
use commhier_cli::run::{exit_code, render_doc, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (doc, code) = match run(&cli) {
        Ok(outcome) => (outcome.doc, outcome.exit),
        Err(e) => (render::error(&e), exit_code(&e)),
    };
    // a closed pipe downstream is not worth a panic
    let _ = writeln!(
        std::io::stdout().lock(),
        "{}",
        render_doc(&doc, cli.format).trim_end()
    );
    ExitCode::from(code as u8)
}

//! Command-line front end: every command renders to text so it can be tested
//! without spawning a process.

pub mod args;
pub mod commands;
pub mod error;
pub mod figures;
pub mod format;
pub mod plot;
pub mod scenario;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use args::{Command, OutputArgs};
pub use error::{CliError, CliResult};
use format::{OutputFormat, Table};
use plot::PlotSpec;

/// A rendered command result plus the verdict that decides the exit code.
#[derive(Debug, Clone)]
pub struct Output {
    pub table: Table,
    pub plot: Option<PlotSpec>,
    pub default_format: OutputFormat,
    /// Number of failed checks; nonzero turns into an error after writing.
    pub failures: usize,
}

impl Output {
    pub fn new(table: Table) -> Self {
        Self {
            table,
            plot: None,
            default_format: OutputFormat::Csv,
            failures: 0,
        }
    }

    pub fn with_plot(mut self, plot: PlotSpec) -> Self {
        self.plot = Some(plot);
        self
    }

    pub fn with_default_format(mut self, format: OutputFormat) -> Self {
        self.default_format = format;
        self
    }

    pub fn render(&self, format: Option<OutputFormat>) -> String {
        self.table.render(format.unwrap_or(self.default_format))
    }
}

pub fn output_args(command: &Command) -> &OutputArgs {
    match command {
        Command::Figure(a) => &a.output,
        Command::Estimate(a) => &a.output,
        Command::Verify(a) => &a.output,
        Command::Oam(a) => &a.output,
        Command::Sweep(a) => &a.output,
    }
}

pub fn execute(command: &Command) -> CliResult<Output> {
    match command {
        Command::Figure(a) => figures::run(a),
        Command::Estimate(a) => commands::estimate(a),
        Command::Verify(a) => commands::verify(a),
        Command::Oam(a) => commands::oam(a),
        Command::Sweep(a) => commands::sweep(a),
    }
}

fn write_file(path: &PathBuf, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Writes the output where the user asked, then reports check failures.
pub fn emit(output: &Output, opts: &OutputArgs) -> CliResult<()> {
    let format = opts.format.unwrap_or(output.default_format);
    let text = output.render(Some(format));
    match &opts.out {
        Some(path) => {
            write_file(path, &text)?;
            if opts.emit_plot {
                let plot = output
                    .plot
                    .as_ref()
                    .ok_or_else(|| CliError::Usage("this command has no plot script".into()))?;
                let mut gp = path.clone().into_os_string();
                gp.push(".gp");
                write_file(&PathBuf::from(gp), &plot.script(path, format))?;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
        }
    }
    if output.failures > 0 {
        return Err(CliError::VerifyFailed(output.failures));
    }
    Ok(())
}

pub fn run(command: &Command) -> CliResult<()> {
    let output = execute(command)?;
    emit(&output, output_args(command))
}

//! Command-line front end: argument parsing, dispatch and reporting.

pub mod args;
pub mod report;
mod run;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command, Global};
pub use report::{ErrorInfo, Report, Status};
pub use run::execute_command;

/// Captured result of one invocation.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn absorb(&mut self, other: Outcome) {
        self.stdout.push_str(&other.stdout);
        self.stderr.push_str(&other.stderr);
        self.code = self.code.max(other.code);
    }
}

/// Runs the CLI on `args` (including the program name) without touching
/// the process streams.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    execute_with(args, false)
}

fn execute_with<I, T>(args: I, force_json: bool) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => return clap_failure(e, force_json || args.iter().any(|a| a == "--json")),
    };
    let mut global = cli.global.clone();
    global.json |= force_json;
    if let Some(path) = &cli.script {
        if cli.command.is_some() {
            return usage_failure("--script cannot be combined with a subcommand".into(), global.json);
        }
        return run_script(path, global.json);
    }
    let Some(cmd) = &cli.command else {
        return usage_failure("a subcommand or --script is required".into(), global.json);
    };
    render(&execute_command(cmd, &global), global.json)
}

fn render(report: &Report, json: bool) -> Outcome {
    let mut out = Outcome {
        code: report.exit_code(),
        ..Outcome::default()
    };
    if json {
        out.stdout = report.to_json();
        out.stdout.push('\n');
    } else if report.error.is_some() {
        out.stderr = report.to_human();
    } else {
        out.stdout = report.to_human();
    }
    out
}

fn clap_failure(e: clap::Error, json: bool) -> Outcome {
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
            stdout: e.to_string(),
            ..Outcome::default()
        },
        _ => {
            let text = e.to_string();
            usage_failure(text.strip_prefix("error: ").unwrap_or(&text).to_string(), json)
        }
    }
}

fn usage_failure(message: String, json: bool) -> Outcome {
    let report = Report::new("", String::new()).failed(ErrorInfo::usage(message.trim_end().to_string()));
    render(&report, json)
}

fn run_script(path: &std::path::Path, json: bool) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return usage_failure(format!("cannot read {}: {e}", path.display()), json),
    };
    let mut all = Outcome::default();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(words) = shlex::split(line) else {
            all.absorb(usage_failure(format!("line {}: unbalanced quotes", n + 1), json));
            continue;
        };
        let mut argv = vec!["frobnil".to_string()];
        argv.extend(words);
        if argv.iter().any(|a| a == "--script") {
            all.absorb(usage_failure(format!("line {}: scripts cannot nest", n + 1), json));
            continue;
        }
        all.absorb(execute_with(argv, json));
    }
    all
}

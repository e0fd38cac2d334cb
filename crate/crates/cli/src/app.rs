//! Argument parsing and the top-level run loop.

use std::ffi::OsString;
use std::io::Write;

use clap::parser::ValueSource;
use clap::{Arg, ArgAction, ArgMatches};
use serde_json::json;

use crate::commands::execute;
use crate::config::{parse_config, Command, Format, Kind, RunConfig, GLOBAL_KEYS};
use crate::error::{CliError, Result};
use crate::report::{self, to_json_string, Report};
use crate::sweep;

fn flag_name(key: &str) -> String {
    key.replace('_', "-")
}

fn key_arg(name: &'static str, kind: Kind, help: &'static str) -> Arg {
    let long = flag_name(name);
    let help = match kind {
        Kind::Choice(options) => format!("{help} [one of: {}]", options.join(", ")),
        _ => help.to_string(),
    };
    let arg = Arg::new(name).long(long).help(help);
    match kind {
        Kind::Flag => arg.action(ArgAction::SetTrue),
        _ => arg.value_name("VALUE").allow_hyphen_values(true).action(ArgAction::Set),
    }
}

pub fn cli() -> clap::Command {
    let globals: Vec<Arg> = GLOBAL_KEYS
        .iter()
        .filter(|k| k.name != "command")
        .map(|k| key_arg(k.name, k.kind, k.help).global(true).help_heading("Run options"))
        .chain([Arg::new("config")
            .long("config")
            .value_name("PATH")
            .help("flat key = value file; flags override its entries")
            .help_heading("Run options")
            .global(true)])
        .collect();
    clap::Command::new("edeco")
        .about("Energy decoherence simulations and sensitivity estimates")
        .version(env!("CARGO_PKG_VERSION"))
        .subcommand_required(true)
        .args(globals)
        .subcommands(Command::ALL.map(|c| {
            clap::Command::new(c.name())
                .about(c.about())
                .args(c.keys().iter().map(|k| key_arg(k.name, k.kind, k.help)))
        }))
}

fn overrides(command: Command, m: &ArgMatches) -> Vec<(String, String)> {
    let mut out = vec![("command".to_string(), command.name().to_string())];
    let keys = GLOBAL_KEYS.iter().filter(|k| k.name != "command").chain(command.keys());
    for k in keys {
        if m.value_source(k.name) != Some(ValueSource::CommandLine) {
            continue;
        }
        match k.kind {
            Kind::Flag => out.push((k.name.to_string(), "true".into())),
            _ => {
                if let Some(v) = m.get_one::<String>(k.name) {
                    out.push((k.name.to_string(), v.clone()));
                }
            }
        }
    }
    out
}

/// Parses arguments and the optional config file into a run configuration.
pub fn configure<I, T>(args: I) -> std::result::Result<RunConfig, Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match cli().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind::*;
            return Err(match e.kind() {
                DisplayHelp | DisplayVersion | DisplayHelpOnMissingArgumentOrSubcommand => Outcome {
                    code: if e.kind() == DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 },
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => Outcome::error(&CliError::Usage(first_line(&e.to_string()).to_string())),
            });
        }
    };
    let (name, sub) = matches.subcommand().expect("subcommand is required");
    let command = Command::parse(name).expect("subcommands come from the command list");
    let file = match sub.get_one::<String>("config") {
        Some(path) => std::fs::read_to_string(path).map_err(|source| {
            Outcome::error(&CliError::Io { path: path.clone(), source })
        })?,
        None => String::new(),
    };
    parse_config(&file, &overrides(command, sub)).map_err(|e| Outcome::error(&e))
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or("").trim_start_matches("error: ")
}

/// What the process prints and returns.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub fn error(e: &CliError) -> Self {
        let body = to_json_string(&e.to_json()).unwrap_or_else(|_| format!("{e}\n"));
        Self { code: e.exit_code(), stdout: String::new(), stderr: body }
    }
}

fn produce(cfg: &RunConfig) -> Result<(Report, serde_json::Value)> {
    match &cfg.sweep {
        None => {
            let r = execute(cfg.command, &cfg.params)?;
            let doc = report::document(cfg.command, &cfg.params, &r);
            Ok((r, doc))
        }
        Some(s) => {
            let r = sweep::sweep(cfg.command, &cfg.params, s)?;
            let doc = sweep::document(cfg.command, &cfg.params, &r);
            Ok((r, doc))
        }
    }
}

fn meta(cfg: &RunConfig, args: &[String]) -> serde_json::Value {
    let created = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    json!({
        "tool": "edeco",
        "version": env!("CARGO_PKG_VERSION"),
        "command": cfg.command.name(),
        "arguments": args,
        "sweep": cfg.sweep.as_ref().map(|s| &s.key),
        "created_unix": created,
    })
}

/// Runs a parsed configuration and renders its output.
pub fn execute_config(cfg: &RunConfig, args: &[String]) -> Result<Outcome> {
    let (report, doc) = produce(cfg)?;
    let json_text = to_json_string(&doc)?;
    let csv_text = report.table.to_csv()?;
    let code = if report.success { 0 } else { 1 };
    if let Some(stem) = &cfg.output_path {
        let paths = report::write_outputs(stem, &csv_text, &json_text, &meta(cfg, args))?;
        let listed: Vec<String> = paths.iter().map(|p| p.display().to_string()).collect();
        let note = to_json_string(&json!({ "written": listed }))?;
        return Ok(Outcome { code, stdout: note, stderr: String::new() });
    }
    let stdout = match cfg.format {
        Format::Json => json_text,
        Format::Csv => csv_text,
    };
    Ok(Outcome { code, stdout, stderr: String::new() })
}

/// Full command-line entry point; `args` excludes the program name.
pub fn run_args(args: Vec<String>) -> Outcome {
    let mut full = vec!["edeco".to_string()];
    full.extend(args.iter().cloned());
    match configure(full) {
        Ok(cfg) => execute_config(&cfg, &args).unwrap_or_else(|e| Outcome::error(&e)),
        Err(o) => o,
    }
}

pub fn main_with_args(args: Vec<String>) -> i32 {
    let out = run_args(args);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    out.code
}

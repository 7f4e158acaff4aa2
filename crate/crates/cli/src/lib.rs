//! Command-line driver for `liouville-core`.
//!
//! [`run`] parses an argument vector, executes the subcommand and renders a document that
//! embeds its [`RunManifest`]; replaying the manifest with `--manifest` re-executes the same
//! arguments and embeds the original manifest, so the output is byte-identical.

pub mod args;
pub mod commands;
mod output;

use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser, ValueEnum};
use liouville_core::{parse_exact, Error, Exact, QuadratureConfig, Scalar};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use args::{Cli, Command, Format, SweepArgs};
use commands::{Output, Record};

pub const SCHEMA_VERSION: u32 = 1;

/// Everything needed to re-run a command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Flag name to value (string, or list for repeated flags), including defaults.
    pub parameters: Map<String, Value>,
    pub format: String,
    pub tool_version: String,
    pub tolerances: Tolerances,
    pub timestamp: String,
}

/// Snapshot of the quadrature configuration in effect.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub tail_cut: Option<f64>,
}

impl From<QuadratureConfig> for Tolerances {
    fn from(c: QuadratureConfig) -> Self {
        Tolerances { rel_tol: c.rel_tol, abs_tol: c.abs_tol, max_subdivisions: c.max_subdivisions, tail_cut: c.tail_cut }
    }
}

/// Exit code, standard output and diagnostics of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NONCONVERGENCE: i32 = 3;
pub const EXIT_DIVERGENCE: i32 = 4;

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invalid(_) | Error::Rejected(_) => EXIT_INVALID,
        Error::NonConvergence { .. } => EXIT_NONCONVERGENCE,
        Error::Divergence { .. } => EXIT_DIVERGENCE,
    }
}

fn status_name(e: &Error) -> &'static str {
    match e {
        Error::Invalid(_) => "invalid",
        Error::Rejected(_) => "rejected",
        Error::NonConvergence { .. } => "non_convergence",
        Error::Divergence { .. } => "divergence",
    }
}

fn invalid_output(msg: String) -> RunOutput {
    RunOutput { code: EXIT_INVALID, stdout: String::new(), stderr: msg }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let matches = match Cli::command().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    RunOutput { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => invalid_output(text),
            };
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => return invalid_output(e.render().to_string()),
    };
    if let Some(path) = &cli.manifest {
        return replay(path);
    }
    let Some(command) = &cli.command else {
        return invalid_output(format!("a subcommand or --manifest is required\n\n{}", Cli::command().render_usage()));
    };
    let (name, sub) = matches.subcommand().expect("subcommand present");
    let manifest = RunManifest {
        command: name.to_string(),
        parameters: capture_parameters(name, sub),
        format: format_name(effective_format(&cli)).to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        tolerances: tolerances_of(command).into(),
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
    };
    execute(command, effective_format(&cli), &manifest)
}

/// A `--format` among sweep's inner arguments applies to the whole sweep document.
fn effective_format(cli: &Cli) -> Format {
    let Some(Command::Sweep(a)) = &cli.command else { return cli.format };
    let mut found = None;
    for (i, t) in a.inner.iter().enumerate() {
        let v = match t.strip_prefix("--format") {
            Some("") => a.inner.get(i + 1).map(String::as_str),
            Some(rest) => rest.strip_prefix('='),
            None => None,
        };
        if let Some(f) = v.and_then(|v| Format::from_str(v, true).ok()) {
            found = Some(f);
        }
    }
    found.unwrap_or(cli.format)
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
    }
}

fn tolerances_of(c: &Command) -> QuadratureConfig {
    let q = match c {
        Command::Potential(a) => Some(&a.quad),
        Command::Family(a) => Some(&a.quad),
        Command::Identity(a) => Some(&a.quad),
        _ => None,
    };
    q.and_then(|q| commands::quad_config(q).ok()).unwrap_or_default()
}

/// Subcommand arguments in definition order, with defaults, as replayable strings.
fn capture_parameters(name: &str, sub: &ArgMatches) -> Map<String, Value> {
    let cmd = Cli::command();
    let sc = cmd.find_subcommand(name).expect("known subcommand");
    let mut out = Map::new();
    for arg in sc.get_arguments() {
        let id = arg.get_id().as_str();
        if matches!(id, "manifest" | "format" | "help" | "version") {
            continue;
        }
        let Ok(Some(raw)) = sub.try_get_raw(id) else { continue };
        let vals: Vec<String> = raw.map(|v| v.to_string_lossy().into_owned()).collect();
        if !arg.get_action().takes_values() {
            if vals.first().map(String::as_str) == Some("true") {
                out.insert(id.to_string(), json!(true));
            }
            continue;
        }
        let multi = arg.get_num_args().is_some_and(|r| r.max_values() > 1) || arg.get_value_delimiter().is_some()
            || matches!(arg.get_action(), clap::ArgAction::Append);
        out.insert(id.to_string(), if multi { json!(vals) } else { json!(vals[0]) });
    }
    out
}

/// Rebuilds an argument vector from a manifest.
pub fn manifest_argv(m: &RunManifest) -> Result<Vec<String>, String> {
    let cmd = Cli::command();
    let sc = cmd.find_subcommand(&m.command).ok_or_else(|| format!("unknown command '{}' in manifest", m.command))?;
    let mut argv = vec!["liouville".to_string(), "--format".into(), m.format.clone(), m.command.clone()];
    let mut positional = Vec::new();
    for (id, value) in &m.parameters {
        let arg = sc
            .get_arguments()
            .find(|a| a.get_id().as_str() == id)
            .ok_or_else(|| format!("unknown parameter '{id}' for '{}'", m.command))?;
        let vals: Vec<String> = match value {
            Value::Bool(true) => vec![],
            Value::Bool(false) => continue,
            Value::String(s) => vec![s.clone()],
            Value::Array(a) => a.iter().map(|v| v.as_str().map(str::to_string).ok_or("non-string value")).collect::<Result<_, _>>()?,
            other => return Err(format!("unsupported manifest value {other} for '{id}'")),
        };
        if arg.is_positional() {
            positional.extend(vals);
            continue;
        }
        let long = format!("--{}", arg.get_long().ok_or("argument without a long flag")?);
        if vals.is_empty() {
            argv.push(long);
        } else {
            for v in vals {
                argv.push(long.clone());
                argv.push(v);
            }
        }
    }
    argv.extend(positional);
    Ok(argv)
}

fn load_manifest(path: &str) -> Result<RunManifest, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read manifest {path}: {e}"))?;
    let doc: Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        // csv documents carry the manifest on their first comment line
        Err(_) => text
            .lines()
            .find_map(|l| l.strip_prefix("# manifest: "))
            .ok_or_else(|| format!("{path} is neither a manifest nor an output document"))
            .and_then(|l| serde_json::from_str(l).map_err(|e| e.to_string()))?,
    };
    let m = doc.get("manifest").cloned().unwrap_or(doc);
    serde_json::from_value(m).map_err(|e| format!("malformed manifest: {e}"))
}

fn replay(path: &str) -> RunOutput {
    let manifest = match load_manifest(path) {
        Ok(m) => m,
        Err(e) => return invalid_output(e),
    };
    let argv = match manifest_argv(&manifest) {
        Ok(a) => a,
        Err(e) => return invalid_output(e),
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => return invalid_output(e.render().to_string()),
    };
    match &cli.command {
        Some(c) => execute(c, effective_format(&cli), &manifest),
        None => invalid_output("manifest does not name a subcommand".into()),
    }
}

fn dispatch(c: &Command) -> liouville_core::Result<Output> {
    match c {
        Command::Classify(a) => commands::classify(a),
        Command::Criticals(a) => commands::criticals(a),
        Command::Iterate(a) => commands::iterate(a),
        Command::Potential(a) => commands::potential(a),
        Command::Family(a) => commands::family(a),
        Command::Shoot(a) => commands::shoot(a),
        Command::Threshold(a) => commands::threshold(a),
        Command::Identity(a) => commands::identity(a),
        Command::Sweep(a) => sweep(a),
    }
}

fn execute(c: &Command, format: Format, manifest: &RunManifest) -> RunOutput {
    match dispatch(c) {
        Ok(out) => RunOutput {
            code: EXIT_OK,
            stdout: output::render(format, manifest, "ok", None, &out),
            stderr: String::new(),
        },
        Err(e) => {
            let code = exit_code(&e);
            let stdout = if code == EXIT_INVALID {
                String::new()
            } else {
                output::render(format, manifest, status_name(&e), Some(&e.to_string()), &Output::default())
            };
            RunOutput { code, stdout, stderr: format!("error: {e}\n") }
        }
    }
}

/// Expands `name=v1,v2` or `name=start:stop:step` into exact values (as strings).
pub fn expand_axis(spec: &str) -> liouville_core::Result<(String, Vec<String>)> {
    let bad = || Error::Invalid(format!("--over '{spec}': expected name=v1,v2 or name=start:stop:step"));
    let (name, values) = spec.split_once('=').ok_or_else(bad)?;
    let parse = |t: &str| parse_exact(t.trim()).ok_or_else(bad);
    let vals = if values.contains(':') {
        let parts: Vec<&str> = values.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let (start, stop, step) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
        if step <= Exact::int(0) {
            return Err(bad());
        }
        let mut out = Vec::new();
        let mut v = start;
        while v <= stop {
            out.push(v.to_string());
            v += step.clone();
            if out.len() > 100_000 {
                return Err(Error::Invalid(format!("--over '{spec}' expands to too many points")));
            }
        }
        out
    } else {
        values.split(',').map(|t| parse(t).map(|v| v.to_string())).collect::<liouville_core::Result<_>>()?
    };
    if name.is_empty() || vals.is_empty() {
        return Err(bad());
    }
    Ok((name.to_string(), vals))
}

fn sweep(a: &SweepArgs) -> liouville_core::Result<Output> {
    let axes = a.over.iter().map(|s| expand_axis(s)).collect::<liouville_core::Result<Vec<_>>>()?;
    if matches!(a.inner.first().map(String::as_str), Some("sweep")) {
        return Err(Error::Invalid("sweep cannot be nested".into()));
    }
    let mut points: Vec<Vec<(String, String)>> = vec![vec![]];
    for (name, vals) in &axes {
        points = points
            .into_iter()
            .flat_map(|p| {
                vals.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push((name.clone(), v.clone()));
                    q
                })
            })
            .collect();
    }
    let eval = |point: &Vec<(String, String)>| -> Vec<Record> {
        let mut argv = vec!["liouville".to_string()];
        argv.extend(a.inner.iter().cloned());
        for (k, v) in point {
            argv.push(format!("--{k}"));
            argv.push(v.clone());
        }
        let mut prefix = Record::new();
        for (k, v) in point {
            prefix.insert(k.clone(), commands::rational(&parse_exact(v).expect("expanded value")));
        }
        let result = match Cli::try_parse_from(&argv) {
            Ok(Cli { command: Some(c), .. }) => dispatch(&c),
            Ok(_) => Err(Error::Invalid("sweep needs an inner subcommand".into())),
            Err(e) => Err(Error::Invalid(e.to_string().lines().next().unwrap_or("parse error").to_string())),
        };
        match result {
            Ok(out) => out
                .records
                .into_iter()
                .map(|r| {
                    let mut row = prefix.clone();
                    row.insert("status".into(), json!("ok"));
                    row.extend(r);
                    row
                })
                .collect(),
            Err(e) => {
                let mut row = prefix.clone();
                row.insert("status".into(), json!(status_name(&e)));
                row.insert("error".into(), json!(e.to_string()));
                vec![row]
            }
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs)
        .build()
        .map_err(|e| Error::Invalid(format!("cannot start {} worker threads: {e}", a.jobs)))?;
    let rows: Vec<Vec<Record>> = pool.install(|| points.par_iter().map(eval).collect());
    Ok(Output { records: rows.into_iter().flatten().collect(), summary: Some(Map::from_iter([("points".to_string(), json!(points.len()))])) })
}

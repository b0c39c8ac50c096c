//! Argument handling, reporting and exit codes.

use std::ffi::OsString;
use std::panic;
use std::path::{Path, PathBuf};
use std::sync::Once;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use frobsub_core::algebra::ceiling::is_ceiling_payload;
use frobsub_core::algebra::{parse_rational, with_term_ceiling, Rational, DEFAULT_TERM_CEILING};

use crate::commands::{self, CommandError, Outcome};
use crate::manifest::{load_manifest, Manifest};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CEILING: i32 = 3;
pub const EXIT_NEGATIVE: i32 = 10;

#[derive(Parser, Debug)]
#[command(name = "frobsub", version, about = "Exact checks for natural Frobenius submanifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Also write the deterministic JSON report to PATH.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Substitute a rational value for a submanifold parameter.
    #[arg(long = "set", global = true, value_name = "NAME=VALUE")]
    pub set: Vec<String>,
    /// Exit with status 10 when a verdict is negative or an axiom fails.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Override the manifest's polynomial term ceiling.
    #[arg(long, global = true, value_name = "TERMS")]
    pub term_ceiling: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Frobenius axioms and Saito identities of the ambient manifold.
    Verify { manifest: PathBuf },
    /// Evaluate the naturality criterion for the submanifold.
    SubmanifoldCheck { manifest: PathBuf },
    /// Classify a hypersurface by the position of the unit field.
    Classify { manifest: PathBuf },
    /// Find the parameter values for which the submanifold is natural.
    SolveFamily { manifest: PathBuf },
    /// Build the product with the one-dimensional manifold and verify it.
    ConstructProduct {
        manifest: PathBuf,
        /// Write the product as a manifest to PATH.
        #[arg(long, value_name = "PATH")]
        emit: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::SubmanifoldCheck { .. } => "submanifold-check",
            Command::Classify { .. } => "classify",
            Command::SolveFamily { .. } => "solve-family",
            Command::ConstructProduct { .. } => "construct-product",
        }
    }

    fn manifest(&self) -> &Path {
        match self {
            Command::Verify { manifest }
            | Command::SubmanifoldCheck { manifest }
            | Command::Classify { manifest }
            | Command::SolveFamily { manifest }
            | Command::ConstructProduct { manifest, .. } => manifest,
        }
    }
}

/// Result of one invocation, as seen by a caller that does not want the
/// process to exit.
pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    /// The JSON report, when a command produced one.
    pub report: Option<serde_json::Value>,
}

/// Silences the default panic message for the term-ceiling unwind only.
fn install_quiet_hook() {
    static ONCE: Once = Once::new();
    ONCE.call_once(|| {
        let default = panic::take_hook();
        panic::set_hook(Box::new(move |info| {
            if !is_ceiling_payload(info.payload()) {
                default(info);
            }
        }));
    });
}

pub fn run<I, T>(args: I) -> Run
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), rendered)
            } else {
                (rendered, String::new())
            };
            return Run {
                code,
                stdout,
                stderr,
                report: None,
            };
        }
    };
    install_quiet_hook();
    execute(&cli)
}

fn fail(code: i32, message: String) -> Run {
    Run {
        code,
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
        report: None,
    }
}

fn parse_settings(set: &[String]) -> Result<Vec<(String, Rational)>, String> {
    let mut out: Vec<(String, Rational)> = Vec::new();
    for item in set {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| format!("--set {item}: expected NAME=VALUE"))?;
        let name = name.trim().to_string();
        let value = parse_rational(value)
            .ok_or_else(|| format!("--set {item}: `{}` is not a rational number", value.trim()))?;
        if out.iter().any(|(n, _)| *n == name) {
            return Err(format!("--set {item}: parameter `{name}` set twice"));
        }
        out.push((name, value));
    }
    Ok(out)
}

fn apply_settings(manifest: &mut Manifest, settings: &[(String, Rational)]) -> Result<(), String> {
    if settings.is_empty() {
        return Ok(());
    }
    let Some(emb) = &manifest.submanifold else {
        return Err("--set needs a manifest with a [submanifold] section".into());
    };
    for (name, _) in settings {
        if !emb.params().contains(name) {
            return Err(format!("--set: `{name}` is not a submanifold parameter"));
        }
    }
    manifest.submanifold = Some(emb.specialize(settings).map_err(|e| e.to_string())?);
    Ok(())
}

fn execute(cli: &Cli) -> Run {
    let started = Instant::now();
    let settings = match parse_settings(&cli.set) {
        Ok(s) => s,
        Err(e) => return fail(EXIT_INPUT, e),
    };
    let path = cli.command.manifest();
    let load_ceiling = cli.term_ceiling.unwrap_or(DEFAULT_TERM_CEILING);
    let mut manifest = match guarded(load_ceiling, || load_manifest(path)) {
        Guarded::Done(Ok(m)) => m,
        Guarded::Done(Err(e)) => return fail(EXIT_INPUT, e.to_string()),
        Guarded::Ceiling(msg) => return fail(EXIT_CEILING, msg),
        Guarded::Internal(msg) => return fail(EXIT_INPUT, format!("internal error: {msg}")),
    };
    if let Err(e) = apply_settings(&mut manifest, &settings) {
        return fail(EXIT_INPUT, e);
    }
    let strict = cli.strict || manifest.options.strict;
    let ceiling = cli.term_ceiling.unwrap_or(manifest.options.term_ceiling);

    let mut emitted: Option<String> = None;
    let result = guarded(ceiling, || match &cli.command {
        Command::Verify { .. } => commands::verify(&manifest),
        Command::SubmanifoldCheck { .. } => commands::submanifold_check(&manifest),
        Command::Classify { .. } => commands::classify(&manifest),
        Command::SolveFamily { .. } => commands::solve_family(&manifest),
        Command::ConstructProduct { .. } => commands::construct_product(&manifest).map(|(o, t)| {
            emitted = Some(t);
            o
        }),
    });
    let Outcome {
        payload,
        text,
        negative,
    } = match result {
        Guarded::Done(Ok(o)) => o,
        Guarded::Done(Err(CommandError::Input(e))) => return fail(EXIT_INPUT, e),
        Guarded::Ceiling(msg) => return fail(EXIT_CEILING, msg),
        Guarded::Internal(msg) => return fail(EXIT_INPUT, format!("internal error: {msg}")),
    };
    let code = if strict && negative { EXIT_NEGATIVE } else { EXIT_OK };

    let settings_json: serde_json::Map<String, serde_json::Value> = settings
        .iter()
        .map(|(n, v)| (n.clone(), json!(frobsub_core::algebra::format_rational(v))))
        .collect();
    let report = json!({
        "tool": "frobsub",
        "version": env!("CARGO_PKG_VERSION"),
        "command": cli.command.name(),
        "manifest": { "path": path.display().to_string(), "sha256": manifest.digest },
        "settings": settings_json,
        "strict": strict,
        "negative": negative,
        "exit_code": code,
        "result": payload,
        "timing": { "elapsed_ms": started.elapsed().as_millis() as u64 },
    });

    let mut stdout = text;
    if let (Command::ConstructProduct { emit: Some(out), .. }, Some(t)) = (&cli.command, &emitted) {
        if let Err(e) = std::fs::write(out, t) {
            return fail(EXIT_INPUT, format!("{}: {e}", out.display()));
        }
        stdout.push_str(&format!("product manifest written to {}\n", out.display()));
    }
    if let Some(json_path) = &cli.json {
        let mut body = serde_json::to_string_pretty(&report).expect("json report");
        body.push('\n');
        if let Err(e) = std::fs::write(json_path, body) {
            return fail(EXIT_INPUT, format!("{}: {e}", json_path.display()));
        }
    }
    Run {
        code,
        stdout,
        stderr: String::new(),
        report: Some(report),
    }
}

enum Guarded<T> {
    Done(T),
    Ceiling(String),
    Internal(String),
}

fn guarded<T>(ceiling: usize, f: impl FnOnce() -> T) -> Guarded<T> {
    match panic::catch_unwind(panic::AssertUnwindSafe(|| with_term_ceiling(ceiling, f))) {
        Ok(Ok(v)) => Guarded::Done(v),
        Ok(Err(exceeded)) => Guarded::Ceiling(exceeded.to_string()),
        Err(payload) => Guarded::Internal(
            payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unexpected failure".into()),
        ),
    }
}

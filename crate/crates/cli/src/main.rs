mod commands;
mod report;
mod settings;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use strata_core::algebra::{parse_document_with, DEFAULT_LENGTH_CAP};
use strata_core::strata::StrataChoice;

use commands::Outcome;
use report::{digest, Report, SCHEMA_VERSION};
use settings::Settings;

/// Mixed stratifying systems and Ringel duals of quiver algebras, in exact arithmetic.
#[derive(Parser, Debug)]
#[command(name = "strata", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Algebra file.
    file: PathBuf,
    /// Ground field: Q or F<p> (also Fp:<p>), overriding the file.
    #[arg(long)]
    field: Option<String>,
    /// Cap on universal extension steps.
    #[arg(long)]
    cap: Option<usize>,
    /// Write the JSON report here (`-` for stdout instead of the summary).
    #[arg(long)]
    json: Option<PathBuf>,
    /// TOML file with caps and field.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension, Cartan matrix and Loewy length.
    Info {
        #[command(flatten)]
        common: Common,
    },
    /// Standard, proper standard, costandard and proper costandard modules.
    Strata {
        #[command(flatten)]
        common: Common,
    },
    /// Whether the regular module is filtered by the chosen family.
    Check {
        #[command(flatten)]
        common: Common,
        /// Comma list of d (standard) and p (proper standard).
        #[arg(long, conflicts_with = "all")]
        choice: Option<StrataChoice>,
        /// Every choice.
        #[arg(long)]
        all: bool,
    },
    /// Relative projectives (or injectives) of the chosen family.
    System {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        choice: Option<StrataChoice>,
        #[arg(long)]
        cosystem: bool,
    },
    /// Ringel dual for the chosen family.
    Ringel {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        choice: Option<StrataChoice>,
    },
    /// Iterated universal extensions of M by N: P1, I1, S1, D1, Dbar1 or a module named in the file.
    Univext {
        #[command(flatten)]
        common: Common,
        m: String,
        n: String,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Info { common }
            | Command::Strata { common }
            | Command::Check { common, .. }
            | Command::System { common, .. }
            | Command::Ringel { common, .. }
            | Command::Univext { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Info { .. } => "info",
            Command::Strata { .. } => "strata",
            Command::Check { .. } => "check",
            Command::System { .. } => "system",
            Command::Ringel { .. } => "ringel",
            Command::Univext { .. } => "univext",
        }
    }
}

fn run(cmd: &Command) -> Result<(Report, String)> {
    let common = cmd.common();
    let cfg = Settings::resolve(common.config.as_deref(), common.field.clone(), common.cap)?;
    let bytes = std::fs::read(&common.file)
        .with_context(|| format!("reading {}", common.file.display()))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| strata_core::Error::Input("file is not UTF-8".into()))?;
    let doc = parse_document_with(&text, cfg.field()?, DEFAULT_LENGTH_CAP)?;
    let Outcome {
        status,
        results,
        text,
    } = match cmd {
        Command::Info { .. } => commands::info(&doc)?,
        Command::Strata { .. } => commands::strata(&doc)?,
        Command::Check { choice, all, .. } => commands::check(&doc, choice.as_ref(), *all, &cfg)?,
        Command::System {
            choice, cosystem, ..
        } => commands::system(&doc, choice.as_ref(), *cosystem, &cfg)?,
        Command::Ringel { choice, .. } => commands::ringel(&doc, choice.as_ref(), &cfg)?,
        Command::Univext { m, n, .. } => commands::univext(&doc, m, n, &cfg)?,
    };
    let mut settings = serde_json::to_value(&cfg)?;
    if let Some(obj) = settings.as_object_mut() {
        obj.insert("arguments".into(), serde_json::json!(arguments(cmd)));
    }
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: cmd.name().into(),
        input_digest: digest(&bytes, &settings),
        settings,
        status,
        results,
    };
    Ok((report, text))
}

/// Command-specific arguments that change the result.
fn arguments(cmd: &Command) -> Vec<String> {
    match cmd {
        Command::Info { .. } | Command::Strata { .. } => Vec::new(),
        Command::Check { choice, all, .. } => vec![
            choice.as_ref().map(|c| c.to_string()).unwrap_or_default(),
            all.to_string(),
        ],
        Command::System {
            choice, cosystem, ..
        } => {
            vec![
                choice.as_ref().map(|c| c.to_string()).unwrap_or_default(),
                cosystem.to_string(),
            ]
        }
        Command::Ringel { choice, .. } => {
            vec![choice.as_ref().map(|c| c.to_string()).unwrap_or_default()]
        }
        Command::Univext { m, n, .. } => vec![m.clone(), n.clone()],
    }
}

fn write_json(path: &Path, report: &Report) -> Result<()> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    if path == Path::new("-") {
        print!("{s}");
        return Ok(());
    }
    std::fs::write(path, s).with_context(|| format!("writing {}", path.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let json = cli.command.common().json.clone();
    match run(&cli.command) {
        Ok((report, text)) => {
            match &json {
                Some(p) => {
                    if let Err(e) = write_json(p, &report) {
                        eprintln!("error: {e:#}");
                        return ExitCode::from(3);
                    }
                    if p != Path::new("-") {
                        print!("{text}");
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = if commands::cap_error(&e) {
                2
            } else if commands::input_error(&e) {
                3
            } else {
                1
            };
            ExitCode::from(code)
        }
    }
}

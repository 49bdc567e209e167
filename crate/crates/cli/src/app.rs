//! Argument parsing and command dispatch.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use truestages::ordinal::Ceiling;
use truestages::{parse_ordinal, Error, FinSeq, Ordinal, Universe};

use crate::commands;

#[derive(Parser, Debug)]
#[command(
    name = "truestages",
    version,
    about = "Finite-scale true-stage relations and their applications"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Longest sequence in the universe.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_len: usize,
    /// Entries range over 0..alphabet.
    #[arg(long, global = true, default_value_t = 2)]
    pub alphabet: u64,
    /// Comma-separated level notations.
    #[arg(long, global = true, default_value = "0,1,2")]
    pub levels: String,
    /// Level notation for single-level commands.
    #[arg(long, global = true, default_value = "1")]
    pub alpha: String,
    /// Ordinal bound for difference families.
    #[arg(long, global = true)]
    pub eta: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Game depth.
    #[arg(long, global = true, default_value_t = 3)]
    pub depth: usize,
    /// JSON input file.
    #[arg(long, global = true)]
    pub instance: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the true-stage properties over the universe.
    Verify {
        /// Window for limit stabilization.
        #[arg(long, default_value_t = 4)]
        window: u64,
        /// Use the non-monotone operator.
        #[arg(long)]
        reversed: bool,
    },
    /// Print jump traces and p-values.
    Jump,
    /// Dump the level relations.
    Truestages,
    /// Hausdorff–Kuratowski conversions.
    Hk {
        #[command(subcommand)]
        action: HkAction,
    },
    /// Decompositions at a limit level.
    Wadge {
        #[command(subcommand)]
        action: WadgeAction,
    },
    /// The separation game.
    Lsr {
        #[command(subcommand)]
        action: LsrAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum HkAction {
    /// Approximation to witness to difference family, for one approximation.
    Convert,
    /// Run the round trip on seeded random approximations.
    Roundtrip {
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum WadgeAction {
    Decompose,
    Eval {
        /// Maximal sequence to evaluate, e.g. [0,2,1]; all when omitted.
        #[arg(long)]
        x: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum LsrAction {
    Solve,
    Referee {
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    Separator,
    Adversarial,
}

/// The exit code and the report text.
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

pub struct Report {
    pub results: Vec<Value>,
    pub failures: Vec<Value>,
    /// Replaces the rendered text report when set.
    pub text: Option<String>,
}

impl Report {
    pub fn new(results: Vec<Value>, failures: Vec<Value>) -> Self {
        Report {
            results,
            failures,
            text: None,
        }
    }
}

pub struct Context {
    pub common: Common,
    pub rng: ChaCha8Rng,
}

impl Context {
    pub fn universe(&self) -> Result<Universe, Error> {
        if self.common.alphabet == 0 {
            return Err(Error::Input("--alphabet must be positive".into()));
        }
        let u = Universe::new(self.common.max_len, self.common.alphabet);
        match u.size() {
            Some(n) if n <= 2_000_000 => Ok(u),
            _ => Err(Error::Input("universe too large to enumerate".into())),
        }
    }

    pub fn levels(&self) -> Result<Vec<Ordinal>, Error> {
        self.common
            .levels
            .split(',')
            .map(|t| truestages::ordinal::parse_ordinal_with(t.trim(), &Ceiling::unbounded()))
            .collect()
    }

    pub fn alpha(&self) -> Result<Ordinal, Error> {
        truestages::ordinal::parse_ordinal_with(&self.common.alpha, &Ceiling::unbounded())
    }

    pub fn eta(&self) -> Result<Option<Ordinal>, Error> {
        self.common.eta.as_deref().map(parse_ordinal).transpose()
    }

    pub fn read_instance<T: serde::de::DeserializeOwned>(&self) -> Result<Option<T>, Error> {
        let Some(path) = &self.common.instance else {
            return Ok(None);
        };
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map(Some)
            .map_err(|e| Error::Input(format!("malformed {}: {e}", path.display())))
    }
}

pub fn parse_seq(text: &str) -> Result<FinSeq, Error> {
    text.trim().parse()
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Verify { .. } => "verify".into(),
        Command::Jump => "jump".into(),
        Command::Truestages => "truestages".into(),
        Command::Hk { action } => match action {
            HkAction::Convert => "hk convert".into(),
            HkAction::Roundtrip { .. } => "hk roundtrip".into(),
        },
        Command::Wadge { action } => match action {
            WadgeAction::Decompose => "wadge decompose".into(),
            WadgeAction::Eval { .. } => "wadge eval".into(),
        },
        Command::Lsr { action } => match action {
            LsrAction::Solve => "lsr solve".into(),
            LsrAction::Referee { .. } => "lsr referee".into(),
            LsrAction::Separator => "lsr separator".into(),
            LsrAction::Adversarial => "lsr adversarial".into(),
        },
    }
}

fn render_text(value: &Value, prefix: &str, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let p = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                render_text(v, &p, out);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                render_text(v, &format!("{prefix}[{i}]"), out);
            }
        }
        other => {
            out.push_str(prefix);
            out.push_str(" = ");
            out.push_str(&match other {
                Value::String(s) => s.clone(),
                v => v.to_string(),
            });
            out.push('\n');
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome {
                code,
                output: e.to_string(),
            };
        }
    };
    let name = command_name(&cli.command);
    let format = cli.common.format;
    let mut ctx = Context {
        rng: ChaCha8Rng::seed_from_u64(cli.common.seed),
        common: cli.common,
    };
    let report = match commands::dispatch(&cli.command, &mut ctx) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                code: 2,
                output: format!("error: {e}\n"),
            }
        }
    };
    let code = if report.failures.is_empty() { 0 } else { 1 };
    let envelope = json!({
        "command": name,
        "config": ctx.common,
        "results": report.results,
        "failures": report.failures,
    });
    let output = match format {
        Format::Json => serde_json::to_string_pretty(&envelope).expect("values serialize") + "\n",
        Format::Text => match report.text {
            Some(t) => t,
            None => {
                let mut out = String::new();
                render_text(&envelope, "", &mut out);
                out
            }
        },
    };
    Outcome { code, output }
}

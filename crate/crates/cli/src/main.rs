use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use ginlab::PointConfig;
use serde::Deserialize;

mod render;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Svg,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "ginlab",
    version,
    about = "Exact gin staircases of uniform fat points in P^2"
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Timing and progress on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    /// Read the whole run description from a JSON file instead of a subcommand.
    #[arg(long)]
    config_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the negative classes used by the blow-up engine.
    Classes { config: PointConfig },
    /// Tabulate H(t) for the symbolic power.
    Hilbert {
        config: PointConfig,
        #[arg(long)]
        m: u64,
        #[arg(long, conflicts_with = "t_range")]
        t: Option<u64>,
        /// Inclusive range `A..B`.
        #[arg(long)]
        t_range: Option<String>,
    },
    /// The revlex gin staircase of the m-th symbolic power.
    Gin {
        config: PointConfig,
        #[arg(long)]
        m: u64,
    },
    /// Scaled staircases against the predicted limiting line.
    Shape {
        config: PointConfig,
        /// Comma separated multiplicities.
        #[arg(long, value_delimiter = ',', required = true)]
        m_list: Vec<u64>,
        /// Also write the SVG overlay to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run the self-check suite.
    Verify {
        config: PointConfig,
        #[arg(long, default_value_t = 30)]
        max_m: u64,
    },
}

/// A complete run, from flags or from a `--config-file`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: String,
    pub config: String,
    #[serde(default)]
    pub m: Option<u64>,
    #[serde(default)]
    pub m_list: Option<Vec<u64>>,
    #[serde(default)]
    pub t: Option<u64>,
    #[serde(default)]
    pub t_range: Option<String>,
    #[serde(default)]
    pub max_m: Option<u64>,
    #[serde(default)]
    pub svg: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub verbosity: u8,
}

/// Parsed and validated form of [`RunConfig`].
#[derive(Debug)]
pub enum Job {
    Classes,
    Hilbert {
        m: u64,
        ts: std::ops::RangeInclusive<u64>,
    },
    Gin {
        m: u64,
    },
    Shape {
        m_list: Vec<u64>,
        svg: Option<PathBuf>,
    },
    Verify {
        max_m: u64,
    },
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::anyhow!(msg.into())
}

fn parse_range(s: &str) -> anyhow::Result<std::ops::RangeInclusive<u64>> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| usage(format!("expected A..B, got `{s}`")))?;
    let a: u64 = a
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad range start in `{s}`")))?;
    let b: u64 = b
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad range end in `{s}`")))?;
    if a > b {
        return Err(usage(format!("empty range `{s}`")));
    }
    Ok(a..=b)
}

impl RunConfig {
    fn resolve(&self) -> anyhow::Result<(PointConfig, Job)> {
        let config: PointConfig = self.config.parse()?;
        let need_m = || {
            self.m
                .ok_or_else(|| usage(format!("`{}` needs m", self.command)))
        };
        let job = match self.command.as_str() {
            "classes" => Job::Classes,
            "hilbert" => {
                let ts = match (&self.t, &self.t_range) {
                    (Some(t), None) => *t..=*t,
                    (None, Some(range)) => parse_range(range)?,
                    _ => return Err(usage("hilbert needs exactly one of t and t_range")),
                };
                Job::Hilbert { m: need_m()?, ts }
            }
            "gin" => Job::Gin { m: need_m()? },
            "shape" => Job::Shape {
                m_list: self
                    .m_list
                    .clone()
                    .ok_or_else(|| usage("shape needs m_list"))?,
                svg: self.svg.clone(),
            },
            "verify" => Job::Verify {
                max_m: self.max_m.unwrap_or(30),
            },
            other => return Err(usage(format!("unknown command `{other}`"))),
        };
        Ok((config, job))
    }
}

fn run_config_from(cli: Cli) -> anyhow::Result<RunConfig> {
    if let Some(path) = &cli.config_file {
        if cli.command.is_some() {
            return Err(usage("--config-file cannot be combined with a subcommand"));
        }
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut rc: RunConfig =
            serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        rc.format = cli.format.or(rc.format);
        rc.out = cli.out.or(rc.out);
        rc.verbosity = rc.verbosity.max(cli.verbose);
        return Ok(rc);
    }
    let Some(command) = cli.command else {
        return Err(usage("a subcommand or --config-file is required"));
    };
    let mut rc = RunConfig {
        command: String::new(),
        config: String::new(),
        m: None,
        m_list: None,
        t: None,
        t_range: None,
        max_m: None,
        svg: None,
        format: cli.format,
        out: cli.out,
        verbosity: cli.verbose,
    };
    let config = match command {
        Command::Classes { config } => {
            rc.command = "classes".into();
            config
        }
        Command::Hilbert {
            config,
            m,
            t,
            t_range,
        } => {
            rc.command = "hilbert".into();
            (rc.m, rc.t, rc.t_range) = (Some(m), t, t_range);
            config
        }
        Command::Gin { config, m } => {
            rc.command = "gin".into();
            rc.m = Some(m);
            config
        }
        Command::Shape {
            config,
            m_list,
            svg,
        } => {
            rc.command = "shape".into();
            (rc.m_list, rc.svg) = (Some(m_list), svg);
            config
        }
        Command::Verify { config, max_m } => {
            rc.command = "verify".into();
            rc.max_m = Some(max_m);
            config
        }
    };
    rc.config = config.to_string();
    Ok(rc)
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("GINLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        usage(format!(
            "GINLAB_THREADS must be a positive integer, got `{raw}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("configuring the thread pool")?;
    Ok(())
}

fn emit(out: &Option<PathBuf>, mut text: String) -> anyhow::Result<()> {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// Runs the job; `Ok(false)` means a verification failure.
fn run(rc: &RunConfig) -> anyhow::Result<bool> {
    let (config, job) = rc.resolve()?;
    let start = Instant::now();
    if rc.verbosity > 0 {
        eprintln!("ginlab: {} {config} ({:?})", rc.command, job);
    }
    let (text, ok) = match &job {
        Job::Classes => (render::classes(config, rc.format)?, true),
        Job::Hilbert { m, ts } => (render::hilbert(config, *m, ts.clone(), rc.format)?, true),
        Job::Gin { m } => (render::gin(config, *m, rc.format)?, true),
        Job::Shape { m_list, svg } => {
            let report = ginlab::shape_report(config, m_list)?;
            if let Some(path) = svg {
                emit(&Some(path.clone()), report.to_svg())?;
            }
            (render::shape(&report, rc.format)?, true)
        }
        Job::Verify { max_m } => {
            let report = ginlab::run_suite(config, *max_m)?;
            (render::verify(&report, rc.format)?, report.passed)
        }
    };
    emit(&rc.out, text)?;
    if rc.verbosity > 0 {
        eprintln!("ginlab: done in {:.3?}", start.elapsed());
    }
    Ok(ok)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<ginlab::Error>() {
        if e.is_arithmetic_guard() {
            return 3;
        }
    }
    2
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = configure_threads()
        .and_then(|()| run_config_from(cli))
        .and_then(|rc| run(&rc));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

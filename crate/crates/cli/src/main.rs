//! `gcn`: batch driver for the exact λ-bracket and cohomology computations.
//!
//! Every subcommand prints one report (text or JSON) and exits with status 0
//! iff every check in it passed; configuration errors exit with status 2.
//! Set `GCN_THREADS` to bound the worker threads of the parallel assembly.

mod commands;
mod report;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use gcn_core::ModuleDescriptor;

use commands::Source;
use report::{Report, RunConfig};

#[derive(Parser)]
#[command(name = "gcn", version, about = "Exact λ-bracket calculus and truncated cohomology of gc_N")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone, Debug)]
struct Common {
    /// Matrix size N of gc_N.
    #[arg(long = "N", default_value_t = 1)]
    n: usize,
    /// Level bound L (default depends on the subcommand).
    #[arg(long)]
    level: Option<usize>,
    /// Extra levels of unknowns and conditions used to project the kernel.
    #[arg(long, default_value_t = 1)]
    margin: usize,
    /// Coefficient module: trivial, twisted:a or natural:N:alpha.
    #[arg(long, default_value = "trivial")]
    module: String,
    /// Work in the reduced complex.
    #[arg(long)]
    reduced: bool,
    /// Seed for random cochains.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Skew-symmetry, Jacobi, central-extension and module axioms up to level L.
    Axioms {
        #[command(flatten)]
        common: Common,
        /// Check the central extension instead of gc_N.
        #[arg(long)]
        extended: bool,
        /// Perturb the structure constants (negative control).
        #[arg(long)]
        corrupt: bool,
    },
    /// Truncated cohomology dimensions over a range of degrees.
    Cohomology {
        #[command(flatten)]
        common: Common,
        /// Degrees `a..b` (inclusive) or a single degree.
        #[arg(long, default_value = "0..2")]
        q: String,
    },
    /// Check a cochain is a cocycle and search for a primitive.
    Verify {
        #[command(flatten)]
        common: Common,
        /// psi-prime, psi-prime-basic or gamma-bar.
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        builtin: Option<String>,
        /// A cochain in the text format.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Seeded random checks of d² = 0 and the homotopy identities.
    Properties {
        #[command(flatten)]
        common: Common,
        /// Random cochains per check.
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Print a seeded random cochain (or its coboundary) in the text format.
    Sample {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        q: usize,
        /// Print dφ instead of φ.
        #[arg(long)]
        coboundary: bool,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>> {
    let bad = || anyhow!("expected a degree or a range `a..b`, found `{s}`");
    match s.split_once("..") {
        None => {
            let q = s.trim().parse().map_err(|_| bad())?;
            Ok(q..=q)
        }
        Some((a, b)) => {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
            if a > b {
                bail!("empty degree range `{s}`");
            }
            Ok(a..=b)
        }
    }
}

fn config(command: &'static str, common: &Common, default_level: usize) -> Result<(RunConfig, ModuleDescriptor)> {
    let module = ModuleDescriptor::parse(&common.module).with_context(|| format!("--module {}", common.module))?;
    if module.is_free() && module.rank() != common.n {
        bail!("module {module} has rank {} but --N is {}", module.rank(), common.n);
    }
    let cfg = RunConfig {
        command,
        n: common.n,
        level: common.level.unwrap_or(default_level),
        margin: common.margin,
        module: module.to_string(),
        reduced: common.reduced,
        seed: common.seed,
        source: None,
    };
    Ok((cfg, module))
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_report(common: &Common, report: &Report) -> Result<bool> {
    let text = match common.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    emit(common, &text)?;
    Ok(report.passed)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Axioms {
            common,
            extended,
            corrupt,
        } => {
            let (cfg, module) = config("axioms", &common, 4)?;
            emit_report(&common, &commands::axioms(cfg, &module, extended, corrupt)?)
        }
        Command::Cohomology { common, q } => {
            let (cfg, module) = config("cohomology", &common, 3)?;
            emit_report(&common, &commands::cohomology(cfg, &module, parse_range(&q)?)?)
        }
        Command::Verify { common, builtin, file } => {
            let (mut cfg, _) = config("verify", &common, 3)?;
            let source = match (builtin, file) {
                (Some(name), _) => Source::Builtin(name),
                (None, Some(path)) => Source::File(path),
                (None, None) => bail!("pass --builtin or --file"),
            };
            let c = commands::load(&source, cfg.n, cfg.level)?;
            if common.level.is_none() {
                cfg.level = c.level_bound;
            }
            // the cochain itself fixes the complex it lives in
            cfg.n = c.rank();
            cfg.module = c.module.to_string();
            cfg.reduced = c.reduced;
            cfg.source = Some(match &source {
                Source::Builtin(name) => format!("builtin {name}"),
                Source::File(path) => format!("file {}", path.display()),
            });
            emit_report(&common, &commands::verify(cfg, &c)?)
        }
        Command::Properties { common, count } => {
            let (cfg, module) = config("properties", &common, 2)?;
            emit_report(&common, &commands::properties(cfg, &module, count)?)
        }
        Command::Sample { common, q, coboundary } => {
            let (cfg, module) = config("sample", &common, 2)?;
            emit(&common, &commands::sample(&cfg, &module, q, coboundary)?)?;
            Ok(true)
        }
    }
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("GCN_THREADS") {
        let threads: usize = v.trim().parse().with_context(|| format!("GCN_THREADS={v}"))?;
        #[cfg(feature = "parallel")]
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
        #[cfg(not(feature = "parallel"))]
        let _ = threads;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match init_threads().and_then(|()| run(cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

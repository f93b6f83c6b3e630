//! Command-line front end. Artifacts go to stdout or `--out` (atomically);
//! progress and diagnostics go to stderr only.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use glnq::error::Error;
use glnq_cli::commands::{self, Artifact};
use glnq_cli::{cache, fmt, verify};

#[derive(Parser)]
#[command(name = "glnq", version, about = "Harmonic analysis on GL_n and SL_n over finite fields")]
struct Cli {
    /// Cache directory (default: $GLNQ_CACHE_DIR, then ./.glnq-cache).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the artifact to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension-degree window per tensor rank, with witness constructions.
    Dims {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Character-ratio leading terms per tensor rank.
    Ratios {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "GL", value_parser = ["GL", "SL"])]
        group: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Leading term of the rank-k census; exact census for small concrete q.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "GL", value_parser = ["GL", "SL"])]
        group: String,
        #[arg(long)]
        q: Option<u64>,
        /// List every representation datum instead of counting (needs --q).
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Apply the rank-preserving lift to a representation datum.
    Eta {
        /// Representation datum as JSON.
        #[arg(long)]
        tau: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Row-strip expansion of a diagram.
    Pieri {
        /// Comma-separated partition, e.g. `3,2`.
        #[arg(long)]
        shape: String,
        #[arg(long)]
        boxes: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Table of shape representations of GL_n with ratio data at q.
    Sps {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact character table plus rank report for a small group.
    Chartab {
        #[arg(long, default_value = "GL", value_parser = ["GL", "SL", "SYM"])]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Transvection random walk: exact, Fourier, or Monte Carlo.
    Walk {
        #[arg(long, default_value = "SL", value_parser = ["GL", "SL"])]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value = "fourier", value_parser = ["exact", "fourier", "mc"])]
        mode: String,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the verification suite; exits 3 if any criterion fails.
    Verify {
        #[arg(long, default_value = "desk", value_parser = ["desk"])]
        level: String,
    },
    /// Inspect or clear the disk cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// List cache entries with sizes and checksum status.
    List,
    /// Remove every cache entry.
    Clear,
    /// Recompute the characters behind each entry and compare.
    Verify,
}

fn emit(artifact: Artifact, output: &OutputArgs) -> Result<(), Error> {
    let bytes = match output.format.as_str() {
        "csv" => artifact
            .csv
            .ok_or_else(|| Error::invalid("this subcommand has no CSV form"))?
            .into_bytes(),
        _ => {
            let mut s = serde_json::to_string_pretty(&artifact.json)
                .map_err(|e| Error::internal(format!("serializing artifact: {e}")))?;
            s.push('\n');
            s.into_bytes()
        }
    };
    match &output.out {
        Some(path) => cache::atomic_write(path, &bytes),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(&bytes)
                .map_err(|e| Error::internal(format!("writing stdout: {e}")))
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let cache_dir = cache::resolve_dir(cli.cache_dir.as_deref());
    match cli.command {
        Command::Dims { n, output } => emit(commands::dims(n)?, &output)?,
        Command::Ratios { n, q, group, output } => {
            let family = match group.as_str() {
                "SL" => glnq::pcf::GroupFamily::Sl,
                _ => glnq::pcf::GroupFamily::Gl,
            };
            emit(commands::ratios(n, q, family)?, &output)?;
        }
        Command::Count {
            n,
            k,
            group,
            q,
            list,
            output,
        } => {
            if list {
                let q = q.ok_or_else(|| Error::invalid("--list requires --q"))?;
                emit(commands::enumerate(n, q)?, &output)?;
            } else {
                let family = match group.as_str() {
                    "SL" => glnq::pcf::GroupFamily::Sl,
                    _ => glnq::pcf::GroupFamily::Gl,
                };
                emit(commands::count(n, k, family, q)?, &output)?;
            }
        }
        Command::Eta { tau, n, output } => {
            let v: serde_json::Value = serde_json::from_str(&tau)
                .map_err(|e| Error::invalid(format!("--tau is not valid JSON: {e}")))?;
            let tau = fmt::parse_irrep(&v)?;
            emit(commands::eta_cmd(&tau, n)?, &output)?;
        }
        Command::Pieri { shape, boxes, output } => {
            let shape = fmt::parse_partition_arg(&shape)?;
            emit(commands::pieri(&shape, boxes)?, &output)?;
        }
        Command::Sps { n, q, output } => emit(commands::sps(n, q)?, &output)?,
        Command::Chartab { group, n, q, output } => {
            let kind = commands::parse_group_kind(&group)?;
            emit(commands::chartab(&cache_dir, kind, n, q)?, &output)?;
        }
        Command::Walk {
            group,
            n,
            q,
            steps,
            mode,
            trials,
            seed,
            output,
        } => {
            let kind = commands::parse_group_kind(&group)?;
            let mode = commands::parse_walk_mode(&mode)?;
            emit(
                commands::walk(&cache_dir, kind, n, q, steps, mode, trials, seed)?,
                &output,
            )?;
        }
        Command::Verify { level: _ } => {
            let results = verify::run_all(&cache_dir);
            let mut all_ok = true;
            for r in &results {
                println!("{}", r.line());
                all_ok &= r.passed();
            }
            if !all_ok {
                return Ok(ExitCode::from(3));
            }
        }
        Command::Cache { action } => match action {
            CacheAction::List => {
                for (name, size, ok) in cache::list(&cache_dir)? {
                    println!("{name}\t{size}\t{}", if ok { "ok" } else { "corrupt" });
                }
            }
            CacheAction::Clear => {
                let removed = cache::clear(&cache_dir)?;
                eprintln!("removed {removed} cache files");
            }
            CacheAction::Verify => {
                let mut all_ok = true;
                for (name, _, checksum_ok) in cache::list(&cache_dir)? {
                    let ok = checksum_ok && {
                        // name = "{kind}_{n}_{q}.group.json"
                        let stem = name.trim_end_matches(".group.json");
                        let mut it = stem.split('_');
                        match (it.next(), it.next(), it.next()) {
                            (Some(kind), Some(n), Some(q)) => {
                                let parsed = commands::parse_group_kind(kind)
                                    .ok()
                                    .zip(n.parse::<usize>().ok())
                                    .zip(q.parse::<u64>().ok());
                                match parsed {
                                    Some(((kind, n), q)) => {
                                        cache::load_group_data(&cache_dir, kind, n, q)
                                            .and_then(|gd| cache::recheck_characters(&gd))
                                            .is_ok()
                                    }
                                    None => false,
                                }
                            }
                            _ => false,
                        }
                    };
                    println!("{name}\t{}", if ok { "ok" } else { "FAILED" });
                    all_ok &= ok;
                }
                if !all_ok {
                    return Ok(ExitCode::from(3));
                }
            }
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidInput(_) | Error::Unsupported(_) => 1,
                Error::ResourceLimit(_) => 2,
                Error::Internal(_) => 4,
            })
        }
    }
}

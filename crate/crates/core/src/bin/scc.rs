use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use scc_core::bounds::{min_colors_bound, BoundMode};
use scc_core::format::{emit_coloring, emit_instance, parse_coloring, parse_instance};
use scc_core::generate::{gen_degenerate, random_conflicts, random_forest_family};
use scc_core::oracle::adversarial_chi_con;
use scc_core::reductions::{adapted_to_scc, coop_to_adapted};
use scc_core::{moser_tardos_solve, ConflictInstance, Error, Outcome, SolverConfig, Variant};

const EXIT_FAILED: u8 = 1;
const EXIT_EXHAUSTED: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "scc", version, about = "Single-conflict coloring toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a coloring avoiding every conflict.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_rounds: Option<usize>,
        #[arg(long, default_value = "auto")]
        variant: Variant,
        /// Override the sampling probability.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        output: PathBuf,
    },
    /// Check a coloring against an instance; exits 1 on any violation.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Print a sufficient number of colors.
    Bounds {
        /// degenerate, max-degree, multiplicity, restrictiveness or cooperative.
        #[arg(long)]
        mode: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        mu: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Exact oracles for small graphs.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
    /// Write a random instance to stdout.
    Gen {
        #[command(subcommand)]
        which: GenCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Smallest k such that every conflict function on the input's graph is
    /// colorable; prints `none` and exits 1 if it exceeds --max-k.
    Chicon {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        max_k: usize,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// d-degenerate simple graph with a single color and `0 0` conflicts.
    Degenerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random conflicts over k colors on the input's graph.
    Conflicts {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        mu: Option<usize>,
    },
    /// Family of random forests as an adapted instance; member i is color i.
    Forests {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_instance(path: &Path) -> Result<ConflictInstance, String> {
    parse_instance(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(command: Command) -> Result<ExitCode, String> {
    let lib = |e: Error| e.to_string();
    match command {
        Command::Solve {
            input,
            seed,
            max_rounds,
            variant,
            p,
            output,
        } => {
            let inst = read_instance(&input)?;
            let config = SolverConfig {
                variant,
                probability_override: p,
                max_rounds,
                seed,
            };
            let report = moser_tardos_solve(&inst, &config).map_err(lib)?;
            if let Some(col) = &report.coloring {
                fs::write(&output, emit_coloring(col))
                    .map_err(|e| format!("{}: {e}", output.display()))?;
            }
            println!("outcome={}", report.outcome);
            println!("rounds={}", report.rounds);
            println!("resamples={}", report.resampled_vertices);
            match report.p_used {
                Some(p) => println!("p_used={p}"),
                None => println!("p_used=none"),
            }
            println!("variant_used={}", report.variant_used);
            println!("seed={}", report.seed);
            Ok(match report.outcome {
                Outcome::Solved => ExitCode::SUCCESS,
                Outcome::ExhaustedRounds => ExitCode::from(EXIT_EXHAUSTED),
                Outcome::InfeasibleDetected => ExitCode::from(EXIT_FAILED),
            })
        }
        Command::Verify { input, coloring } => {
            let inst = read_instance(&input)?;
            let col = parse_coloring(&read(&coloring)?, inst.vertex_count())
                .map_err(|e| format!("{}: {e}", coloring.display()))?;
            let violated = inst.verify(&col).map_err(lib)?;
            for &e in &violated {
                let a = inst.arc(e);
                println!(
                    "violated {} {} {} {} {}",
                    a.id, a.tail, a.head, a.c_tail, a.c_head
                );
            }
            if violated.is_empty() {
                println!("ok");
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(EXIT_FAILED))
            }
        }
        Command::Bounds {
            mode,
            d,
            delta,
            mu,
            r,
        } => {
            let mode = BoundMode::from_name(&mode, mu, r).map_err(lib)?;
            println!("{}", min_colors_bound(d, delta, mode).map_err(lib)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle {
            which: OracleCommand::Chicon { input, max_k },
        } => {
            let inst = read_instance(&input)?;
            match adversarial_chi_con(inst.graph(), max_k).map_err(lib)? {
                Some(k) => {
                    println!("{k}");
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("none");
                    Ok(ExitCode::from(EXIT_FAILED))
                }
            }
        }
        Command::Gen { which } => {
            let inst = match which {
                GenCommand::Degenerate { n, d, seed } => {
                    let g = gen_degenerate(n, d, seed);
                    let arcs = g
                        .edges()
                        .iter()
                        .map(|e| (e.u, e.v, 0, 0))
                        .collect::<Vec<_>>();
                    ConflictInstance::from_arcs(n, 1, arcs).map_err(lib)?
                }
                GenCommand::Conflicts { input, k, seed, mu } => {
                    let base = read_instance(&input)?;
                    random_conflicts(base.graph(), k, mu, seed).map_err(lib)?
                }
                GenCommand::Forests {
                    count,
                    n,
                    max_degree,
                    seed,
                } => {
                    let fam = random_forest_family(count, n, max_degree, seed).map_err(lib)?;
                    adapted_to_scc(&coop_to_adapted(&fam))
                }
            };
            print!("{}", emit_instance(&inst));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

//! `garside`: normal forms, lengths, equation solving, ranking experiments
//! and geodesic queries for braid groups.
//!
//! Exit codes: 0 success, 1 no solution or element not found, 2 usage or
//! input error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use garside_core::experiments::{self, ExperimentConfig};
use garside_core::lengths::LengthMetric;
use garside_core::solver::{self, EquationSpec, SolverConfig};
use garside_core::syntax::{self, parse_word};
use garside_core::{oracle, Error, Kind, Structure};

#[derive(Parser)]
#[command(
    name = "garside",
    version,
    about = "Garside normal forms and length functions for braid groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StructureArg {
    Artin,
    Bkl,
}

impl From<StructureArg> for Kind {
    fn from(s: StructureArg) -> Self {
        match s {
            StructureArg::Artin => Kind::Artin,
            StructureArg::Bkl => Kind::Bkl,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Greedy,
    Rational,
}

#[derive(Subcommand)]
enum Command {
    /// Print the greedy or rational normal form of a word.
    Nf {
        #[arg(long, value_enum, default_value = "artin")]
        structure: StructureArg,
        #[arg(long)]
        strands: usize,
        #[arg(long, value_enum, default_value = "greedy")]
        form: Form,
        /// Word such as "s1 s2^-1" or "a(3,1) D^-1"; empty for the identity.
        word: String,
    },
    /// Print the length of a word under one of the four metrics.
    Len {
        #[arg(long)]
        metric: LengthMetric,
        /// Syntax of the input word.
        #[arg(long, value_enum, default_value = "artin")]
        structure: StructureArg,
        #[arg(long)]
        strands: usize,
        word: String,
    },
    /// Solve an equation given as JSON with the memory-length search.
    Solve {
        /// JSON file with keys template, generators, parameters, target.
        equation: PathBuf,
        /// Syntax of the words in the file.
        #[arg(long, value_enum, default_value = "artin")]
        structure: StructureArg,
        /// Strand count; inferred from the largest atom when omitted.
        #[arg(long)]
        strands: Option<usize>,
        /// Expression length n of each variable.
        #[arg(long, short = 'n')]
        length: usize,
        /// Retry lengths up to this value when no solution is found.
        #[arg(long)]
        max_length: Option<usize>,
        /// Beam width M.
        #[arg(long, short = 'm', default_value_t = 64)]
        memory: usize,
        #[arg(long, default_value = "rational-bkl")]
        metric: LengthMetric,
        /// Candidates explored per variable, comma separated.
        #[arg(long, value_delimiter = ',')]
        cutoffs: Option<Vec<usize>>,
        /// Give up after this many seconds.
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Run a ranking experiment and write its CSV (and optional SVG).
    Experiment {
        /// JSON with keys ns, wl, ng, sl, samples, metric, seed.
        config: PathBuf,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run two metrics on the same samples and report curve dominance.
    Compare {
        config: PathBuf,
        #[arg(long, default_value = "rational-bkl")]
        upper: LengthMetric,
        #[arg(long, default_value = "rational-artin")]
        lower: LengthMetric,
        #[arg(long, default_value_t = experiments::PLOT_POSITIONS)]
        positions: usize,
        /// CSV path; the metric name is inserted before the extension.
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Exact geodesic length by breadth-first search.
    Oracle {
        #[arg(long, value_enum, default_value = "artin")]
        structure: StructureArg,
        #[arg(long)]
        strands: usize,
        /// Largest radius searched.
        #[arg(long = "max")]
        max_radius: usize,
        word: String,
    },
}

/// Outcome that is not a usage error.
enum Miss {
    NoSolution(String),
    NotFound(String),
}

type Outcome = Result<std::result::Result<(), Miss>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Miss::NoSolution(msg) | Miss::NotFound(msg))) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Nf {
            structure,
            strands,
            form,
            word,
        } => {
            let kind = Kind::from(structure);
            let st = Structure::new(kind, strands)?;
            let w = parse_word(&word, kind, strands)?;
            let nf = st.greedy_nf(&w)?;
            match form {
                Form::Greedy => println!("{}", syntax::format_greedy(&st, &nf)),
                Form::Rational => {
                    let (neg, pos) = syntax::format_rational_parts(&st, &st.rational_nf(&nf));
                    println!("neg {neg}");
                    println!("pos {pos}");
                }
            }
        }
        Command::Len {
            metric,
            structure,
            strands,
            word,
        } => {
            let w = parse_word(&word, structure.into(), strands)?;
            println!("{}", metric.evaluate(&w)?);
        }
        Command::Solve {
            equation,
            structure,
            strands,
            length,
            max_length,
            memory,
            metric,
            cutoffs,
            timeout,
        } => {
            return solve(
                equation,
                structure.into(),
                strands,
                length,
                max_length,
                memory,
                metric,
                cutoffs,
                timeout,
            )
        }
        Command::Experiment { config, csv, svg } => {
            let cfg = read_experiment_config(&config)?;
            let result = experiments::run_experiment(&cfg)?;
            let written = experiments::emit_results(&[&result], &csv, svg.as_deref())
                .with_context(|| format!("writing {}", csv.display()))?;
            println!(
                "{}: P(best ≤ 1) = {:?}, P(best ≤ 3) = {:?}",
                cfg.metric,
                result.at_most(1),
                result.at_most(3)
            );
            for path in written {
                println!("wrote {}", path.display());
            }
        }
        Command::Compare {
            config,
            upper,
            lower,
            positions,
            csv,
            svg,
        } => {
            let cfg = read_experiment_config(&config)?;
            let cmp = experiments::compare_metrics(&cfg, upper, lower, positions)?;
            let written =
                experiments::emit_results(&[&cmp.upper, &cmp.lower], &csv, svg.as_deref())
                    .with_context(|| format!("writing {}", csv.display()))?;
            println!(
                "{upper} vs {lower} over {} positions: fraction ≥ 0 = {:?}, area = {:?}",
                cmp.positions, cmp.fraction_nonnegative, cmp.area
            );
            for path in written {
                println!("wrote {}", path.display());
            }
        }
        Command::Oracle {
            structure,
            strands,
            max_radius,
            word,
        } => {
            let w = parse_word(&word, structure.into(), strands)?;
            match oracle::geodesic_length(&w, max_radius) {
                Ok(len) => println!("{len}"),
                Err(e @ Error::NotFound(_)) => return Ok(Err(Miss::NotFound(e.to_string()))),
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(Ok(()))
}

fn read_experiment_config(path: &PathBuf) -> Result<ExperimentConfig> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(ExperimentConfig::from_json(&text)?)
}

#[allow(clippy::too_many_arguments)]
fn solve(
    path: PathBuf,
    kind: Kind,
    strands: Option<usize>,
    length: usize,
    max_length: Option<usize>,
    memory: usize,
    metric: LengthMetric,
    cutoffs: Option<Vec<usize>>,
    timeout: Option<f64>,
) -> Outcome {
    let text =
        std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    let eq = EquationSpec::from_json(&text, kind, strands)?;
    let cfg = SolverConfig {
        cutoffs,
        ..SolverConfig::new(length, memory, metric)
    };
    cfg.validate()?;
    let max_length = max_length.unwrap_or(length);

    let (tx, rx) = mpsc::channel();
    let worker_eq = eq.clone();
    std::thread::spawn(move || {
        let _ = tx.send(solver::solve_with_lengths(
            &worker_eq,
            &cfg,
            length..=max_length,
        ));
    });
    let result = match timeout {
        Some(secs) => match rx.recv_timeout(Duration::from_secs_f64(secs)) {
            Ok(r) => r,
            Err(_) => {
                return Ok(Err(Miss::NoSolution(format!(
                    "no solution within {secs} s (this does not prove unsolvability)"
                ))))
            }
        },
        None => rx.recv().context("solver thread stopped")?,
    };
    match result {
        Ok(report) => {
            for (i, (value, moves)) in report
                .assignment
                .values
                .iter()
                .zip(&report.assignment.expressions)
                .enumerate()
            {
                let expr: String = moves.iter().map(|m| m.to_string()).collect();
                println!("x{} = {}", i + 1, syntax::format_word(value));
                println!(
                    "x{} expression {}",
                    i + 1,
                    if expr.is_empty() { "()".into() } else { expr }
                );
            }
            println!("evaluations {}", report.evaluations);
            Ok(Ok(()))
        }
        Err(e @ Error::NoSolutionFound) => Ok(Err(Miss::NoSolution(e.to_string()))),
        Err(e) => Err(e.into()),
    }
}

//! Thin command-line front end; all logic lives in the library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qsplit::circuit::Circuit;
use qsplit::experiments::{
    reproduce_paper, run_experiment, Algorithm, ExperimentConfig, NoiseSpec, OracleSpec,
};
use qsplit::split::split_circuit;

#[derive(Parser)]
#[command(
    name = "qsplit",
    version,
    about = "Distributed quantum algorithm simulator built on even/odd oracle splitting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OracleArgs {
    /// Variable count; required with --target/--marked.
    #[arg(long)]
    n: Option<usize>,
    /// Single marked bitstring (qubit 0 rightmost).
    #[arg(long)]
    target: Option<String>,
    /// Comma-separated marked bitstrings.
    #[arg(long, value_delimiter = ',')]
    marked: Vec<String>,
    /// Truth table file (`ARITY n` header, one output bit per line).
    #[arg(long)]
    truth_table: Option<PathBuf>,
    /// Formula file (`ARITY n` header, one minterm bitstring per line).
    #[arg(long)]
    formula: Option<PathBuf>,
}

impl OracleArgs {
    fn into_spec(self) -> Result<OracleSpec, String> {
        let mut targets = self.marked;
        if let Some(t) = self.target {
            targets.insert(0, t);
        }
        match (self.truth_table, self.formula, targets.is_empty()) {
            (Some(path), None, true) => Ok(OracleSpec::TruthTableFile(path)),
            (None, Some(path), true) => Ok(OracleSpec::FormulaFile(path)),
            (None, None, false) => {
                let n = self
                    .n
                    .ok_or_else(|| "--target/--marked need --n".to_string())?;
                Ok(OracleSpec::Marked { n, targets })
            }
            _ => Err("give exactly one oracle source: --target/--marked, --truth-table, or --formula".to_string()),
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    #[arg(long, default_value_t = 8096)]
    shots: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// `off`, `p0=<float>`, or `<profile>:T=<int>,Ng=<int>`.
    #[arg(long, default_value = "off")]
    noise: String,
    /// Output directory for artifacts.
    #[arg(long, default_value = "qsplit-out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Undistributed search for marked elements.
    Grover {
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Split the oracle and search each half on its own machine.
    GroverDist {
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 0)]
        parity: usize,
        /// Per-machine noise override.
        #[arg(long)]
        noise_even: Option<String>,
        #[arg(long)]
        noise_odd: Option<String>,
    },
    /// Period finding on a phase oracle.
    Simon {
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        max_queries: Option<usize>,
    },
    /// Distributed period finding over parity-qubit rounds.
    SimonDist {
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        max_queries: Option<usize>,
    },
    /// Constant-vs-balanced with a single quantum query.
    Dj {
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Distributed constant-vs-balanced.
    DjDist {
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 0)]
        parity: usize,
    },
    /// Classical random-sampling baseline.
    DjClassical {
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 0.125)]
        epsilon: f64,
    },
    /// Split a DNF-form circuit file into `<base>.even` and `<base>.odd`.
    Split {
        /// Circuit file (`WIDTH n` header, one gate per line).
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long, default_value_t = 0)]
        parity: usize,
        /// Output base path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the canned reproduction suite and write a pass/fail report.
    Reproduce {
        #[arg(long, default_value = "qsplit-out/reproduce")]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    match real_main() {
        Ok(()) => ExitCode::SUCCESS,
        Err(RunError::Config(msg)) => {
            eprintln!("{}", error_json("config", &msg));
            ExitCode::from(1)
        }
        Err(RunError::Runtime(msg)) => {
            eprintln!("{}", error_json("runtime", &msg));
            ExitCode::from(2)
        }
    }
}

enum RunError {
    Config(String),
    Runtime(String),
}

impl From<qsplit::Error> for RunError {
    fn from(e: qsplit::Error) -> RunError {
        if e.is_config() {
            RunError::Config(e.to_string())
        } else {
            RunError::Runtime(e.to_string())
        }
    }
}

fn error_json(kind: &str, msg: &str) -> String {
    serde_json::json!({ "error": { "kind": kind, "message": msg } }).to_string()
}

fn real_main() -> Result<(), RunError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Grover { oracle, common } => {
            let config = build_config(Algorithm::Grover, oracle, common, |_| {})?;
            let record = run_experiment(&config)?;
            if let Some(frac) = record.observed_target_fraction {
                println!("target fraction: {frac:.4}");
            }
            done(&config.output_dir)
        }
        Command::GroverDist {
            oracle,
            common,
            parity,
            noise_even,
            noise_odd,
        } => {
            let even = parse_noise_opt(noise_even)?;
            let odd = parse_noise_opt(noise_odd)?;
            let config = build_config(Algorithm::GroverDist, oracle, common, |c| {
                c.parity_qubit = parity;
                c.noise_even = even.clone();
                c.noise_odd = odd.clone();
            })?;
            let record = run_experiment(&config)?;
            println!(
                "result: {}",
                record.result_bitstring.as_deref().unwrap_or("-")
            );
            done(&config.output_dir)
        }
        Command::Simon {
            oracle,
            common,
            max_queries,
        } => {
            let config = build_config(Algorithm::Simon, oracle, common, |c| {
                c.max_queries = max_queries;
            })?;
            let record = run_experiment(&config)?;
            println!(
                "period: {} after {} queries",
                record.period.as_deref().unwrap_or("-"),
                record.queries_used.unwrap_or(0)
            );
            done(&config.output_dir)
        }
        Command::SimonDist {
            oracle,
            common,
            max_queries,
        } => {
            let config = build_config(Algorithm::SimonDist, oracle, common, |c| {
                c.max_queries = max_queries;
            })?;
            let record = run_experiment(&config)?;
            println!(
                "period: {} after {} queries over {} parity rounds",
                record.period.as_deref().unwrap_or("-"),
                record.queries_used.unwrap_or(0),
                record.parity_rounds.unwrap_or(0)
            );
            done(&config.output_dir)
        }
        Command::Dj { oracle, common } => {
            let config = build_config(Algorithm::Dj, oracle, common, |_| {})?;
            let record = run_experiment(&config)?;
            println!(
                "verdict: {} ({} query)",
                record.verdict.as_deref().unwrap_or("-"),
                record.queries_used.unwrap_or(0)
            );
            done(&config.output_dir)
        }
        Command::DjDist {
            oracle,
            common,
            parity,
        } => {
            let config = build_config(Algorithm::DjDist, oracle, common, |c| {
                c.parity_qubit = parity;
            })?;
            let record = run_experiment(&config)?;
            println!(
                "verdict: {} ({} queries)",
                record.verdict.as_deref().unwrap_or("-"),
                record.queries_used.unwrap_or(0)
            );
            done(&config.output_dir)
        }
        Command::DjClassical {
            oracle,
            common,
            epsilon,
        } => {
            let config = build_config(Algorithm::DjClassical, oracle, common, |c| {
                c.epsilon = epsilon;
            })?;
            let record = run_experiment(&config)?;
            println!(
                "verdict: {} ({} queries)",
                record.verdict.as_deref().unwrap_or("-"),
                record.queries_used.unwrap_or(0)
            );
            done(&config.output_dir)
        }
        Command::Split {
            circuit,
            parity,
            out,
        } => {
            let text = std::fs::read_to_string(&circuit).map_err(qsplit::Error::from)?;
            let parsed = Circuit::from_text(&text)?;
            let split = split_circuit(&parsed, parity)?;
            let even_path = out.with_extension("even");
            let odd_path = out.with_extension("odd");
            std::fs::write(&even_path, split.even.to_text()).map_err(qsplit::Error::from)?;
            std::fs::write(&odd_path, split.odd.to_text()).map_err(qsplit::Error::from)?;
            let summary = serde_json::json!({
                "parity_qubit": split.parity_qubit,
                "parent_width": split.parent_width,
                "even_terms": split.even_terms,
                "odd_terms": split.odd_terms,
                "even": even_path.display().to_string(),
                "odd": odd_path.display().to_string(),
            });
            let summary_path = out.with_extension("split.json");
            std::fs::write(
                &summary_path,
                serde_json::to_string_pretty(&summary).map_err(qsplit::Error::from)?,
            )
            .map_err(qsplit::Error::from)?;
            println!(
                "wrote {}, {}, {}",
                even_path.display(),
                odd_path.display(),
                summary_path.display()
            );
            Ok(())
        }
        Command::Reproduce { out, seed } => {
            let report = reproduce_paper(&out, seed)?;
            print!("{}", report.to_text());
            if report.all_pass {
                Ok(())
            } else {
                Err(RunError::Runtime("reproduction checks failed".to_string()))
            }
        }
    }
}

fn parse_noise_opt(text: Option<String>) -> Result<Option<NoiseSpec>, RunError> {
    text.map(|t| NoiseSpec::parse(&t)).transpose().map_err(RunError::from)
}

fn build_config(
    algorithm: Algorithm,
    oracle: OracleArgs,
    common: CommonArgs,
    tweak: impl FnOnce(&mut ExperimentConfig),
) -> Result<ExperimentConfig, RunError> {
    let spec = oracle.into_spec().map_err(RunError::Config)?;
    let mut config = ExperimentConfig::new(algorithm, spec, common.out);
    config.shots = common.shots;
    config.seed = common.seed;
    config.noise = NoiseSpec::parse(&common.noise)?;
    tweak(&mut config);
    Ok(config)
}

fn done(out_dir: &std::path::Path) -> Result<(), RunError> {
    println!("artifacts in {}", out_dir.display());
    Ok(())
}

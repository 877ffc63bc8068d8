//! Configuration-driven experiment runs and the canned reproduction suite.
//!
//! Every run writes deterministic artifacts into its output directory: shot
//! histograms as CSV and JSON, a bit-flip distance table when a single
//! target is known, and a `run_record.json` tying instance, seeds, noise,
//! and results together. Identical configs and seeds produce byte-identical
//! files.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::bits::{parse_bits, remove_bit};
use crate::dj::{classical_dj_baseline, deutsch_jozsa, distributed_deutsch_jozsa};
use crate::dnf::{dnf_to_phase_oracle, truth_table_to_dnf, DnfFormula, TruthTable};
use crate::error::{Error, Result};
use crate::grover::{distributed_grover, grover_run, GroverPlan};
use crate::histogram::ShotHistogram;
use crate::noise::{
    binomial_error_profile, derive_noise, fit_bit_flip_rate, MachineProfile, NoiseParams,
};
use crate::simon::{distributed_simon, simon_find_period};

/// Environment variable pointing at a directory of `<name>.json` profiles.
pub const PROFILE_DIR_ENV: &str = "QSPLIT_PROFILE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Grover,
    GroverDist,
    Simon,
    SimonDist,
    Dj,
    DjDist,
    DjClassical,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Grover => "grover",
            Algorithm::GroverDist => "grover-dist",
            Algorithm::Simon => "simon",
            Algorithm::SimonDist => "simon-dist",
            Algorithm::Dj => "dj",
            Algorithm::DjDist => "dj-dist",
            Algorithm::DjClassical => "dj-classical",
        }
    }

    pub fn is_distributed(&self) -> bool {
        matches!(
            self,
            Algorithm::GroverDist | Algorithm::SimonDist | Algorithm::DjDist
        )
    }
}

/// Where the oracle function comes from.
#[derive(Debug, Clone)]
pub enum OracleSpec {
    TruthTableFile(PathBuf),
    FormulaFile(PathBuf),
    /// Explicit list of marked bitstrings over `n` variables.
    Marked { n: usize, targets: Vec<String> },
}

impl OracleSpec {
    pub fn resolve(&self) -> Result<(DnfFormula, String)> {
        match self {
            OracleSpec::TruthTableFile(path) => {
                let table = TruthTable::from_text(&fs::read_to_string(path)?)?;
                Ok((
                    truth_table_to_dnf(&table),
                    format!("truth table {}", path.display()),
                ))
            }
            OracleSpec::FormulaFile(path) => Ok((
                DnfFormula::from_text(&fs::read_to_string(path)?)?,
                format!("formula {}", path.display()),
            )),
            OracleSpec::Marked { n, targets } => {
                let mut terms = Vec::new();
                for t in targets {
                    if t.len() != *n {
                        return Err(Error::InvalidBitstring { input: t.clone() });
                    }
                    terms.push(parse_bits(t)?);
                }
                Ok((
                    DnfFormula::new(*n, terms)?,
                    format!("marked [{}]", targets.join(" ")),
                ))
            }
        }
    }
}

/// Noise switch: off, an explicit flip probability, or a machine profile
/// with the circuit statistics that feed the channel estimate.
#[derive(Debug, Clone, PartialEq)]
pub enum NoiseSpec {
    Off,
    FlipProbability(f64),
    Profile {
        name: String,
        time_steps: u32,
        two_qubit_gates: u32,
    },
}

impl NoiseSpec {
    /// Accepts `off`, `p0=<float>`, or `<profile>:T=<int>,Ng=<int>`.
    pub fn parse(text: &str) -> Result<NoiseSpec> {
        let bad = |msg: String| Error::Config { msg };
        let text = text.trim();
        if text.eq_ignore_ascii_case("off") {
            return Ok(NoiseSpec::Off);
        }
        if let Some(v) = text.strip_prefix("p0=") {
            let p0: f64 = v
                .parse()
                .map_err(|_| bad(format!("bad flip probability `{v}`")))?;
            return Ok(NoiseSpec::FlipProbability(p0));
        }
        let (name, rest) = text
            .split_once(':')
            .ok_or_else(|| bad(format!("bad noise spec `{text}`")))?;
        let mut time_steps = None;
        let mut two_qubit_gates = None;
        for part in rest.split(',') {
            if let Some(v) = part.trim().strip_prefix("T=") {
                time_steps = v.parse().ok();
            } else if let Some(v) = part.trim().strip_prefix("Ng=") {
                two_qubit_gates = v.parse().ok();
            }
        }
        match (time_steps, two_qubit_gates) {
            (Some(t), Some(g)) => Ok(NoiseSpec::Profile {
                name: name.to_string(),
                time_steps: t,
                two_qubit_gates: g,
            }),
            _ => Err(bad(format!(
                "profile noise needs `{name}:T=<int>,Ng=<int>`"
            ))),
        }
    }

    pub fn resolve(&self) -> Result<Option<(NoiseParams, String)>> {
        match self {
            NoiseSpec::Off => Ok(None),
            NoiseSpec::FlipProbability(p0) => {
                Ok(Some((NoiseParams::from_p0(*p0)?, format!("p0={p0}"))))
            }
            NoiseSpec::Profile {
                name,
                time_steps,
                two_qubit_gates,
            } => {
                let profile = load_profile(name)?;
                let params = derive_noise(&profile, *time_steps, *two_qubit_gates)?;
                Ok(Some((
                    params,
                    format!("{name}: T={time_steps}, Ng={two_qubit_gates}"),
                )))
            }
        }
    }
}

/// Look a profile up in `QSPLIT_PROFILE_DIR`, falling back to the bundled
/// santiago figures.
pub fn load_profile(name: &str) -> Result<MachineProfile> {
    if let Ok(dir) = std::env::var(PROFILE_DIR_ENV) {
        let path = Path::new(&dir).join(format!("{name}.json"));
        if path.exists() {
            return MachineProfile::from_json(&fs::read_to_string(path)?);
        }
    }
    if name == "santiago" {
        return Ok(MachineProfile::santiago());
    }
    Err(Error::Config {
        msg: format!("unknown machine profile `{name}` (set {PROFILE_DIR_ENV})"),
    })
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    pub oracle: OracleSpec,
    pub shots: u64,
    pub seed: u64,
    pub noise: NoiseSpec,
    /// Distributed runs may give each machine its own channel; `None` means
    /// use `noise` for both.
    pub noise_even: Option<NoiseSpec>,
    pub noise_odd: Option<NoiseSpec>,
    pub parity_qubit: usize,
    pub max_queries: Option<usize>,
    pub epsilon: f64,
    pub output_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn new(algorithm: Algorithm, oracle: OracleSpec, output_dir: PathBuf) -> ExperimentConfig {
        ExperimentConfig {
            algorithm,
            oracle,
            shots: 8096,
            seed: 1,
            noise: NoiseSpec::Off,
            noise_even: None,
            noise_odd: None,
            parity_qubit: 0,
            max_queries: None,
            epsilon: 0.125,
            output_dir,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NoiseSummary {
    pub source: String,
    pub lambda: f64,
    pub p0: f64,
}

fn summarize(noise: &Option<(NoiseParams, String)>) -> Option<NoiseSummary> {
    noise.as_ref().map(|(params, source)| NoiseSummary {
        source: source.clone(),
        lambda: params.lambda,
        p0: params.p0,
    })
}

/// Everything a run did and produced, serialized to `run_record.json`.
#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub algorithm: String,
    pub n: usize,
    pub oracle: String,
    pub formula: String,
    pub term_count: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity_qubit: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoiseSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise_even: Option<NoiseSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise_odd: Option<NoiseSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<GroverPlan>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub even_plan: Option<GroverPlan>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub odd_plan: Option<GroverPlan>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_success: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed_target_fraction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fitted_p0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result_bitstring: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prob_zero_observed: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub queries_used: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity_rounds: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub histogram: Option<ShotHistogram>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub even_histogram: Option<ShotHistogram>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub odd_histogram: Option<ShotHistogram>,
    pub artifacts: Vec<String>,
}

impl RunRecord {
    fn new(algorithm: Algorithm, formula: &DnfFormula, source: String, seed: u64) -> RunRecord {
        RunRecord {
            algorithm: algorithm.name().to_string(),
            n: formula.arity(),
            oracle: source,
            formula: formula.to_string(),
            term_count: formula.term_count(),
            seed,
            shots: None,
            parity_qubit: None,
            noise: None,
            noise_even: None,
            noise_odd: None,
            plan: None,
            even_plan: None,
            odd_plan: None,
            predicted_success: None,
            observed_target_fraction: None,
            fitted_p0: None,
            result_bitstring: None,
            verdict: None,
            prob_zero_observed: None,
            epsilon: None,
            period: None,
            queries_used: None,
            parity_rounds: None,
            rows: None,
            histogram: None,
            even_histogram: None,
            odd_histogram: None,
            artifacts: Vec::new(),
        }
    }
}

/// Run one configured experiment, writing artifacts under its output
/// directory and returning the record that was saved.
pub fn run_experiment(config: &ExperimentConfig) -> Result<RunRecord> {
    let (formula, source) = config.oracle.resolve()?;
    let n = formula.arity();
    if config.algorithm.is_distributed() && n < 2 {
        return Err(Error::Config {
            msg: "distributed algorithms need at least 2 variables".to_string(),
        });
    }
    if config.parity_qubit >= n && config.algorithm.is_distributed() {
        return Err(Error::Config {
            msg: format!(
                "parity qubit {} out of range for {n} variables",
                config.parity_qubit
            ),
        });
    }
    if config.shots == 0 {
        return Err(Error::ZeroShots);
    }

    fs::create_dir_all(&config.output_dir)?;
    let mut record = RunRecord::new(config.algorithm, &formula, source, config.seed);

    match config.algorithm {
        Algorithm::Grover => {
            let noise = config.noise.resolve()?;
            let oracle = dnf_to_phase_oracle(&formula)?;
            let plan = GroverPlan::new(n, formula.term_count() as u64)?;
            let hist = grover_run(
                &oracle,
                &plan,
                config.shots,
                config.seed,
                noise.as_ref().map(|(p, _)| p),
            )?;
            record.shots = Some(config.shots);
            record.noise = summarize(&noise);
            record.plan = Some(plan);
            record.predicted_success = Some(plan.predicted_success);
            write_histogram(config, &mut record, "histogram", &hist)?;
            if formula.term_count() == 1 {
                let target = crate::bits::format_bits(formula.terms()[0], n);
                record.observed_target_fraction = Some(hist.fraction(&target));
                write_distance_table(config, &mut record, "distance_table", &hist, &target)?;
            }
            record.histogram = Some(hist);
        }
        Algorithm::GroverDist => {
            let noise_even = config
                .noise_even
                .clone()
                .unwrap_or_else(|| config.noise.clone())
                .resolve()?;
            let noise_odd = config
                .noise_odd
                .clone()
                .unwrap_or_else(|| config.noise.clone())
                .resolve()?;
            let oracle = dnf_to_phase_oracle(&formula)?;
            let run = distributed_grover(
                &oracle,
                config.parity_qubit,
                config.shots,
                config.seed,
                noise_even.as_ref().map(|(p, _)| p),
                noise_odd.as_ref().map(|(p, _)| p),
            )?;
            record.shots = Some(config.shots);
            record.parity_qubit = Some(config.parity_qubit);
            record.noise_even = summarize(&noise_even);
            record.noise_odd = summarize(&noise_odd);
            record.even_plan = Some(run.even_plan);
            record.odd_plan = Some(run.odd_plan);
            record.result_bitstring = Some(run.result.clone());
            write_histogram(config, &mut record, "even_histogram", &run.even_histogram)?;
            write_histogram(config, &mut record, "odd_histogram", &run.odd_histogram)?;
            if formula.term_count() == 1 {
                let target = formula.terms()[0];
                let sub_target = crate::bits::format_bits(
                    remove_bit(target, config.parity_qubit),
                    n - 1,
                );
                let (hist, name) = if target >> config.parity_qubit & 1 == 1 {
                    (&run.odd_histogram, "distance_table_odd")
                } else {
                    (&run.even_histogram, "distance_table_even")
                };
                write_distance_table(config, &mut record, name, hist, &sub_target)?;
            }
            record.even_histogram = Some(run.even_histogram);
            record.odd_histogram = Some(run.odd_histogram);
        }
        Algorithm::Simon => {
            let oracle = dnf_to_phase_oracle(&formula)?;
            let budget = config.max_queries.unwrap_or(10 * n.max(1));
            let search = simon_find_period(&oracle, budget, config.seed)?;
            record.period = Some(crate::bits::format_bits(search.period, n));
            record.queries_used = Some(search.queries_used);
            record.rows = Some(
                search
                    .rows
                    .iter()
                    .map(|&y| crate::bits::format_bits(y, n))
                    .collect(),
            );
        }
        Algorithm::SimonDist => {
            let budget = config.max_queries.unwrap_or(3 * n * (n - 1));
            let run = distributed_simon(&formula, budget, config.seed)?;
            record.period = Some(crate::bits::format_bits(run.period, n));
            record.queries_used = Some(run.queries_used);
            record.parity_rounds = Some(run.parity_rounds);
        }
        Algorithm::Dj => {
            let oracle = dnf_to_phase_oracle(&formula)?;
            let verdict = deutsch_jozsa(&oracle)?;
            record.verdict = Some(format!("{:?}", verdict.verdict).to_lowercase());
            record.prob_zero_observed = verdict.prob_zero_observed;
            record.queries_used = Some(verdict.queries_used);
        }
        Algorithm::DjDist => {
            let verdict = distributed_deutsch_jozsa(&formula, config.parity_qubit)?;
            record.parity_qubit = Some(config.parity_qubit);
            record.verdict = Some(format!("{:?}", verdict.verdict).to_lowercase());
            record.queries_used = Some(verdict.queries_used);
        }
        Algorithm::DjClassical => {
            let verdict = classical_dj_baseline(&formula, config.epsilon, config.seed)?;
            record.epsilon = Some(config.epsilon);
            record.verdict = Some(format!("{:?}", verdict.verdict).to_lowercase());
            record.queries_used = Some(verdict.queries_used);
        }
    }

    let record_path = config.output_dir.join("run_record.json");
    fs::write(&record_path, serde_json::to_string_pretty(&record)?)?;
    record.artifacts.push("run_record.json".to_string());
    Ok(record)
}

fn write_histogram(
    config: &ExperimentConfig,
    record: &mut RunRecord,
    name: &str,
    hist: &ShotHistogram,
) -> Result<()> {
    let csv_name = format!("{name}.csv");
    let json_name = format!("{name}.json");
    fs::write(config.output_dir.join(&csv_name), hist.to_csv())?;
    fs::write(config.output_dir.join(&json_name), hist.to_json()?)?;
    record.artifacts.push(csv_name);
    record.artifacts.push(json_name);
    Ok(())
}

/// Observed bit-flip distance frequencies against the binomial row fitted
/// from the same histogram, in the published table layout.
fn write_distance_table(
    config: &ExperimentConfig,
    record: &mut RunRecord,
    name: &str,
    hist: &ShotHistogram,
    target: &str,
) -> Result<()> {
    let p0 = fit_bit_flip_rate(hist, target)?;
    record.fitted_p0 = Some(p0);
    let bins = hist.distance_counts(target)?;
    let binomial = binomial_error_profile(target.len(), p0)?;
    let mut out = String::from("errors");
    for d in 0..bins.len() {
        out.push_str(&format!(",{d}"));
    }
    out.push_str("\nfrequency");
    for &c in &bins {
        out.push_str(&format!(",{:.4}", c as f64 / hist.shots() as f64));
    }
    out.push_str(&format!("\nbinomial[p0={p0:.4}]"));
    for b in &binomial {
        out.push_str(&format!(",{b:.4}"));
    }
    out.push('\n');
    let file = format!("{name}.csv");
    fs::write(config.output_dir.join(&file), out)?;
    record.artifacts.push(file);
    Ok(())
}

/// One line of the reproduction report.
#[derive(Debug, Clone, Serialize)]
pub struct ReportLine {
    pub name: String,
    pub observed: f64,
    pub expected: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReproduceReport {
    pub seed: u64,
    pub lines: Vec<ReportLine>,
    pub all_pass: bool,
}

impl ReproduceReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            out.push_str(&format!(
                "{} {}: observed={:.6} expected {}\n",
                if line.pass { "PASS" } else { "FAIL" },
                line.name,
                line.observed,
                line.expected
            ));
        }
        out.push_str(&format!(
            "{}: {}/{} checks passed\n",
            if self.all_pass { "PASS" } else { "FAIL" },
            self.lines.iter().filter(|l| l.pass).count(),
            self.lines.len()
        ));
        out
    }
}

fn tol_line(name: &str, observed: f64, expected: f64, tol: f64) -> ReportLine {
    ReportLine {
        name: name.to_string(),
        observed,
        expected: format!("{expected} \u{b1} {tol}"),
        pass: (observed - expected).abs() <= tol,
    }
}

fn bound_line(name: &str, observed: f64, expected: &str, pass: bool) -> ReportLine {
    ReportLine {
        name: name.to_string(),
        observed,
        expected: expected.to_string(),
        pass,
    }
}

/// The canned end-to-end suite: channel calibration from the bundled
/// machine data, the binomial error tables, ideal search probabilities, a
/// noisy undistributed 4-qubit search that fails, and a distributed 3-qubit
/// search that succeeds. Writes `report.txt`, `report.json`, and the
/// underlying run artifacts under `out_dir`.
pub fn reproduce_paper(out_dir: &Path, seed: u64) -> Result<ReproduceReport> {
    fs::create_dir_all(out_dir)?;
    let santiago = MachineProfile::santiago();
    let mut lines = Vec::new();

    // Channel calibration for the transpiled circuit statistics.
    let four = derive_noise(&santiago, 396, 291)?;
    lines.push(tol_line("lambda(T=396, Ng=291)", four.lambda, 0.05, 0.005));
    lines.push(tol_line("p0(T=396, Ng=291)", four.p0, 0.47, 0.01));
    let three = derive_noise(&santiago, 93, 55)?;
    lines.push(tol_line("lambda(T=93, Ng=55)", three.lambda, 0.54, 0.01));
    lines.push(tol_line("p0(T=93, Ng=55)", three.p0, 0.23, 0.01));

    // Binomial error rows.
    let b4 = binomial_error_profile(4, 0.50)?;
    let worst4 = b4
        .iter()
        .zip([0.06, 0.25, 0.38, 0.25, 0.06])
        .map(|(got, want)| (got - want).abs())
        .fold(0.0f64, f64::max);
    lines.push(bound_line(
        "binomial(4, 0.50) max row error",
        worst4,
        "<= 0.01",
        worst4 <= 0.01,
    ));
    let b3 = binomial_error_profile(3, 0.30)?;
    let worst3 = b3
        .iter()
        .zip([0.35, 0.44, 0.19, 0.03])
        .map(|(got, want)| (got - want).abs())
        .fold(0.0f64, f64::max);
    lines.push(bound_line(
        "binomial(3, 0.30) max row error",
        worst3,
        "<= 0.01",
        worst3 <= 0.01,
    ));

    // Ideal search success, exact state probabilities.
    let f4 = DnfFormula::new(4, vec![0b1111])?;
    let oracle4 = dnf_to_phase_oracle(&f4)?;
    let plan4 = GroverPlan::new(4, 1)?;
    let ideal4 = crate::grover::marked_probability(&oracle4, &f4, plan4.iterations)?;
    lines.push(tol_line("grover ideal success (n=4)", ideal4, 0.961, 0.005));
    let f3 = DnfFormula::new(3, vec![0b111])?;
    let oracle3 = dnf_to_phase_oracle(&f3)?;
    let ideal3 = crate::grover::marked_probability(&oracle3, &f3, 2)?;
    lines.push(tol_line(
        "grover ideal success (n=3, r=2)",
        ideal3,
        0.945,
        0.005,
    ));

    // Noisy undistributed search at the derived p0: the search fails.
    let noisy_dir = out_dir.join("grover4_noisy");
    let mut noisy_cfg = ExperimentConfig::new(
        Algorithm::Grover,
        OracleSpec::Marked {
            n: 4,
            targets: vec!["1111".to_string()],
        },
        noisy_dir,
    );
    noisy_cfg.seed = seed;
    noisy_cfg.noise = NoiseSpec::Profile {
        name: "santiago".to_string(),
        time_steps: 396,
        two_qubit_gates: 291,
    };
    let noisy = run_experiment(&noisy_cfg)?;
    let target_fraction = noisy.observed_target_fraction.unwrap_or(0.0);
    lines.push(bound_line(
        "noisy n=4 target fraction",
        target_fraction,
        "<= 0.12",
        target_fraction <= 0.12,
    ));

    // Distributed search with per-machine channels: the odd machine, which
    // owns the target, still finds it.
    let dist_dir = out_dir.join("dist3");
    let mut dist_cfg = ExperimentConfig::new(
        Algorithm::GroverDist,
        OracleSpec::Marked {
            n: 4,
            targets: vec!["1111".to_string()],
        },
        dist_dir,
    );
    dist_cfg.seed = seed;
    dist_cfg.noise_even = Some(NoiseSpec::Profile {
        name: "santiago".to_string(),
        time_steps: 39,
        two_qubit_gates: 24,
    });
    dist_cfg.noise_odd = Some(NoiseSpec::Profile {
        name: "santiago".to_string(),
        time_steps: 93,
        two_qubit_gates: 55,
    });
    let dist = run_experiment(&dist_cfg)?;
    let odd_fraction = dist
        .odd_histogram
        .as_ref()
        .map(|h| h.fraction("111"))
        .unwrap_or(0.0);
    lines.push(bound_line(
        "distributed odd machine Prob(111)",
        odd_fraction,
        ">= 0.35",
        odd_fraction >= 0.35,
    ));
    lines.push(bound_line(
        "distributed result is 1111",
        if dist.result_bitstring.as_deref() == Some("1111") {
            1.0
        } else {
            0.0
        },
        "== 1",
        dist.result_bitstring.as_deref() == Some("1111"),
    ));

    let all_pass = lines.iter().all(|l| l.pass);
    let report = ReproduceReport {
        seed,
        lines,
        all_pass,
    };
    fs::write(out_dir.join("report.txt"), report.to_text())?;
    fs::write(
        out_dir.join("report.json"),
        serde_json::to_string_pretty(&report)?,
    )?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noise_spec_parsing() {
        assert_eq!(NoiseSpec::parse("off").unwrap(), NoiseSpec::Off);
        assert_eq!(
            NoiseSpec::parse("p0=0.47").unwrap(),
            NoiseSpec::FlipProbability(0.47)
        );
        assert_eq!(
            NoiseSpec::parse("santiago:T=396,Ng=291").unwrap(),
            NoiseSpec::Profile {
                name: "santiago".to_string(),
                time_steps: 396,
                two_qubit_gates: 291
            }
        );
        assert!(NoiseSpec::parse("p0=x").is_err());
        assert!(NoiseSpec::parse("santiago:T=1").is_err());
    }

    #[test]
    fn builtin_profile_resolves() {
        let p = load_profile("santiago").unwrap();
        assert_eq!(p.name, "santiago");
        assert!(load_profile("nonexistent-machine").is_err());
    }

    #[test]
    fn marked_oracle_spec_validates_widths() {
        let spec = OracleSpec::Marked {
            n: 3,
            targets: vec!["111".to_string(), "010".to_string()],
        };
        let (f, _) = spec.resolve().unwrap();
        assert_eq!(f.terms(), &[0b111, 0b010]);

        let bad = OracleSpec::Marked {
            n: 3,
            targets: vec!["0101".to_string()],
        };
        assert!(bad.resolve().is_err());
    }
}

//! Grover search, undistributed and distributed over an even/odd oracle
//! split.
//!
//! The distributed driver runs an independent (n-1)-qubit search on each
//! half, takes each machine's modal outcome, and verifies the candidates
//! classically against the oracle's function before declaring a winner.

use serde::Serialize;

use crate::bits::{format_bits, insert_bit, parse_bits};
use crate::circuit::{Circuit, Gate};
use crate::dnf::{phase_oracle_to_formula, DnfFormula};
use crate::error::{Error, Result};
use crate::histogram::ShotHistogram;
use crate::noise::{inject_bit_flips, NoiseParams};
use crate::split::split_circuit;
use crate::statevec::run_from_zero;

/// Stream separation for the bit-flip injection pass.
const NOISE_SEED_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

/// Iteration count and predicted success probability for a search instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroverPlan {
    pub qubits: usize,
    pub search_space: u64,
    pub marked: u64,
    pub theta: f64,
    pub iterations: usize,
    pub predicted_success: f64,
}

impl GroverPlan {
    /// Plan with `floor((pi/4) * sqrt(N/M))` iterations, the published count
    /// for every worked instance (3 at n=4 and 2 at n=3 for M=1). An empty
    /// oracle gets zero iterations.
    pub fn new(qubits: usize, marked: u64) -> Result<GroverPlan> {
        let search_space = 1u64 << qubits;
        if marked > search_space {
            return Err(Error::InvalidPlan {
                msg: format!("{marked} marked items in a space of {search_space}"),
            });
        }
        let iterations = if marked == 0 {
            0
        } else {
            (std::f64::consts::FRAC_PI_4 * (search_space as f64 / marked as f64).sqrt()).floor()
                as usize
        };
        GroverPlan::with_iterations(qubits, marked, iterations)
    }

    /// Plan with an explicit iteration count.
    pub fn with_iterations(qubits: usize, marked: u64, iterations: usize) -> Result<GroverPlan> {
        let search_space = 1u64 << qubits;
        if marked > search_space {
            return Err(Error::InvalidPlan {
                msg: format!("{marked} marked items in a space of {search_space}"),
            });
        }
        if marked == 0 && iterations > 0 {
            return Err(Error::InvalidPlan {
                msg: "iterating on an oracle with no marked element".to_string(),
            });
        }
        let theta = (marked as f64 / search_space as f64).sqrt().asin();
        let predicted_success = if marked == 0 {
            0.0
        } else {
            ((2 * iterations + 1) as f64 * theta).sin().powi(2)
        };
        Ok(GroverPlan {
            qubits,
            search_space,
            marked,
            theta,
            iterations,
            predicted_success,
        })
    }
}

/// The reflection about the uniform state: H^n, a phase oracle marking
/// |0...0>, then H^n again.
pub fn diffusion_gates(width: usize) -> Result<Vec<Gate>> {
    let mut gates = Vec::new();
    for q in 0..width {
        gates.push(Gate::H(q));
    }
    for q in 0..width {
        gates.push(Gate::X(q));
    }
    gates.push(Gate::full_width_z(width)?);
    for q in 0..width {
        gates.push(Gate::X(q));
    }
    for q in 0..width {
        gates.push(Gate::H(q));
    }
    Ok(gates)
}

/// H^n followed by `iterations` rounds of oracle + diffusion.
pub fn build_grover_circuit(oracle: &Circuit, iterations: usize) -> Result<Circuit> {
    let n = oracle.width();
    let mut circuit = Circuit::with_label(n, format!("grover r={iterations}"))?;
    for q in 0..n {
        circuit.push(Gate::H(q))?;
    }
    for _ in 0..iterations {
        circuit.extend(oracle.gates().iter().cloned())?;
        circuit.extend(diffusion_gates(n)?)?;
    }
    Ok(circuit)
}

/// Exact probability that measuring the final state hits a marked element.
pub fn marked_probability(
    oracle: &Circuit,
    formula: &DnfFormula,
    iterations: usize,
) -> Result<f64> {
    let state = run_from_zero(&build_grover_circuit(oracle, iterations)?)?;
    let mut total = 0.0;
    for (x, p) in state.probabilities().iter().enumerate() {
        if formula.evaluate(x as u64)? {
            total += p;
        }
    }
    Ok(total)
}

/// Simulate the search and sample `shots` outcomes, optionally pushing them
/// through the bit-flip channel.
pub fn grover_run(
    oracle: &Circuit,
    plan: &GroverPlan,
    shots: u64,
    seed: u64,
    noise: Option<&NoiseParams>,
) -> Result<ShotHistogram> {
    if oracle.width() != plan.qubits {
        return Err(Error::WidthMismatch {
            expected: plan.qubits,
            got: oracle.width(),
        });
    }
    if plan.marked == 0 && plan.iterations > 0 {
        return Err(Error::InvalidPlan {
            msg: "iterating on an oracle with no marked element".to_string(),
        });
    }
    let state = run_from_zero(&build_grover_circuit(oracle, plan.iterations)?)?;
    let ideal = state.sample(shots, seed)?;
    match noise {
        Some(params) => inject_bit_flips(&ideal, params.p0, seed ^ NOISE_SEED_SALT),
        None => Ok(ideal),
    }
}

/// Outcome of a distributed run: the verified winner plus both machine
/// histograms and their plans.
#[derive(Debug, Clone, Serialize)]
pub struct DistributedGroverRun {
    pub result: String,
    pub even_histogram: ShotHistogram,
    pub odd_histogram: ShotHistogram,
    pub even_plan: GroverPlan,
    pub odd_plan: GroverPlan,
    pub even_candidate: String,
    pub odd_candidate: String,
}

/// Split the oracle at `parity_qubit`, search each half on its own machine,
/// then pick the candidate whose classical evaluation actually satisfies the
/// function, appending the machine's parity bit. Errors when neither modal
/// outcome verifies, the signature of a noise-dominated run.
pub fn distributed_grover(
    oracle: &Circuit,
    parity_qubit: usize,
    shots: u64,
    seed: u64,
    noise_even: Option<&NoiseParams>,
    noise_odd: Option<&NoiseParams>,
) -> Result<DistributedGroverRun> {
    let split = split_circuit(oracle, parity_qubit)?;
    let f_even = phase_oracle_to_formula(&split.even)?;
    let f_odd = phase_oracle_to_formula(&split.odd)?;
    let even_plan = GroverPlan::new(split.even.width(), f_even.term_count() as u64)?;
    let odd_plan = GroverPlan::new(split.odd.width(), f_odd.term_count() as u64)?;

    let even_histogram = grover_run(&split.even, &even_plan, shots, seed, noise_even)?;
    let odd_histogram = grover_run(
        &split.odd,
        &odd_plan,
        shots,
        seed.wrapping_add(1),
        noise_odd,
    )?;

    let even_candidate = even_histogram
        .modal()
        .ok_or(Error::EmptyHistogram)?
        .0
        .to_string();
    let odd_candidate = odd_histogram
        .modal()
        .ok_or(Error::EmptyHistogram)?
        .0
        .to_string();

    let even_index = parse_bits(&even_candidate)?;
    let odd_index = parse_bits(&odd_candidate)?;
    let result = if f_even.evaluate(even_index)? {
        insert_bit(even_index, parity_qubit, false)
    } else if f_odd.evaluate(odd_index)? {
        insert_bit(odd_index, parity_qubit, true)
    } else {
        return Err(Error::NoVerifiedCandidate);
    };

    Ok(DistributedGroverRun {
        result: format_bits(result, split.parent_width),
        even_histogram,
        odd_histogram,
        even_plan,
        odd_plan,
        even_candidate,
        odd_candidate,
    })
}

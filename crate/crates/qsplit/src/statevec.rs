//! Ideal state-vector simulation.
//!
//! A [`StateVector`] holds 2^n complex amplitudes with qubit 0 as the
//! least-significant bit of the basis index. States are owned by one run at
//! a time; independent runs can proceed concurrently without shared state.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate, MAX_WIDTH};
use crate::error::{Error, Result};
use crate::histogram::ShotHistogram;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    width: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// |0...0> on `width` qubits.
    pub fn zero(width: usize) -> Result<StateVector> {
        StateVector::basis(width, 0)
    }

    /// The computational basis state with the given index.
    pub fn basis(width: usize, index: u64) -> Result<StateVector> {
        if width == 0 {
            return Err(Error::ZeroWidth);
        }
        if width > MAX_WIDTH {
            return Err(Error::WidthTooLarge {
                width,
                max: MAX_WIDTH,
            });
        }
        let size = 1usize << width;
        if index >= size as u64 {
            return Err(Error::QubitOutOfRange {
                index: index as usize,
                width: size,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); size];
        amps[index as usize] = Complex64::new(1.0, 0.0);
        Ok(StateVector { width, amps })
    }

    pub fn from_amplitudes(width: usize, amps: Vec<Complex64>) -> Result<StateVector> {
        if width == 0 {
            return Err(Error::ZeroWidth);
        }
        if width > MAX_WIDTH {
            return Err(Error::WidthTooLarge {
                width,
                max: MAX_WIDTH,
            });
        }
        if amps.len() != 1 << width {
            return Err(Error::WidthMismatch {
                expected: 1 << width,
                got: amps.len(),
            });
        }
        Ok(StateVector { width, amps })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: u64) -> Complex64 {
        self.amps[index as usize]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Apply one unitary gate in place. Measurement gates are rejected.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        for q in gate.qubits() {
            if q >= self.width {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    width: self.width,
                });
            }
        }
        match gate {
            Gate::X(q) => {
                let bit = 1usize << q;
                for i in 0..self.amps.len() {
                    if i & bit == 0 {
                        self.amps.swap(i, i | bit);
                    }
                }
            }
            Gate::H(q) => {
                let bit = 1usize << q;
                for i in 0..self.amps.len() {
                    if i & bit == 0 {
                        let a = self.amps[i];
                        let b = self.amps[i | bit];
                        self.amps[i] = (a + b) * FRAC_1_SQRT_2;
                        self.amps[i | bit] = (a - b) * FRAC_1_SQRT_2;
                    }
                }
            }
            Gate::Z(q) => self.phase_if(|i| i >> q & 1 == 1, Complex64::new(-1.0, 0.0)),
            Gate::S(q) => self.phase_if(|i| i >> q & 1 == 1, Complex64::new(0.0, 1.0)),
            Gate::Sdg(q) => self.phase_if(|i| i >> q & 1 == 1, Complex64::new(0.0, -1.0)),
            Gate::T(q) => self.phase_if(
                |i| i >> q & 1 == 1,
                Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2),
            ),
            Gate::Tdg(q) => self.phase_if(
                |i| i >> q & 1 == 1,
                Complex64::new(FRAC_1_SQRT_2, -FRAC_1_SQRT_2),
            ),
            Gate::Phase { qubit, num, den } => {
                let angle = std::f64::consts::PI * (*num as f64) / (1u64 << den) as f64;
                let factor = Complex64::from_polar(1.0, angle);
                self.phase_if(|i| i >> qubit & 1 == 1, factor);
            }
            Gate::Cnot { control, target } => {
                let cbit = 1usize << control;
                let tbit = 1usize << target;
                for i in 0..self.amps.len() {
                    if i & cbit != 0 && i & tbit == 0 {
                        self.amps.swap(i, i | tbit);
                    }
                }
            }
            Gate::Cz(a, b) => {
                let mask = (1usize << a) | (1usize << b);
                self.phase_if(|i| i & mask == mask, Complex64::new(-1.0, 0.0));
            }
            Gate::Mcz(set) => {
                let mask: usize = set.iter().map(|q| 1usize << q).sum();
                self.phase_if(|i| i & mask == mask, Complex64::new(-1.0, 0.0));
            }
            Gate::Mcx { controls, target } => {
                let cmask: usize = controls.iter().map(|q| 1usize << q).sum();
                let tbit = 1usize << target;
                for i in 0..self.amps.len() {
                    if i & cmask == cmask && i & tbit == 0 {
                        self.amps.swap(i, i | tbit);
                    }
                }
            }
            Gate::Measure(_) => return Err(Error::MeasureUnsupported),
        }
        Ok(())
    }

    fn phase_if<F: Fn(usize) -> bool>(&mut self, pred: F, factor: Complex64) {
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if pred(i) {
                *amp *= factor;
            }
        }
    }

    /// |amplitude|^2 per basis index.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn probability(&self, index: u64) -> f64 {
        self.amps[index as usize].norm_sqr()
    }

    /// Draw `shots` i.i.d. samples by inverse-CDF over the dense probability
    /// vector. Deterministic for a fixed seed.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<ShotHistogram> {
        if shots == 0 {
            return Err(Error::ZeroShots);
        }
        let probs = self.probabilities();
        let mut cdf = Vec::with_capacity(probs.len());
        let mut acc = 0.0;
        for p in &probs {
            acc += p;
            cdf.push(acc);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = vec![0u64; probs.len()];
        for _ in 0..shots {
            let u: f64 = rng.gen();
            let mut idx = cdf.partition_point(|&c| c <= u);
            if idx >= probs.len() {
                idx = probs.len() - 1;
            }
            while idx > 0 && probs[idx] == 0.0 {
                idx -= 1;
            }
            counts[idx] += 1;
        }
        ShotHistogram::from_index_counts(self.width, &counts)
    }
}

/// Run every gate of `circuit` on a copy of `initial`.
pub fn run(circuit: &Circuit, initial: &StateVector) -> Result<StateVector> {
    if circuit.width() != initial.width() {
        return Err(Error::WidthMismatch {
            expected: circuit.width(),
            got: initial.width(),
        });
    }
    let mut state = initial.clone();
    for gate in circuit.gates() {
        state.apply(gate)?;
    }
    Ok(state)
}

/// Run `circuit` starting from |0...0>.
pub fn run_from_zero(circuit: &Circuit) -> Result<StateVector> {
    run(circuit, &StateVector::zero(circuit.width())?)
}

//! Depolarizing noise calibrated to machine data.
//!
//! Decoherence over one time step retains a fraction `mu_c = exp(-R/T_c)` of
//! the signal and each two-qubit gate retains `mu_g = 1 - eps`. Channels
//! compose multiplicatively, so a circuit with `T` time steps and `N_g`
//! two-qubit gates has channel parameter `lambda = mu_c^T * mu_g^N_g`, which
//! induces a per-qubit measurement bit-flip probability `p0 = (1-lambda)/2`.
//! Noise is applied as classical bit flips on sampled outcomes; that is
//! exactly the observable content of the channel at measurement time.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::parse_bits;
use crate::error::{Error, Result};
use crate::histogram::ShotHistogram;

/// Hardware error figures, as published per machine.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MachineProfile {
    pub name: String,
    pub single_qubit_error: f64,
    pub two_qubit_error: f64,
    pub coherence_time_us: f64,
    pub gate_time_ns: f64,
}

impl MachineProfile {
    pub fn new(
        name: impl Into<String>,
        single_qubit_error: f64,
        two_qubit_error: f64,
        coherence_time_us: f64,
        gate_time_ns: f64,
    ) -> Result<MachineProfile> {
        let profile = MachineProfile {
            name: name.into(),
            single_qubit_error,
            two_qubit_error,
            coherence_time_us,
            gate_time_ns,
        };
        profile.validate()?;
        Ok(profile)
    }

    pub fn validate(&self) -> Result<()> {
        for p in [self.single_qubit_error, self.two_qubit_error] {
            if !(0.0..=1.0).contains(&p) || !p.is_finite() {
                return Err(Error::InvalidProbability { value: p });
            }
        }
        if !(self.coherence_time_us > 0.0) || !(self.gate_time_ns > 0.0) {
            return Err(Error::InvalidProfile {
                msg: "times must be positive".to_string(),
            });
        }
        Ok(())
    }

    /// The bundled ibmq-santiago figures.
    pub fn santiago() -> MachineProfile {
        MachineProfile {
            name: "santiago".to_string(),
            single_qubit_error: 2.2e-4,
            two_qubit_error: 6.2e-3,
            coherence_time_us: 133.0,
            gate_time_ns: 408.0,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<MachineProfile> {
        let profile: MachineProfile = serde_json::from_str(text)?;
        profile.validate()?;
        Ok(profile)
    }
}

/// Channel parameter and the bit-flip probability it induces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseParams {
    pub mu_c: f64,
    pub mu_g: f64,
    pub lambda: f64,
    pub p0: f64,
}

impl NoiseParams {
    /// Directly pin the bit-flip probability; the retention factors are set
    /// to 1 since nothing is attributed to decoherence or gates.
    pub fn from_p0(p0: f64) -> Result<NoiseParams> {
        if !(0.0..=1.0).contains(&p0) || !p0.is_finite() {
            return Err(Error::InvalidProbability { value: p0 });
        }
        Ok(NoiseParams {
            mu_c: 1.0,
            mu_g: 1.0,
            lambda: 1.0 - 2.0 * p0,
            p0,
        })
    }

    pub fn p1(&self) -> f64 {
        1.0 - self.p0
    }

    /// Probability that an n-qubit readout comes back fully correct,
    /// ((1+lambda)/2)^n.
    pub fn all_correct_probability(&self, n: usize) -> f64 {
        self.p1().powi(n as i32)
    }
}

/// Estimate the channel from machine data and circuit statistics.
pub fn derive_noise(
    profile: &MachineProfile,
    time_steps: u32,
    two_qubit_gates: u32,
) -> Result<NoiseParams> {
    profile.validate()?;
    let mu_c = (-(profile.gate_time_ns * 1e-9) / (profile.coherence_time_us * 1e-6)).exp();
    let mu_g = 1.0 - profile.two_qubit_error;
    let lambda = mu_c.powi(time_steps as i32) * mu_g.powi(two_qubit_gates as i32);
    Ok(NoiseParams {
        mu_c,
        mu_g,
        lambda,
        p0: (1.0 - lambda) / 2.0,
    })
}

/// Probability of m bit-flip errors in an n-qubit register,
/// C(n,m) p0^m (1-p0)^(n-m) for m in 0..=n.
pub fn binomial_error_profile(n: usize, p0: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&p0) || !p0.is_finite() {
        return Err(Error::InvalidProbability { value: p0 });
    }
    let p1 = 1.0 - p0;
    let mut coeff = 1.0f64;
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        out.push(coeff * p0.powi(m as i32) * p1.powi((n - m) as i32));
        coeff = coeff * (n - m) as f64 / (m + 1) as f64;
    }
    Ok(out)
}

/// Flip every recorded bit independently with probability p0. Shot totals
/// are preserved and the result is deterministic for a fixed seed.
pub fn inject_bit_flips(hist: &ShotHistogram, p0: f64, seed: u64) -> Result<ShotHistogram> {
    if !(0.0..=1.0).contains(&p0) || !p0.is_finite() {
        return Err(Error::InvalidProbability { value: p0 });
    }
    let width = hist.width();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = ShotHistogram::new(width)?;
    for (bits, &count) in hist.counts() {
        let index = parse_bits(bits)?;
        for _ in 0..count {
            let mut flipped = index;
            for q in 0..width {
                if rng.gen::<f64>() < p0 {
                    flipped ^= 1 << q;
                }
            }
            out.record_index(flipped, 1)?;
        }
    }
    Ok(out)
}

/// Invert the expected-error relation E[errors] = n*p0: the estimate is the
/// mean Hamming distance of the shots from `target`, divided by n.
pub fn fit_bit_flip_rate(hist: &ShotHistogram, target: &str) -> Result<f64> {
    if hist.shots() == 0 {
        return Err(Error::EmptyHistogram);
    }
    let bins = hist.distance_counts(target)?;
    let total_errors: u64 = bins
        .iter()
        .enumerate()
        .map(|(d, &c)| d as u64 * c)
        .sum();
    Ok(total_errors as f64 / (hist.width() as f64 * hist.shots() as f64))
}

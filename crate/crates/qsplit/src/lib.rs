//! Desk-scale simulation of distributed quantum algorithms built on even/odd
//! oracle splitting.
//!
//! A Boolean function in minterm DNF compiles to a phase oracle made of
//! X-decorated full-width multi-controlled Z gates. Such an oracle splits at
//! any chosen parity qubit into two oracles on one fewer qubit, one for each
//! value of that qubit, and the two halves run on separate machines that
//! only communicate classically. The payoff is depth: the split circuits are
//! far shallower, which matters on noisy hardware.
//!
//! What's here:
//!
//! - [`circuit`]: gates, decomposition to single-qubit + CNOT, and depth
//!   accounting under hardware-style counting rules.
//! - [`statevec`]: ideal state-vector simulation and shot sampling.
//! - [`dnf`]: truth tables, minterm DNF, phase and bit oracle synthesis.
//! - [`split`]: the even/odd splitter for circuits and formulas.
//! - [`noise`]: a depolarizing channel calibrated from machine data, applied
//!   as classical bit flips on sampled outcomes.
//! - [`grover`], [`simon`], [`dj`]: search, period finding, and
//!   constant-vs-balanced drivers, each in undistributed and distributed
//!   form, plus classical baselines.
//! - [`walsh`]: the exact integer spectrum of (-1)^f used as an independent
//!   check on the quantum samplers.
//! - [`experiments`]: configuration-driven runs that write histograms and
//!   run records to disk, and a canned reproduction suite.
//!
//! Convention used throughout: qubit (or variable) `i` is bit `i` of a basis
//! index, and printed bitstrings put qubit 0 rightmost, so a string read as
//! a binary number is the basis index.
//!
//! ```
//! use qsplit::dnf::{dnf_to_phase_oracle, DnfFormula};
//! use qsplit::grover::{distributed_grover, GroverPlan};
//!
//! // Search for 1111 among 16 items on two 3-qubit machines.
//! let f = DnfFormula::new(4, vec![0b1111]).unwrap();
//! let oracle = dnf_to_phase_oracle(&f).unwrap();
//! let run = distributed_grover(&oracle, 0, 1024, 7, None, None).unwrap();
//! assert_eq!(run.result, "1111");
//! ```

pub mod bits;
pub mod circuit;
pub mod dj;
pub mod dnf;
pub mod error;
pub mod experiments;
pub mod grover;
pub mod histogram;
pub mod noise;
pub mod simon;
pub mod split;
pub mod statevec;
pub mod walsh;

pub use circuit::{Circuit, DepthReport, Gate};
pub use dnf::{DnfFormula, TruthTable};
pub use error::{Error, Result};
pub use histogram::ShotHistogram;
pub use noise::{MachineProfile, NoiseParams};
pub use statevec::StateVector;

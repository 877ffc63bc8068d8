//! Period finding for Boolean phase oracles, undistributed and distributed.
//!
//! One query runs H^n, the oracle, H^n on |0...0> and measures. Every
//! outcome y satisfies y·s = 0 (mod 2) for a period s, so collected rows
//! pin s down by linear algebra over GF(2). The distributed driver splits
//! the oracle at a parity qubit, solves the two (n-1)-qubit halves, and
//! lifts candidates back, retrying with the next parity qubit when a round
//! only produces the trivial answer.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bits::{insert_bit, parse_bits};
use crate::circuit::{Circuit, Gate};
use crate::dnf::{dnf_to_phase_oracle, phase_oracle_to_formula, DnfFormula};
use crate::error::{Error, Result};
use crate::split::split_formula;
use crate::statevec::{run, StateVector};

/// Incremental row reduction over GF(2), keeping rows in echelon form.
#[derive(Debug, Clone)]
pub struct Gf2Eliminator {
    n: usize,
    rows: Vec<u64>,
}

impl Gf2Eliminator {
    pub fn new(n: usize) -> Gf2Eliminator {
        Gf2Eliminator { n, rows: Vec::new() }
    }

    /// Reduce `y` against the basis; returns true when the rank grew.
    pub fn insert(&mut self, mut y: u64) -> bool {
        for &r in &self.rows {
            if y & leading_bit(r) != 0 {
                y ^= r;
            }
        }
        if y == 0 {
            return false;
        }
        // Back-reduce so every pivot column appears in exactly one row.
        let pivot = leading_bit(y);
        for r in &mut self.rows {
            if *r & pivot != 0 {
                *r ^= y;
            }
        }
        self.rows.push(y);
        self.rows.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Every s with row·s = 0 for all rows, ascending; 2^(n - rank) entries.
    pub fn nullspace(&self, include_zero: bool) -> Vec<u64> {
        let pivots: u64 = self.rows.iter().map(|&r| leading_bit(r)).sum();
        let free: Vec<usize> = (0..self.n).filter(|q| pivots >> q & 1 == 0).collect();
        let mut out = Vec::with_capacity(1 << free.len());
        for combo in 0..1u64 << free.len() {
            let mut s = 0u64;
            for (i, &q) in free.iter().enumerate() {
                if combo >> i & 1 == 1 {
                    s |= 1 << q;
                }
            }
            // In reduced form each row is its pivot plus free columns only,
            // so the pivot value follows directly from the free assignment.
            for &r in &self.rows {
                let pivot = leading_bit(r);
                if ((r ^ pivot) & s).count_ones() & 1 == 1 {
                    s |= pivot;
                }
            }
            if s != 0 || include_zero {
                out.push(s);
            }
        }
        out.sort_unstable();
        out
    }
}

fn leading_bit(r: u64) -> u64 {
    debug_assert!(r != 0);
    1 << (63 - r.leading_zeros())
}

/// Nullspace of the row matrix: all s with y·s = 0 (mod 2) for every row.
pub fn solve_period(rows: &[u64], n: usize, include_zero: bool) -> Result<Vec<u64>> {
    if n > crate::dnf::MAX_ARITY {
        return Err(Error::ArityTooLarge {
            arity: n,
            max: crate::dnf::MAX_ARITY,
        });
    }
    let mut elim = Gf2Eliminator::new(n);
    for &row in rows {
        if row >= 1 << n {
            return Err(Error::TermOutOfRange { term: row, arity: n });
        }
        elim.insert(row);
    }
    Ok(elim.nullspace(include_zero))
}

/// The pre-measurement state of one period-finding query.
pub fn simon_state(oracle: &Circuit) -> Result<StateVector> {
    let n = oracle.width();
    let mut circuit = Circuit::new(n)?;
    for q in 0..n {
        circuit.push(Gate::H(q))?;
    }
    circuit.extend(oracle.gates().iter().cloned())?;
    for q in 0..n {
        circuit.push(Gate::H(q))?;
    }
    run(&circuit, &StateVector::zero(n)?)
}

/// Run one query and measure a single row y.
pub fn simon_sample(oracle: &Circuit, seed: u64) -> Result<u64> {
    draw_row(&simon_state(oracle)?, seed)
}

fn draw_row(state: &StateVector, seed: u64) -> Result<u64> {
    let hist = state.sample(1, seed)?;
    let (bits, _) = hist.modal().expect("one recorded shot");
    parse_bits(bits)
}

/// Result of a period search, with the measured rows for reporting.
#[derive(Debug, Clone, Serialize)]
pub struct PeriodSearch {
    pub period: u64,
    pub queries_used: usize,
    pub rows: Vec<u64>,
}

/// Sample rows until the period is pinned down.
///
/// Rows accumulate in a GF(2) eliminator. Full rank means only s = 0 fits.
/// At rank n-1 the single nonzero candidate is checked classically against
/// the oracle's recovered function before being returned; a failed check
/// just means more rows are needed. A constant function never produces a
/// nonzero row, so the budget runs out with the zero-rows flag set.
pub fn simon_find_period(oracle: &Circuit, max_queries: usize, seed: u64) -> Result<PeriodSearch> {
    let n = oracle.width();
    let formula = phase_oracle_to_formula(oracle)?;
    let state = simon_state(oracle)?;
    let mut elim = Gf2Eliminator::new(n);
    let mut rows = Vec::new();
    let mut zero_rows_only = true;

    for i in 0..max_queries {
        let y = draw_row(&state, seed.wrapping_add(i as u64))?;
        rows.push(y);
        if y != 0 {
            zero_rows_only = false;
        }
        elim.insert(y);
        if elim.rank() == n {
            return Ok(PeriodSearch {
                period: 0,
                queries_used: i + 1,
                rows,
            });
        }
        if elim.rank() + 1 == n {
            let candidate = elim.nullspace(false)[0];
            if formula.is_period(candidate)? {
                return Ok(PeriodSearch {
                    period: candidate,
                    queries_used: i + 1,
                    rows,
                });
            }
        }
    }
    Err(Error::QueryBudgetExhausted {
        budget: max_queries,
        queries: max_queries,
        zero_rows_only,
    })
}

/// Result of the distributed search.
#[derive(Debug, Clone, Serialize)]
pub struct DistributedSimonRun {
    pub period: u64,
    pub queries_used: usize,
    pub parity_rounds: usize,
}

/// Distributed period finding over parity-qubit rounds.
///
/// Round j splits f at qubit j and samples each (n-1)-qubit half for at
/// most floor(3(n-1)/2) rows, stopping early once the half's nullspace is
/// down to one candidate. Nullspace elements lift back by inserting a 0 bit
/// at j; any lifted candidate that classically verifies as a period is the
/// answer (when bit j of s is 0 the reduced period lies in both halves'
/// nullspaces, so the first such round succeeds). Rounds that only produce
/// the trivial answer move on to the next parity qubit; after all n rounds
/// the only consistent candidates left are the all-ones string, checked
/// directly, and 0. Total queries stay at or under 3n(n-1).
pub fn distributed_simon(
    formula: &DnfFormula,
    max_queries: usize,
    seed: u64,
) -> Result<DistributedSimonRun> {
    let n = formula.arity();
    if n < 2 {
        return Err(Error::ArityTooSmall { arity: n, min: 2 });
    }
    let per_sub_cap = (3 * (n - 1) / 2).max(1);
    let mut queries = 0usize;

    for j in 0..n {
        let (f_even, f_odd) = split_formula(formula, j)?;
        let mut candidates: BTreeSet<u64> = BTreeSet::new();
        for (which, half) in [(0u64, &f_even), (1u64, &f_odd)] {
            let oracle = dnf_to_phase_oracle(half)?;
            let state = simon_state(&oracle)?;
            let mut elim = Gf2Eliminator::new(n - 1);
            let budget = per_sub_cap.min(max_queries.saturating_sub(queries));
            let stream = seed ^ ((j as u64 * 2 + which + 1) << 40);
            for i in 0..budget {
                let y = draw_row(&state, stream.wrapping_add(i as u64))?;
                queries += 1;
                elim.insert(y);
                if elim.rank() + 1 >= n - 1 {
                    break;
                }
            }
            for t in elim.nullspace(false) {
                candidates.insert(insert_bit(t, j, false));
            }
        }
        for &candidate in &candidates {
            if formula.is_period(candidate)? {
                return Ok(DistributedSimonRun {
                    period: candidate,
                    queries_used: queries,
                    parity_rounds: j + 1,
                });
            }
        }
    }

    // Every single-bit parity came back trivial. The only nonzero period
    // consistent with that is the all-ones string.
    let all_ones = (1u64 << n) - 1;
    let period = if formula.is_period(all_ones)? {
        all_ones
    } else {
        0
    };
    Ok(DistributedSimonRun {
        period,
        queries_used: queries,
        parity_rounds: n,
    })
}

//! Boolean functions as truth tables and minterm DNF, and their compilation
//! into phase and bit oracles.
//!
//! A DNF here is always in minterm form: every variable appears in every
//! term, positive or negated, so a term is exactly the input assignment on
//! which it fires. Variable `i` is bit `i` of an assignment index.

use std::collections::BTreeSet;
use std::fmt;

use crate::bits::{format_bits, parse_bits};
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

/// Guard for exhaustive 2^n tables and spectra.
pub const MAX_ARITY: usize = 20;

/// Outputs of a single-output Boolean function, indexed by assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    arity: usize,
    outputs: Vec<bool>,
}

impl TruthTable {
    pub fn new(arity: usize, outputs: Vec<bool>) -> Result<TruthTable> {
        check_arity(arity)?;
        if outputs.len() != 1 << arity {
            return Err(Error::WidthMismatch {
                expected: 1 << arity,
                got: outputs.len(),
            });
        }
        Ok(TruthTable { arity, outputs })
    }

    /// Table that is 1 exactly on the listed assignments.
    pub fn from_ones(arity: usize, ones: &[u64]) -> Result<TruthTable> {
        check_arity(arity)?;
        let mut outputs = vec![false; 1 << arity];
        for &x in ones {
            if x >= 1 << arity {
                return Err(Error::TermOutOfRange { term: x, arity });
            }
            outputs[x as usize] = true;
        }
        Ok(TruthTable { arity, outputs })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn outputs(&self) -> &[bool] {
        &self.outputs
    }

    pub fn value(&self, x: u64) -> Result<bool> {
        self.outputs
            .get(x as usize)
            .copied()
            .ok_or(Error::TermOutOfRange {
                term: x,
                arity: self.arity,
            })
    }

    /// Text form: `ARITY n` then one output bit per line in index order.
    pub fn to_text(&self) -> String {
        let mut out = format!("ARITY {}\n", self.arity);
        for &b in &self.outputs {
            out.push(if b { '1' } else { '0' });
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<TruthTable> {
        let mut arity: Option<usize> = None;
        let mut outputs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = i + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match arity {
                None => {
                    arity = Some(
                        line.strip_prefix("ARITY ")
                            .and_then(|a| a.trim().parse().ok())
                            .ok_or(Error::Parse {
                                what: "truth table",
                                line: lineno,
                                msg: "expected `ARITY <n>` header".to_string(),
                            })?,
                    );
                }
                Some(_) => match line {
                    "0" => outputs.push(false),
                    "1" => outputs.push(true),
                    other => {
                        return Err(Error::Parse {
                            what: "truth table",
                            line: lineno,
                            msg: format!("expected 0 or 1, got `{other}`"),
                        })
                    }
                },
            }
        }
        TruthTable::new(
            arity.ok_or(Error::Parse {
                what: "truth table",
                line: 0,
                msg: "missing `ARITY <n>` header".to_string(),
            })?,
            outputs,
        )
    }
}

/// Minterm DNF: a list of distinct full assignments on which the function
/// is 1. Term order is preserved because it fixes the emitted gate order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnfFormula {
    arity: usize,
    terms: Vec<u64>,
}

impl DnfFormula {
    pub fn new(arity: usize, terms: Vec<u64>) -> Result<DnfFormula> {
        check_arity(arity)?;
        let mut seen = BTreeSet::new();
        for &t in &terms {
            if t >= 1 << arity {
                return Err(Error::TermOutOfRange { term: t, arity });
            }
            if !seen.insert(t) {
                return Err(Error::DuplicateTerm { term: t });
            }
        }
        Ok(DnfFormula { arity, terms })
    }

    pub fn empty(arity: usize) -> Result<DnfFormula> {
        DnfFormula::new(arity, Vec::new())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// OR over terms of AND over literals. A minterm's conjunction holds
    /// exactly when the input equals the term's assignment.
    pub fn evaluate(&self, x: u64) -> Result<bool> {
        if x >= 1 << self.arity {
            return Err(Error::TermOutOfRange {
                term: x,
                arity: self.arity,
            });
        }
        Ok(self.terms.iter().any(|&t| t == x))
    }

    pub fn evaluate_bits(&self, bits: &str) -> Result<bool> {
        if bits.len() != self.arity {
            return Err(Error::InvalidBitstring {
                input: bits.to_string(),
            });
        }
        self.evaluate(parse_bits(bits)?)
    }

    /// True when `s` satisfies f(x XOR s) = f(x) for every x; the term set
    /// must be invariant under XOR with `s`.
    pub fn is_period(&self, s: u64) -> Result<bool> {
        if s >= 1 << self.arity {
            return Err(Error::TermOutOfRange {
                term: s,
                arity: self.arity,
            });
        }
        let set: BTreeSet<u64> = self.terms.iter().copied().collect();
        Ok(set.iter().all(|&t| set.contains(&(t ^ s))))
    }

    /// Text form: `ARITY n` then one term per line as a bitstring mask,
    /// variable 0 rightmost (`x0'·x1·x2` prints as `110`).
    pub fn to_text(&self) -> String {
        let mut out = format!("ARITY {}\n", self.arity);
        for &t in &self.terms {
            out.push_str(&format_bits(t, self.arity));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<DnfFormula> {
        let mut arity: Option<usize> = None;
        let mut terms = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = i + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match arity {
                None => {
                    arity = Some(
                        line.strip_prefix("ARITY ")
                            .and_then(|a| a.trim().parse().ok())
                            .ok_or(Error::Parse {
                                what: "formula",
                                line: lineno,
                                msg: "expected `ARITY <n>` header".to_string(),
                            })?,
                    );
                }
                Some(a) => {
                    if line.len() != a {
                        return Err(Error::Parse {
                            what: "formula",
                            line: lineno,
                            msg: format!("term `{line}` does not have {a} literals"),
                        });
                    }
                    terms.push(parse_bits(line)?);
                }
            }
        }
        DnfFormula::new(
            arity.ok_or(Error::Parse {
                what: "formula",
                line: 0,
                msg: "missing `ARITY <n>` header".to_string(),
            })?,
            terms,
        )
    }
}

impl fmt::Display for DnfFormula {
    /// Human form, e.g. `x0·x1'·x2 + x0'·x1·x2'`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|&t| {
                (0..self.arity)
                    .map(|v| {
                        if t >> v & 1 == 1 {
                            format!("x{v}")
                        } else {
                            format!("x{v}'")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("\u{b7}")
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

fn check_arity(arity: usize) -> Result<()> {
    if arity == 0 {
        return Err(Error::ArityTooSmall { arity, min: 1 });
    }
    if arity > MAX_ARITY {
        return Err(Error::ArityTooLarge {
            arity,
            max: MAX_ARITY,
        });
    }
    Ok(())
}

/// One minterm per 1-row of the table, in ascending row order; a variable is
/// positive exactly when its bit is 1 in that row.
pub fn truth_table_to_dnf(table: &TruthTable) -> DnfFormula {
    let terms: Vec<u64> = table
        .outputs()
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i as u64))
        .collect();
    DnfFormula {
        arity: table.arity(),
        terms,
    }
}

/// Compile a DNF into the phase oracle |x> -> (-1)^f(x) |x>.
///
/// Per term: X on every negated variable, a full-width multi-controlled Z,
/// then the same X gates again. Single-variable formulas use a plain Z in
/// place of the multi-controlled gate.
pub fn dnf_to_phase_oracle(formula: &DnfFormula) -> Result<Circuit> {
    let n = formula.arity();
    let mut circuit = Circuit::new(n)?;
    for &term in formula.terms() {
        let decorated: Vec<usize> = (0..n).filter(|&q| term >> q & 1 == 0).collect();
        for &q in &decorated {
            circuit.push(Gate::X(q))?;
        }
        circuit.push(Gate::full_width_z(n)?)?;
        for &q in &decorated {
            circuit.push(Gate::X(q))?;
        }
    }
    Ok(circuit)
}

/// Compile a DNF into the bit oracle |x>|c> -> |x>|c XOR f(x)> on n+1 qubits,
/// with the ancilla as qubit n. Terms are disjoint minterms, so one
/// X-decorated multi-controlled X per term computes the OR.
pub fn dnf_to_bit_oracle(formula: &DnfFormula) -> Result<Circuit> {
    let n = formula.arity();
    let mut circuit = Circuit::new(n + 1)?;
    for &term in formula.terms() {
        let decorated: Vec<usize> = (0..n).filter(|&q| term >> q & 1 == 0).collect();
        for &q in &decorated {
            circuit.push(Gate::X(q))?;
        }
        circuit.push(Gate::mcx((0..n).collect(), n)?)?;
        for &q in &decorated {
            circuit.push(Gate::X(q))?;
        }
    }
    Ok(circuit)
}

/// Recover the minterm set of a DNF-form phase oracle by walking its gates:
/// X gates toggle a mask, and each full-width Z fires on the complement of
/// the current mask. A minterm hit twice cancels, matching the phase action.
pub fn phase_oracle_to_formula(circuit: &Circuit) -> Result<DnfFormula> {
    let n = circuit.width();
    let all = (1u64 << n) - 1;
    let mut toggles = 0u64;
    let mut terms: BTreeSet<u64> = BTreeSet::new();
    for gate in circuit.gates() {
        match gate {
            Gate::X(q) => toggles ^= 1 << q,
            g if circuit.is_full_width_z(g) => {
                let minterm = !toggles & all;
                if !terms.remove(&minterm) {
                    terms.insert(minterm);
                }
            }
            other => {
                return Err(Error::NotPhaseOracle {
                    reason: format!("unexpected gate `{other}`"),
                })
            }
        }
    }
    if toggles != 0 {
        return Err(Error::NotPhaseOracle {
            reason: "unbalanced X gates permute the basis".to_string(),
        });
    }
    DnfFormula::new(n, terms.into_iter().collect())
}

/// Peephole pass removing X pairs on the same qubit with nothing touching
/// that qubit in between (X·X = 1). Off by default in synthesis; depth
/// figures quote whether it ran.
pub fn cancel_adjacent_x(circuit: &Circuit) -> Circuit {
    let mut gates: Vec<Gate> = circuit.gates().to_vec();
    loop {
        let mut removed = false;
        'scan: for i in 0..gates.len() {
            let Gate::X(q) = gates[i] else { continue };
            for j in i + 1..gates.len() {
                if gates[j] == Gate::X(q) {
                    gates.remove(j);
                    gates.remove(i);
                    removed = true;
                    break 'scan;
                }
                if gates[j].qubits().contains(&q) {
                    break;
                }
            }
        }
        if !removed {
            break;
        }
    }
    let mut out = Circuit::with_label(circuit.width(), circuit.label().to_string())
        .expect("width already validated");
    out.extend(gates).expect("gates already validated");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevec::{run, StateVector};

    /// f(x0,x1,x2) = x0·x1'·x2 + x0'·x1·x2' (1 on 101 and 010).
    pub(crate) fn two_term_formula() -> DnfFormula {
        DnfFormula::new(3, vec![0b101, 0b010]).unwrap()
    }

    #[test]
    fn appendix_table_yields_two_minterms() {
        // Rows (x0,x1): 00 -> 1, 10 -> 1, others 0.
        let table = TruthTable::from_ones(2, &[0b00, 0b01]).unwrap();
        let dnf = truth_table_to_dnf(&table);
        assert_eq!(dnf.terms(), &[0b00, 0b01]);
        assert_eq!(dnf.to_string(), "x0'\u{b7}x1' + x0\u{b7}x1'");
    }

    #[test]
    fn all_zero_table_gives_empty_formula() {
        let table = TruthTable::new(3, vec![false; 8]).unwrap();
        assert_eq!(truth_table_to_dnf(&table).term_count(), 0);
    }

    #[test]
    fn marked_101_and_010_match_the_worked_formula() {
        let table = TruthTable::from_ones(3, &[0b101, 0b010]).unwrap();
        let dnf = truth_table_to_dnf(&table);
        assert_eq!(dnf.terms(), &[0b010, 0b101]);
        for x in 0..8u64 {
            assert_eq!(dnf.evaluate(x).unwrap(), x == 0b101 || x == 0b010);
        }
    }

    #[test]
    fn evaluate_on_the_worked_formula() {
        let f = two_term_formula();
        assert!(f.evaluate(0b101).unwrap());
        assert!(!f.evaluate(0b000).unwrap());
        assert!(DnfFormula::empty(4)
            .unwrap()
            .evaluate(9)
            .map(|v| !v)
            .unwrap());
        assert!(f.evaluate(8).is_err());
    }

    #[test]
    fn phase_oracle_matches_the_decorated_mcz_circuit() {
        let oracle = dnf_to_phase_oracle(&two_term_formula()).unwrap();
        let mcz = || Gate::mcz([0, 1, 2]).unwrap();
        assert_eq!(
            oracle.gates(),
            &[
                Gate::X(1),
                mcz(),
                Gate::X(1),
                Gate::X(0),
                Gate::X(2),
                mcz(),
                Gate::X(0),
                Gate::X(2),
            ]
        );
        assert!(oracle.is_dnf_form());
    }

    #[test]
    fn empty_formula_compiles_to_identity() {
        let oracle = dnf_to_phase_oracle(&DnfFormula::empty(3).unwrap()).unwrap();
        assert!(oracle.is_empty());
        let bit = dnf_to_bit_oracle(&DnfFormula::empty(3).unwrap()).unwrap();
        assert!(bit.is_empty());
        assert_eq!(bit.width(), 4);
    }

    #[test]
    fn two_variable_phase_oracle_uses_a_decorated_cz_pair() {
        // f_o = x1'·x2 relabeled to two variables: term x0·x1' -> X on x1.
        let f = DnfFormula::new(2, vec![0b01]).unwrap();
        let oracle = dnf_to_phase_oracle(&f).unwrap();
        assert_eq!(
            oracle.gates(),
            &[Gate::X(1), Gate::mcz([0, 1]).unwrap(), Gate::X(1)]
        );
    }

    #[test]
    fn phase_oracle_applies_minus_one_exactly_on_the_support() {
        for (arity, terms) in [(1usize, vec![0u64]), (2, vec![1, 2]), (3, vec![5, 2])] {
            let f = DnfFormula::new(arity, terms).unwrap();
            let oracle = dnf_to_phase_oracle(&f).unwrap();
            for x in 0..1u64 << arity {
                let out = run(&oracle, &StateVector::basis(arity, x).unwrap()).unwrap();
                let expected = if f.evaluate(x).unwrap() { -1.0 } else { 1.0 };
                assert!((out.amplitude(x).re - expected).abs() < 1e-12);
                assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bit_oracle_writes_f_into_the_ancilla() {
        // Appendix example f = x0'·x1' + x0·x1'; row (x0,x1) = (1,0) maps to 1.
        let f = DnfFormula::new(2, vec![0b00, 0b01]).unwrap();
        let oracle = dnf_to_bit_oracle(&f).unwrap();
        for x in 0..4u64 {
            for c in [0u64, 1] {
                let input = StateVector::basis(3, x | c << 2).unwrap();
                let out = run(&oracle, &input).unwrap();
                let fx = f.evaluate(x).unwrap() as u64;
                let expected = x | (c ^ fx) << 2;
                assert!((out.amplitude(expected).norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn recovery_inverts_synthesis() {
        for (arity, terms) in [
            (1usize, vec![1u64]),
            (2, vec![0, 3]),
            (3, vec![0b101, 0b010]),
            (4, vec![15]),
        ] {
            let f = DnfFormula::new(arity, terms).unwrap();
            let oracle = dnf_to_phase_oracle(&f).unwrap();
            let back = phase_oracle_to_formula(&oracle).unwrap();
            let mut want: Vec<u64> = f.terms().to_vec();
            want.sort_unstable();
            assert_eq!(back.terms(), want.as_slice());
        }
    }

    #[test]
    fn recovery_rejects_non_oracle_circuits() {
        let mut c = Circuit::new(2).unwrap();
        c.push(Gate::H(0)).unwrap();
        assert!(phase_oracle_to_formula(&c).is_err());
        let mut unbalanced = Circuit::new(2).unwrap();
        unbalanced.push(Gate::X(0)).unwrap();
        assert!(phase_oracle_to_formula(&unbalanced).is_err());
    }

    #[test]
    fn x_cancellation_removes_back_to_back_pairs() {
        let oracle = dnf_to_phase_oracle(&DnfFormula::new(2, vec![0b00, 0b10]).unwrap()).unwrap();
        // Term 00 undoes X on both, term 10 re-applies X on qubit 0.
        let trimmed = cancel_adjacent_x(&oracle);
        assert!(trimmed.len() < oracle.len());
        for x in 0..4u64 {
            let a = run(&oracle, &StateVector::basis(2, x).unwrap()).unwrap();
            let b = run(&trimmed, &StateVector::basis(2, x).unwrap()).unwrap();
            assert!((a.amplitude(x) - b.amplitude(x)).norm() < 1e-12);
        }
    }

    #[test]
    fn formula_text_round_trips() {
        let f = two_term_formula();
        let text = f.to_text();
        assert_eq!(text, "ARITY 3\n101\n010\n");
        let back = DnfFormula::from_text(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn truth_table_text_round_trips() {
        let t = TruthTable::from_ones(2, &[1, 2]).unwrap();
        let text = t.to_text();
        assert_eq!(text, "ARITY 2\n0\n1\n1\n0\n");
        let back = TruthTable::from_text(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn round_trip_table_to_dnf_is_exhaustive_up_to_arity_5() {
        for arity in 1..=5usize {
            let size = 1usize << arity;
            // Spot a spread of tables rather than all 2^32 at arity 5.
            let cases: Vec<u64> = if arity <= 3 {
                (0..1u64 << size).collect()
            } else {
                (0..4096u64).map(|k| k.wrapping_mul(0x9e3779b9) & ((1u64 << size) - 1)).collect()
            };
            for mask in cases {
                let outputs: Vec<bool> = (0..size).map(|i| mask >> i & 1 == 1).collect();
                let table = TruthTable::new(arity, outputs).unwrap();
                let dnf = truth_table_to_dnf(&table);
                for x in 0..size as u64 {
                    assert_eq!(dnf.evaluate(x).unwrap(), table.value(x).unwrap());
                }
            }
        }
    }

    #[test]
    fn duplicate_terms_are_rejected() {
        assert!(matches!(
            DnfFormula::new(2, vec![1, 1]),
            Err(Error::DuplicateTerm { .. })
        ));
        assert!(matches!(
            DnfFormula::new(2, vec![4]),
            Err(Error::TermOutOfRange { .. })
        ));
    }

    #[test]
    fn is_period_checks_shift_invariance() {
        // f supported on {00, 11} has period 11.
        let f = DnfFormula::new(2, vec![0b00, 0b11]).unwrap();
        assert!(f.is_period(0b11).unwrap());
        assert!(!f.is_period(0b01).unwrap());
        assert!(f.is_period(0).unwrap());
    }
}

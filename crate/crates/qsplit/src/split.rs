//! Even/odd splitting of DNF-form phase oracles.
//!
//! A width-n DNF oracle splits into two width-(n-1) oracles indexed by the
//! value of one chosen parity qubit: the even circuit acts on inputs where
//! that qubit is 0, the odd circuit where it is 1, and
//!
//! ```text
//! U_f (|0>_j tensor |phi>) = |0>_j tensor U_even |phi>
//! U_f (|1>_j tensor |phi>) = |1>_j tensor U_odd  |phi>
//! ```
//!
//! holds on every basis state.

use crate::bits::remove_bit;
use crate::circuit::{Circuit, Gate};
use crate::dnf::DnfFormula;
use crate::error::{Error, Result};

/// The two sub-circuits produced by [`split_circuit`], plus routing counts
/// for reporting.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitResult {
    pub even: Circuit,
    pub odd: Circuit,
    pub parity_qubit: usize,
    pub parent_width: usize,
    pub even_terms: usize,
    pub odd_terms: usize,
}

/// Split a DNF-form oracle at `parity_qubit`.
///
/// Walks the gates in execution order keeping a parity flag toggled by X
/// gates on the parity qubit. A full-width multi-controlled Z goes to the
/// even circuit when the flag is set (the surrounding X pair means the term
/// fires on parity bit 0) and to the odd circuit otherwise. Other
/// single-qubit gates are copied to both outputs with the parity qubit
/// deleted from the index space. Anything else aborts the split, as does a
/// non-X single-qubit gate on the parity qubit itself.
pub fn split_circuit(oracle: &Circuit, parity_qubit: usize) -> Result<SplitResult> {
    let n = oracle.width();
    if parity_qubit >= n {
        return Err(Error::QubitOutOfRange {
            index: parity_qubit,
            width: n,
        });
    }
    if n < 2 {
        return Err(Error::ArityTooSmall { arity: n, min: 2 });
    }
    if !oracle.is_dnf_form() {
        return Err(Error::NotDnfForm);
    }

    let relabel = |q: usize| if q > parity_qubit { q - 1 } else { q };
    let mut even = Circuit::new(n - 1)?;
    let mut odd = Circuit::new(n - 1)?;
    let mut even_terms = 0usize;
    let mut odd_terms = 0usize;
    let mut parity = false;

    for gate in oracle.gates() {
        match gate {
            Gate::X(q) if *q == parity_qubit => parity = !parity,
            g if oracle.is_full_width_z(g) => {
                let sub_gate = Gate::full_width_z(n - 1)?;
                if parity {
                    even.push(sub_gate)?;
                    even_terms += 1;
                } else {
                    odd.push(sub_gate)?;
                    odd_terms += 1;
                }
            }
            g if g.is_single_qubit() && !g.qubits().contains(&parity_qubit) => {
                let mapped = match g {
                    Gate::X(q) => Gate::X(relabel(*q)),
                    Gate::H(q) => Gate::H(relabel(*q)),
                    Gate::Z(q) => Gate::Z(relabel(*q)),
                    Gate::S(q) => Gate::S(relabel(*q)),
                    Gate::Sdg(q) => Gate::Sdg(relabel(*q)),
                    Gate::T(q) => Gate::T(relabel(*q)),
                    Gate::Tdg(q) => Gate::Tdg(relabel(*q)),
                    Gate::Phase { qubit, num, den } => Gate::Phase {
                        qubit: relabel(*qubit),
                        num: *num,
                        den: *den,
                    },
                    _ => unreachable!("single-qubit unitaries only"),
                };
                even.push(mapped.clone())?;
                odd.push(mapped)?;
            }
            other => {
                return Err(Error::UnsplittableGate {
                    gate: other.to_string(),
                })
            }
        }
    }

    let base = if oracle.label().is_empty() {
        String::new()
    } else {
        format!("{} ", oracle.label())
    };
    even.set_label(format!("{base}even"));
    odd.set_label(format!("{base}odd"));
    Ok(SplitResult {
        even,
        odd,
        parity_qubit,
        parent_width: n,
        even_terms,
        odd_terms,
    })
}

/// Formula-level counterpart of [`split_circuit`]: terms with a negated
/// parity literal go to the even part, positive to the odd part, each with
/// the parity variable deleted.
pub fn split_formula(
    formula: &DnfFormula,
    parity_var: usize,
) -> Result<(DnfFormula, DnfFormula)> {
    let n = formula.arity();
    if parity_var >= n {
        return Err(Error::QubitOutOfRange {
            index: parity_var,
            width: n,
        });
    }
    if n < 2 {
        return Err(Error::ArityTooSmall { arity: n, min: 2 });
    }
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for &t in formula.terms() {
        let reduced = remove_bit(t, parity_var);
        if t >> parity_var & 1 == 0 {
            even.push(reduced);
        } else {
            odd.push(reduced);
        }
    }
    Ok((DnfFormula::new(n - 1, even)?, DnfFormula::new(n - 1, odd)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::insert_bit;
    use crate::dnf::{dnf_to_phase_oracle, phase_oracle_to_formula};
    use crate::statevec::{run, StateVector};

    fn two_term_formula() -> DnfFormula {
        DnfFormula::new(3, vec![0b101, 0b010]).unwrap()
    }

    #[test]
    fn worked_example_routes_terms_as_published() {
        // f = x0·x1'·x2 + x0'·x1·x2', parity x0: f_e = x1·x2', f_o = x1'·x2.
        let oracle = dnf_to_phase_oracle(&two_term_formula()).unwrap();
        let split = split_circuit(&oracle, 0).unwrap();
        assert_eq!(split.even.width(), 2);
        assert_eq!(split.odd.width(), 2);
        assert!(split.even.is_dnf_form());
        assert!(split.odd.is_dnf_form());
        assert_eq!(split.even_terms, 1);
        assert_eq!(split.odd_terms, 1);

        let fe = phase_oracle_to_formula(&split.even).unwrap();
        let fo = phase_oracle_to_formula(&split.odd).unwrap();
        assert_eq!(fe.terms(), &[0b01]); // x1·x2' over (x1, x2)
        assert_eq!(fo.terms(), &[0b10]); // x1'·x2
    }

    #[test]
    fn formula_split_matches_the_worked_example() {
        let (fe, fo) = split_formula(&two_term_formula(), 0).unwrap();
        assert_eq!(fe.terms(), &[0b01]);
        assert_eq!(fo.terms(), &[0b10]);
    }

    #[test]
    fn oracle_without_mcz_splits_to_identities() {
        let oracle = Circuit::new(3).unwrap();
        let split = split_circuit(&oracle, 1).unwrap();
        assert!(split.even.is_empty());
        assert!(split.odd.is_empty());
    }

    #[test]
    fn single_target_all_ones_lands_in_the_odd_half() {
        // Target 1111 with parity qubit 0: odd marks 111, even is empty.
        let f = DnfFormula::new(4, vec![0b1111]).unwrap();
        let oracle = dnf_to_phase_oracle(&f).unwrap();
        let split = split_circuit(&oracle, 0).unwrap();
        assert_eq!(split.even_terms, 0);
        assert!(split.even.is_empty());
        let fo = phase_oracle_to_formula(&split.odd).unwrap();
        assert_eq!(fo.terms(), &[0b111]);
        // Exhaustive basis check against the formula restriction.
        for y in 0..8u64 {
            let expected = f.evaluate(insert_bit(y, 0, true)).unwrap();
            assert_eq!(fo.evaluate(y).unwrap(), expected);
        }
    }

    #[test]
    fn split_rejects_non_dnf_circuits_and_bad_parity_gates() {
        let mut cnot = Circuit::new(3).unwrap();
        cnot.push(Gate::Cnot {
            control: 0,
            target: 1,
        })
        .unwrap();
        assert!(matches!(split_circuit(&cnot, 0), Err(Error::NotDnfForm)));

        // H on the parity qubit is DNF-form but not splittable there.
        let mut h = Circuit::new(3).unwrap();
        h.push(Gate::H(0)).unwrap();
        assert!(matches!(
            split_circuit(&h, 0),
            Err(Error::UnsplittableGate { .. })
        ));
        // Splitting at another qubit copies it to both halves.
        let ok = split_circuit(&h, 2).unwrap();
        assert_eq!(ok.even.gates(), &[Gate::H(0)]);
        assert_eq!(ok.odd.gates(), &[Gate::H(0)]);
    }

    #[test]
    fn trailing_x_on_the_parity_qubit_is_dropped() {
        let mut oracle = dnf_to_phase_oracle(&two_term_formula()).unwrap();
        oracle.push(Gate::X(0)).unwrap();
        let with_trailing = split_circuit(&oracle, 0).unwrap();
        let without = split_circuit(&dnf_to_phase_oracle(&two_term_formula()).unwrap(), 0).unwrap();
        assert_eq!(with_trailing.even, without.even);
        assert_eq!(with_trailing.odd, without.odd);
    }

    #[test]
    fn split_equivalence_holds_on_every_basis_state() {
        // U_f(|b>_j ⊗ |phi>) = |b>_j ⊗ U_b|phi> for the worked example,
        // every parity choice, simulated on both sides.
        let oracle = dnf_to_phase_oracle(&two_term_formula()).unwrap();
        for j in 0..3usize {
            let split = split_circuit(&oracle, j).unwrap();
            for z in 0..8u64 {
                let parent = run(&oracle, &StateVector::basis(3, z).unwrap()).unwrap();
                let sub = if z >> j & 1 == 0 {
                    &split.even
                } else {
                    &split.odd
                };
                let reduced = remove_bit(z, j);
                let child = run(sub, &StateVector::basis(2, reduced).unwrap()).unwrap();
                let diff = (parent.amplitude(z) - child.amplitude(reduced)).norm();
                assert!(diff < 1e-10, "parity {j}, basis {z}: diff {diff}");
            }
        }
    }

    #[test]
    fn formula_split_agrees_with_fixing_the_parity_bit() {
        // evaluate(even, y) = evaluate(f, insert 0 at j) for all y, n <= 5.
        for arity in 2..=5usize {
            let f = DnfFormula::new(
                arity,
                (0..1u64 << arity).filter(|x| x % 3 == 1).collect(),
            )
            .unwrap();
            for j in 0..arity {
                let (fe, fo) = split_formula(&f, j).unwrap();
                for y in 0..1u64 << (arity - 1) {
                    assert_eq!(
                        fe.evaluate(y).unwrap(),
                        f.evaluate(insert_bit(y, j, false)).unwrap()
                    );
                    assert_eq!(
                        fo.evaluate(y).unwrap(),
                        f.evaluate(insert_bit(y, j, true)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn constant_zero_splits_to_empty_halves() {
        let (fe, fo) = split_formula(&DnfFormula::empty(3).unwrap(), 1).unwrap();
        assert_eq!(fe.term_count(), 0);
        assert_eq!(fo.term_count(), 0);
    }
}

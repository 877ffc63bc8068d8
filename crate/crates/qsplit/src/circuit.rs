//! Gates, circuits, decomposition to the elementary set, and depth accounting.
//!
//! Qubit 0 is the least-significant bit of a basis index. Depth follows
//! hardware-style counting rules: the only two-qubit gate is CNOT, gates that
//! can run in parallel share a column, and a run of consecutive single-qubit
//! gates on one qubit counts as a single gate.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Desk-scale guard on register widths (2^24 amplitudes).
pub const MAX_WIDTH: usize = 24;

const MAX_PHASE_DEN: u32 = 60;

/// A gate over 0-based qubit indices.
///
/// `Mcz` is stored as a set because the gate is symmetric in its qubits.
/// `Phase` is the dyadic phase gate `diag(1, exp(i*pi*num/2^den))`; it shows
/// up when multi-controlled Z gates on four or more qubits are decomposed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gate {
    X(usize),
    H(usize),
    Z(usize),
    S(usize),
    Sdg(usize),
    T(usize),
    Tdg(usize),
    Phase { qubit: usize, num: i64, den: u32 },
    Cnot { control: usize, target: usize },
    Cz(usize, usize),
    Mcz(BTreeSet<usize>),
    Mcx { controls: Vec<usize>, target: usize },
    Measure(usize),
}

impl Gate {
    /// Multi-controlled Z over a qubit set of size >= 2.
    pub fn mcz<I: IntoIterator<Item = usize>>(qubits: I) -> Result<Gate> {
        let mut set = BTreeSet::new();
        for q in qubits {
            if !set.insert(q) {
                return Err(Error::DuplicateQubit { index: q });
            }
        }
        if set.len() < 2 {
            return Err(Error::MczTooSmall { got: set.len() });
        }
        Ok(Gate::Mcz(set))
    }

    /// Multi-controlled X with at least one control.
    pub fn mcx(controls: Vec<usize>, target: usize) -> Result<Gate> {
        if controls.is_empty() {
            return Err(Error::McxNoControls);
        }
        let mut seen = BTreeSet::new();
        for &q in controls.iter().chain(std::iter::once(&target)) {
            if !seen.insert(q) {
                return Err(Error::DuplicateQubit { index: q });
            }
        }
        Ok(Gate::Mcx { controls, target })
    }

    /// The phase-flip-on-all-ones gate for a register of the given width:
    /// `Z` on one qubit, `Mcz` over every qubit otherwise.
    pub fn full_width_z(width: usize) -> Result<Gate> {
        match width {
            0 => Err(Error::ZeroWidth),
            1 => Ok(Gate::Z(0)),
            _ => Gate::mcz(0..width),
        }
    }

    /// Reduced dyadic phase gate; `None` when the angle is a multiple of 2*pi.
    /// Angles that land on Z, S, S†, T or T† come back as those gates.
    pub fn phase(qubit: usize, num: i64, den: u32) -> Result<Option<Gate>> {
        if den > MAX_PHASE_DEN {
            return Err(Error::PhaseDenTooLarge { den });
        }
        let modulus = 1i64 << (den + 1);
        let mut num = num.rem_euclid(modulus);
        let mut den = den;
        if num == 0 {
            return Ok(None);
        }
        while num % 2 == 0 && den > 0 {
            num /= 2;
            den -= 1;
        }
        Ok(Some(match (den, num) {
            (0, 1) => Gate::Z(qubit),
            (1, 1) => Gate::S(qubit),
            (1, 3) => Gate::Sdg(qubit),
            (2, 1) => Gate::T(qubit),
            (2, 7) => Gate::Tdg(qubit),
            _ => Gate::Phase { qubit, num, den },
        }))
    }

    /// Qubits the gate touches, in storage order.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::X(q)
            | Gate::H(q)
            | Gate::Z(q)
            | Gate::S(q)
            | Gate::Sdg(q)
            | Gate::T(q)
            | Gate::Tdg(q)
            | Gate::Phase { qubit: q, .. }
            | Gate::Measure(q) => vec![*q],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::Cz(a, b) => vec![*a, *b],
            Gate::Mcz(set) => set.iter().copied().collect(),
            Gate::Mcx { controls, target } => {
                let mut v = controls.clone();
                v.push(*target);
                v
            }
        }
    }

    /// Single-qubit unitary gates (measurement excluded).
    pub fn is_single_qubit(&self) -> bool {
        matches!(
            self,
            Gate::X(_)
                | Gate::H(_)
                | Gate::Z(_)
                | Gate::S(_)
                | Gate::Sdg(_)
                | Gate::T(_)
                | Gate::Tdg(_)
                | Gate::Phase { .. }
        )
    }

    /// Elementary set: single-qubit unitaries plus CNOT.
    pub fn is_elementary(&self) -> bool {
        self.is_single_qubit() || matches!(self, Gate::Cnot { .. })
    }

    fn validate(&self, width: usize) -> Result<()> {
        let qubits = self.qubits();
        let mut seen = BTreeSet::new();
        for &q in &qubits {
            if q >= width {
                return Err(Error::QubitOutOfRange { index: q, width });
            }
            if !seen.insert(q) {
                return Err(Error::DuplicateQubit { index: q });
            }
        }
        match self {
            Gate::Mcz(set) if set.len() < 2 => Err(Error::MczTooSmall { got: set.len() }),
            Gate::Mcx { controls, .. } if controls.is_empty() => Err(Error::McxNoControls),
            Gate::Phase { den, .. } if *den > MAX_PHASE_DEN => {
                Err(Error::PhaseDenTooLarge { den: *den })
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::X(q) => write!(f, "X {q}"),
            Gate::H(q) => write!(f, "H {q}"),
            Gate::Z(q) => write!(f, "Z {q}"),
            Gate::S(q) => write!(f, "S {q}"),
            Gate::Sdg(q) => write!(f, "SDG {q}"),
            Gate::T(q) => write!(f, "T {q}"),
            Gate::Tdg(q) => write!(f, "TDG {q}"),
            Gate::Phase { qubit, num, den } => write!(f, "P {qubit} {num} {den}"),
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            Gate::Cz(a, b) => write!(f, "CZ {a} {b}"),
            Gate::Mcz(set) => {
                write!(f, "MCZ")?;
                for q in set {
                    write!(f, " {q}")?;
                }
                Ok(())
            }
            Gate::Mcx { controls, target } => {
                write!(f, "MCX")?;
                for q in controls {
                    write!(f, " {q}")?;
                }
                write!(f, " {target}")
            }
            Gate::Measure(q) => write!(f, "MEASURE {q}"),
        }
    }
}

impl FromStr for Gate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Gate> {
        let parse = |tok: &str| -> Result<usize> {
            tok.parse().map_err(|_| Error::Parse {
                what: "gate",
                line: 0,
                msg: format!("bad index `{tok}`"),
            })
        };
        let toks: Vec<&str> = s.split_whitespace().collect();
        let bad = |msg: &str| Error::Parse {
            what: "gate",
            line: 0,
            msg: msg.to_string(),
        };
        let one = |toks: &[&str]| -> Result<usize> {
            if toks.len() != 2 {
                return Err(bad("expected one qubit index"));
            }
            parse(toks[1])
        };
        match toks.first().copied() {
            Some("X") => Ok(Gate::X(one(&toks)?)),
            Some("H") => Ok(Gate::H(one(&toks)?)),
            Some("Z") => Ok(Gate::Z(one(&toks)?)),
            Some("S") => Ok(Gate::S(one(&toks)?)),
            Some("SDG") => Ok(Gate::Sdg(one(&toks)?)),
            Some("T") => Ok(Gate::T(one(&toks)?)),
            Some("TDG") => Ok(Gate::Tdg(one(&toks)?)),
            Some("MEASURE") => Ok(Gate::Measure(one(&toks)?)),
            Some("P") => {
                if toks.len() != 4 {
                    return Err(bad("expected P <qubit> <num> <den>"));
                }
                let qubit = parse(toks[1])?;
                let num: i64 = toks[2].parse().map_err(|_| bad("bad phase numerator"))?;
                let den: u32 = toks[3].parse().map_err(|_| bad("bad phase denominator"))?;
                Ok(Gate::Phase { qubit, num, den })
            }
            Some("CNOT") => {
                if toks.len() != 3 {
                    return Err(bad("expected CNOT <control> <target>"));
                }
                Ok(Gate::Cnot {
                    control: parse(toks[1])?,
                    target: parse(toks[2])?,
                })
            }
            Some("CZ") => {
                if toks.len() != 3 {
                    return Err(bad("expected CZ <a> <b>"));
                }
                Ok(Gate::Cz(parse(toks[1])?, parse(toks[2])?))
            }
            Some("MCZ") => {
                let qubits: Vec<usize> = toks[1..]
                    .iter()
                    .map(|t| parse(t))
                    .collect::<Result<_>>()?;
                Gate::mcz(qubits)
            }
            Some("MCX") => {
                if toks.len() < 3 {
                    return Err(bad("expected MCX <controls...> <target>"));
                }
                let mut qubits: Vec<usize> = toks[1..]
                    .iter()
                    .map(|t| parse(t))
                    .collect::<Result<_>>()?;
                let target = qubits.pop().expect("length checked");
                Gate::mcx(qubits, target)
            }
            _ => Err(bad("unknown gate")),
        }
    }
}

/// An ordered gate list over a fixed register width.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    width: usize,
    label: String,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize) -> Result<Circuit> {
        if width == 0 {
            return Err(Error::ZeroWidth);
        }
        if width > MAX_WIDTH {
            return Err(Error::WidthTooLarge {
                width,
                max: MAX_WIDTH,
            });
        }
        Ok(Circuit {
            width,
            label: String::new(),
            gates: Vec::new(),
        })
    }

    pub fn with_label(width: usize, label: impl Into<String>) -> Result<Circuit> {
        let mut c = Circuit::new(width)?;
        c.label = label.into();
        Ok(c)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.width)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// Both circuits in sequence; widths must match.
    pub fn concat(&self, other: &Circuit) -> Result<Circuit> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                got: other.width,
            });
        }
        let mut out = self.clone();
        out.gates.extend(other.gates.iter().cloned());
        Ok(out)
    }

    /// Apply a qubit permutation: gate indices `q` become `perm[q]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Circuit> {
        if perm.len() != self.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                got: perm.len(),
            });
        }
        let mut out = Circuit::with_label(self.width, self.label.clone())?;
        for g in &self.gates {
            let mapped = match g {
                Gate::X(q) => Gate::X(perm[*q]),
                Gate::H(q) => Gate::H(perm[*q]),
                Gate::Z(q) => Gate::Z(perm[*q]),
                Gate::S(q) => Gate::S(perm[*q]),
                Gate::Sdg(q) => Gate::Sdg(perm[*q]),
                Gate::T(q) => Gate::T(perm[*q]),
                Gate::Tdg(q) => Gate::Tdg(perm[*q]),
                Gate::Phase { qubit, num, den } => Gate::Phase {
                    qubit: perm[*qubit],
                    num: *num,
                    den: *den,
                },
                Gate::Cnot { control, target } => Gate::Cnot {
                    control: perm[*control],
                    target: perm[*target],
                },
                Gate::Cz(a, b) => Gate::Cz(perm[*a], perm[*b]),
                Gate::Mcz(set) => Gate::mcz(set.iter().map(|&q| perm[q]))?,
                Gate::Mcx { controls, target } => Gate::mcx(
                    controls.iter().map(|&q| perm[q]).collect(),
                    perm[*target],
                )?,
                Gate::Measure(q) => Gate::Measure(perm[*q]),
            };
            out.push(mapped)?;
        }
        Ok(out)
    }

    /// True when the gate spans every qubit of this circuit and flips the
    /// phase of the all-ones state: `Mcz` on all qubits, `CZ` at width 2, or
    /// `Z` at width 1.
    pub fn is_full_width_z(&self, gate: &Gate) -> bool {
        match gate {
            Gate::Mcz(set) => set.len() == self.width,
            Gate::Cz(_, _) => self.width == 2,
            Gate::Z(_) => self.width == 1,
            _ => false,
        }
    }

    /// DNF-form predicate: every gate is a single-qubit unitary or a
    /// full-width multi-controlled Z. This is the shape produced by phase
    /// oracle synthesis and required by the circuit splitter.
    pub fn is_dnf_form(&self) -> bool {
        self.gates
            .iter()
            .all(|g| g.is_single_qubit() || self.is_full_width_z(g))
    }

    /// Rewrite to single-qubit gates and CNOT only.
    ///
    /// `CZ` becomes H-CNOT-H on its second qubit, three-qubit `Mcz` expands
    /// to the standard 13-gate CNOT/T ladder, and larger `Mcz`/`Mcx` gates go
    /// through an exact ancilla-free recursion on controlled dyadic phases.
    /// The basis action is preserved exactly, not just up to approximation.
    pub fn decompose(&self) -> Result<Circuit> {
        let mut out = Circuit::with_label(self.width, self.label.clone())?;
        for gate in &self.gates {
            let mut expansion = Vec::new();
            match gate {
                g if g.is_elementary() => expansion.push(g.clone()),
                Gate::Measure(_) => return Err(Error::MeasureUnsupported),
                Gate::Cz(a, b) => cz_elementary(*a, *b, &mut expansion),
                Gate::Mcz(set) => {
                    let qs: Vec<usize> = set.iter().copied().collect();
                    match qs.len() {
                        2 => cz_elementary(qs[0], qs[1], &mut expansion),
                        3 => ccz_ladder(qs[0], qs[1], qs[2], &mut expansion),
                        _ => {
                            let (target, controls) = qs.split_last().expect("non-empty");
                            mcp(1, 0, controls, *target, &mut expansion)?;
                        }
                    }
                }
                Gate::Mcx { controls, target } => match controls.len() {
                    1 => expansion.push(Gate::Cnot {
                        control: controls[0],
                        target: *target,
                    }),
                    _ => {
                        expansion.push(Gate::H(*target));
                        if controls.len() == 2 {
                            ccz_ladder(controls[0], controls[1], *target, &mut expansion);
                        } else {
                            mcp(1, 0, controls, *target, &mut expansion)?;
                        }
                        expansion.push(Gate::H(*target));
                    }
                },
                _ => unreachable!("all gate kinds handled"),
            }
            out.extend(expansion)?;
        }
        Ok(out)
    }

    /// Column count and gate tallies for an elementary circuit.
    ///
    /// Columns are built left to right in execution order. A column holds
    /// either single-qubit gates or CNOTs, never both, and a gate joins the
    /// current column only if its qubits are free there. A maximal run of
    /// consecutive single-qubit gates on one qubit (no CNOT on that qubit in
    /// between) occupies a single slot: the run head's column.
    pub fn depth_report(&self) -> Result<DepthReport> {
        #[derive(PartialEq, Clone, Copy)]
        enum ColKind {
            Single,
            Double,
        }
        let mut depth = 0usize;
        let mut cnot_count = 0usize;
        let mut col_kind: Option<ColKind> = None;
        let mut col_mask: u64 = 0;
        let mut in_run = vec![false; self.width];

        for gate in &self.gates {
            match gate {
                g if g.is_single_qubit() => {
                    let q = g.qubits()[0];
                    if in_run[q] {
                        continue; // merged into the run head's slot
                    }
                    in_run[q] = true;
                    let bit = 1u64 << q;
                    if col_kind == Some(ColKind::Single) && col_mask & bit == 0 {
                        col_mask |= bit;
                    } else {
                        depth += 1;
                        col_kind = Some(ColKind::Single);
                        col_mask = bit;
                    }
                }
                Gate::Cnot { control, target } => {
                    cnot_count += 1;
                    in_run[*control] = false;
                    in_run[*target] = false;
                    let bits = (1u64 << control) | (1u64 << target);
                    if col_kind == Some(ColKind::Double) && col_mask & bits == 0 {
                        col_mask |= bits;
                    } else {
                        depth += 1;
                        col_kind = Some(ColKind::Double);
                        col_mask = bits;
                    }
                }
                other => {
                    return Err(Error::NotElementary {
                        gate: other.to_string(),
                    })
                }
            }
        }
        Ok(DepthReport {
            depth,
            gate_count: self.gates.len(),
            cnot_count,
        })
    }

    /// Line-oriented text form: `WIDTH n`, an optional `LABEL ...`, then one
    /// gate per line. Round-trips byte for byte.
    pub fn to_text(&self) -> String {
        let mut out = format!("WIDTH {}\n", self.width);
        if !self.label.is_empty() {
            out.push_str(&format!("LABEL {}\n", self.label));
        }
        for g in &self.gates {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Circuit> {
        let mut circuit: Option<Circuit> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = i + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match &mut circuit {
                None => {
                    let width = line
                        .strip_prefix("WIDTH ")
                        .and_then(|w| w.trim().parse::<usize>().ok())
                        .ok_or(Error::Parse {
                            what: "circuit",
                            line: lineno,
                            msg: "expected `WIDTH <n>` header".to_string(),
                        })?;
                    circuit = Some(Circuit::new(width)?);
                }
                Some(c) => {
                    if let Some(label) = line.strip_prefix("LABEL ") {
                        if c.gates.is_empty() && c.label.is_empty() {
                            c.label = label.to_string();
                            continue;
                        }
                    }
                    let gate = line.parse::<Gate>().map_err(|e| Error::Parse {
                        what: "circuit",
                        line: lineno,
                        msg: e.to_string(),
                    })?;
                    c.push(gate)?;
                }
            }
        }
        circuit.ok_or(Error::Parse {
            what: "circuit",
            line: 0,
            msg: "missing `WIDTH <n>` header".to_string(),
        })
    }
}

/// Depth and gate tallies. `depth` doubles as the time-step count `T` fed to
/// noise estimates; `cnot_count` is the two-qubit gate count `N_g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct DepthReport {
    pub depth: usize,
    pub gate_count: usize,
    pub cnot_count: usize,
}

impl DepthReport {
    pub fn time_steps(&self) -> usize {
        self.depth
    }
}

fn cz_elementary(a: usize, b: usize, out: &mut Vec<Gate>) {
    out.push(Gate::H(b));
    out.push(Gate::Cnot {
        control: a,
        target: b,
    });
    out.push(Gate::H(b));
}

/// The 13-gate CNOT/T ladder for a phase flip on |111> of (a, b, c).
fn ccz_ladder(a: usize, b: usize, c: usize, out: &mut Vec<Gate>) {
    out.extend([
        Gate::Cnot {
            control: b,
            target: c,
        },
        Gate::Tdg(c),
        Gate::Cnot {
            control: a,
            target: c,
        },
        Gate::T(c),
        Gate::Cnot {
            control: b,
            target: c,
        },
        Gate::Tdg(c),
        Gate::Cnot {
            control: a,
            target: c,
        },
        Gate::T(b),
        Gate::T(c),
        Gate::Cnot {
            control: a,
            target: b,
        },
        Gate::T(a),
        Gate::Tdg(b),
        Gate::Cnot {
            control: a,
            target: b,
        },
    ]);
}

/// Controlled dyadic phase: angle pi*num/2^den on |11> of (a, b).
fn cp(num: i64, den: u32, a: usize, b: usize, out: &mut Vec<Gate>) -> Result<()> {
    for g in [
        Gate::phase(a, num, den + 1)?,
        Gate::phase(b, num, den + 1)?,
    ]
    .into_iter()
    .flatten()
    {
        out.push(g);
    }
    out.push(Gate::Cnot {
        control: a,
        target: b,
    });
    if let Some(g) = Gate::phase(b, -num, den + 1)? {
        out.push(g);
    }
    out.push(Gate::Cnot {
        control: a,
        target: b,
    });
    Ok(())
}

/// Multi-controlled dyadic phase on `target`, recursion over the control set:
/// MCP(theta; C+l, t) = CP(theta/2; l, t) MCX(C, l) CP(-theta/2; l, t)
///                      MCX(C, l) MCP(theta/2; C, t).
fn mcp(num: i64, den: u32, controls: &[usize], target: usize, out: &mut Vec<Gate>) -> Result<()> {
    match controls.len() {
        0 => {
            if let Some(g) = Gate::phase(target, num, den)? {
                out.push(g);
            }
            Ok(())
        }
        1 => cp(num, den, controls[0], target, out),
        _ => {
            let (last, rest) = controls.split_last().expect("len >= 2");
            cp(num, den + 1, *last, target, out)?;
            mcx_elementary(rest, *last, out)?;
            cp(-num, den + 1, *last, target, out)?;
            mcx_elementary(rest, *last, out)?;
            mcp(num, den + 1, rest, target, out)
        }
    }
}

fn mcx_elementary(controls: &[usize], target: usize, out: &mut Vec<Gate>) -> Result<()> {
    match controls.len() {
        0 => {
            out.push(Gate::X(target));
            Ok(())
        }
        1 => {
            out.push(Gate::Cnot {
                control: controls[0],
                target,
            });
            Ok(())
        }
        2 => {
            out.push(Gate::H(target));
            ccz_ladder(controls[0], controls[1], target, out);
            out.push(Gate::H(target));
            Ok(())
        }
        _ => {
            out.push(Gate::H(target));
            mcp(1, 0, controls, target, out)?;
            out.push(Gate::H(target));
            Ok(())
        }
    }
}

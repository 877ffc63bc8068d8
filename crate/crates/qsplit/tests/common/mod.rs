//! Dense-matrix reference for circuit unitaries, built entry-wise from the
//! textbook gate definitions. Independent of the library's state-vector
//! path; used to cross-check both the simulator and the decomposer.

use num_complex::Complex64;
use qsplit::circuit::{Circuit, Gate};

pub type Matrix = Vec<Vec<Complex64>>;

fn zero(n: usize) -> Matrix {
    vec![vec![Complex64::new(0.0, 0.0); n]; n]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zero(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    m
}

fn single_qubit_unitary(gate: &Gate) -> Option<(usize, [[Complex64; 2]; 2])> {
    let c = Complex64::new;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let (q, u) = match gate {
        Gate::X(q) => (*q, [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]),
        Gate::H(q) => (*q, [[c(r, 0.0), c(r, 0.0)], [c(r, 0.0), c(-r, 0.0)]]),
        Gate::Z(q) => (*q, [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]]),
        Gate::S(q) => (*q, [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 1.0)]]),
        Gate::Sdg(q) => (*q, [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, -1.0)]]),
        Gate::T(q) => (*q, [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(r, r)]]),
        Gate::Tdg(q) => (*q, [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(r, -r)]]),
        Gate::Phase { qubit, num, den } => {
            let angle = std::f64::consts::PI * (*num as f64) / (1u64 << den) as f64;
            (
                *qubit,
                [
                    [c(1.0, 0.0), c(0.0, 0.0)],
                    [c(0.0, 0.0), Complex64::from_polar(1.0, angle)],
                ],
            )
        }
        _ => return None,
    };
    Some((q, u))
}

pub fn gate_matrix(gate: &Gate, width: usize) -> Matrix {
    let size = 1usize << width;
    if let Some((q, u)) = single_qubit_unitary(gate) {
        let mut m = zero(size);
        let qbit = 1usize << q;
        for i in 0..size {
            for j in 0..size {
                if i & !qbit == j & !qbit {
                    let bi = (i & qbit != 0) as usize;
                    let bj = (j & qbit != 0) as usize;
                    m[i][j] = u[bi][bj];
                }
            }
        }
        return m;
    }
    match gate {
        Gate::Cnot { control, target } => {
            let mut m = zero(size);
            for j in 0..size {
                let i = j ^ (((j >> control) & 1) << target);
                m[i][j] = Complex64::new(1.0, 0.0);
            }
            m
        }
        Gate::Cz(a, b) => {
            let mask = (1usize << a) | (1usize << b);
            let mut m = identity(size);
            for j in 0..size {
                if j & mask == mask {
                    m[j][j] = Complex64::new(-1.0, 0.0);
                }
            }
            m
        }
        Gate::Mcz(set) => {
            let mask: usize = set.iter().map(|q| 1usize << q).sum();
            let mut m = identity(size);
            for j in 0..size {
                if j & mask == mask {
                    m[j][j] = Complex64::new(-1.0, 0.0);
                }
            }
            m
        }
        Gate::Mcx { controls, target } => {
            let cmask: usize = controls.iter().map(|q| 1usize << q).sum();
            let mut m = zero(size);
            for j in 0..size {
                let i = if j & cmask == cmask {
                    j ^ (1 << target)
                } else {
                    j
                };
                m[i][j] = Complex64::new(1.0, 0.0);
            }
            m
        }
        other => panic!("no matrix for {other}"),
    }
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = zero(n);
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

/// Product of the gate matrices in execution order.
pub fn circuit_unitary(circuit: &Circuit) -> Matrix {
    let mut u = identity(1 << circuit.width());
    for gate in circuit.gates() {
        u = mat_mul(&gate_matrix(gate, circuit.width()), &u);
    }
    u
}

/// Max-norm distance after aligning global phase on the largest entry.
pub fn global_phase_distance(a: &Matrix, b: &Matrix) -> f64 {
    let n = a.len();
    let mut pivot = (0, 0);
    let mut best = 0.0;
    for i in 0..n {
        for j in 0..n {
            if a[i][j].norm() > best {
                best = a[i][j].norm();
                pivot = (i, j);
            }
        }
    }
    assert!(best > 1e-9, "zero reference matrix");
    let phase = b[pivot.0][pivot.1] / a[pivot.0][pivot.1];
    assert!(
        (phase.norm() - 1.0).abs() < 1e-6,
        "phase factor is not unimodular: {phase}"
    );
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((a[i][j] * phase - b[i][j]).norm());
        }
    }
    worst
}

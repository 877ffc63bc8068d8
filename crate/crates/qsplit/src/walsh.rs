//! Z_2^n Fourier transform of (-1)^f.
//!
//! `g(y) = sum_x (-1)^{f(x) + x·y}` computed exactly over the integers. For a
//! function with period s the spectrum is supported on `{y : y·s = 0}` and
//! the weights satisfy `sum_y g(y)^2 = N^2`. This is the classical reference
//! the period-finding samplers are checked against.

use crate::dnf::DnfFormula;
use crate::error::{Error, Result};

const MAX_SPECTRUM_ARITY: usize = 12;

/// Exact integer spectrum, indexed by y.
pub fn walsh_spectrum(formula: &DnfFormula) -> Result<Vec<i64>> {
    let n = formula.arity();
    if n > MAX_SPECTRUM_ARITY {
        return Err(Error::ArityTooLarge {
            arity: n,
            max: MAX_SPECTRUM_ARITY,
        });
    }
    let size = 1usize << n;
    let mut g: Vec<i64> = (0..size)
        .map(|x| {
            if formula.evaluate(x as u64).expect("x < 2^n") {
                -1
            } else {
                1
            }
        })
        .collect();
    // In-place Walsh-Hadamard butterfly.
    let mut h = 1;
    while h < size {
        for block in (0..size).step_by(2 * h) {
            for i in block..block + h {
                let a = g[i];
                let b = g[i + h];
                g[i] = a + b;
                g[i + h] = a - b;
            }
        }
        h *= 2;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_zero_concentrates_at_y_zero() {
        let g = walsh_spectrum(&DnfFormula::empty(2).unwrap()).unwrap();
        assert_eq!(g, vec![4, 0, 0, 0]);
    }

    #[test]
    fn balanced_two_bit_function_is_a_single_offset_delta() {
        // f supported on {01, 11} is f = x0: spectrum ±4 at y = 01.
        let f = DnfFormula::new(2, vec![0b01, 0b11]).unwrap();
        let g = walsh_spectrum(&f).unwrap();
        assert_eq!(g, vec![0, 4, 0, 0]);
    }

    #[test]
    fn single_preimage_function_has_magnitude_two_everywhere() {
        // f = 1 only on x = 10: g(y) = 4*delta(y) - 2*(-1)^{y·10}.
        let f = DnfFormula::new(2, vec![0b10]).unwrap();
        let g = walsh_spectrum(&f).unwrap();
        assert_eq!(g, vec![2, -2, 2, 2]);
        assert!(g.iter().all(|w| w.abs() == 2));
    }

    #[test]
    fn spectrum_matches_the_direct_sum_definition() {
        let f = DnfFormula::new(3, vec![1, 4, 6]).unwrap();
        let g = walsh_spectrum(&f).unwrap();
        for y in 0..8u64 {
            let direct: i64 = (0..8u64)
                .map(|x| {
                    let sign = (f.evaluate(x).unwrap() as u32
                        + ((x & y).count_ones() & 1)) as i64;
                    if sign % 2 == 1 {
                        -1
                    } else {
                        1
                    }
                })
                .sum();
            assert_eq!(g[y as usize], direct);
        }
    }

    #[test]
    fn squared_weights_always_sum_to_n_squared() {
        for mask in 0..256u64 {
            let terms: Vec<u64> = (0..8).filter(|i| mask >> i & 1 == 1).collect();
            let f = DnfFormula::new(3, terms).unwrap();
            let g = walsh_spectrum(&f).unwrap();
            let total: i64 = g.iter().map(|w| w * w).sum();
            assert_eq!(total, 64);
        }
    }
}

//! Bitstring helpers.
//!
//! One convention is used everywhere: qubit (or variable) `i` is bit `i` of a
//! basis index, i.e. the least-significant end. Printed bitstrings put qubit 0
//! rightmost, so a string read as a binary number equals the basis index.

use crate::error::{Error, Result};

/// Render the low `width` bits of `value`, qubit 0 rightmost.
pub fn format_bits(value: u64, width: usize) -> String {
    (0..width)
        .rev()
        .map(|q| if value >> q & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parse a 0/1 string into a basis index. The string length is the width.
pub fn parse_bits(s: &str) -> Result<u64> {
    if s.is_empty() || s.len() > 64 || !s.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(Error::InvalidBitstring {
            input: s.to_string(),
        });
    }
    Ok(u64::from_str_radix(s, 2).expect("validated binary digits"))
}

/// Insert `bit` at position `pos`, shifting higher bits up.
pub fn insert_bit(value: u64, pos: usize, bit: bool) -> u64 {
    let low = value & ((1 << pos) - 1);
    let high = value >> pos;
    (high << (pos + 1)) | ((bit as u64) << pos) | low
}

/// Delete the bit at position `pos`, shifting higher bits down.
pub fn remove_bit(value: u64, pos: usize) -> u64 {
    let low = value & ((1 << pos) - 1);
    (value >> (pos + 1) << pos) | low
}

/// Inner product of two bit vectors over GF(2).
pub fn dot_mod2(a: u64, b: u64) -> u64 {
    ((a & b).count_ones() & 1) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_puts_qubit_zero_rightmost() {
        assert_eq!(format_bits(0b110, 3), "110");
        assert_eq!(format_bits(1, 3), "001");
        assert_eq!(format_bits(0, 2), "00");
    }

    #[test]
    fn parse_is_the_inverse_of_format() {
        for v in 0..16u64 {
            assert_eq!(parse_bits(&format_bits(v, 4)).unwrap(), v);
        }
        assert!(parse_bits("10x1").is_err());
        assert!(parse_bits("").is_err());
    }

    #[test]
    fn insert_and_remove_are_inverse() {
        assert_eq!(insert_bit(0b11, 0, false), 0b110);
        assert_eq!(insert_bit(0b11, 1, false), 0b101);
        assert_eq!(insert_bit(0b11, 2, true), 0b111);
        for v in 0..8u64 {
            for pos in 0..4 {
                for bit in [false, true] {
                    assert_eq!(remove_bit(insert_bit(v, pos, bit), pos), v);
                }
            }
        }
    }

    #[test]
    fn dot_mod2_examples() {
        assert_eq!(dot_mod2(0b101, 0b100), 1);
        assert_eq!(dot_mod2(0b101, 0b101), 0);
        assert_eq!(dot_mod2(0, 0b111), 0);
    }
}

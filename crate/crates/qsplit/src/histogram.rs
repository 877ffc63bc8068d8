//! Measured bitstring counts and their CSV/JSON export.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bits::{format_bits, parse_bits};
use crate::circuit::MAX_WIDTH;
use crate::error::{Error, Result};

/// A map from measured bitstring to count. Keys always have exactly `width`
/// characters and the counts sum to `shots`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotHistogram {
    width: usize,
    shots: u64,
    counts: BTreeMap<String, u64>,
}

impl ShotHistogram {
    pub fn new(width: usize) -> Result<ShotHistogram> {
        if width == 0 {
            return Err(Error::ZeroWidth);
        }
        if width > MAX_WIDTH {
            return Err(Error::WidthTooLarge {
                width,
                max: MAX_WIDTH,
            });
        }
        Ok(ShotHistogram {
            width,
            shots: 0,
            counts: BTreeMap::new(),
        })
    }

    /// Build from a dense per-index count vector of length 2^width.
    pub fn from_index_counts(width: usize, counts: &[u64]) -> Result<ShotHistogram> {
        let mut h = ShotHistogram::new(width)?;
        if counts.len() != 1 << width {
            return Err(Error::WidthMismatch {
                expected: 1 << width,
                got: counts.len(),
            });
        }
        for (idx, &c) in counts.iter().enumerate() {
            if c > 0 {
                h.record_index(idx as u64, c)?;
            }
        }
        Ok(h)
    }

    pub fn record_index(&mut self, index: u64, count: u64) -> Result<()> {
        if index >= 1 << self.width {
            return Err(Error::QubitOutOfRange {
                index: index as usize,
                width: 1 << self.width,
            });
        }
        *self
            .counts
            .entry(format_bits(index, self.width))
            .or_insert(0) += count;
        self.shots += count;
        Ok(())
    }

    pub fn record_bits(&mut self, bits: &str, count: u64) -> Result<()> {
        if bits.len() != self.width {
            return Err(Error::InvalidBitstring {
                input: bits.to_string(),
            });
        }
        self.record_index(parse_bits(bits)?, count)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn counts(&self) -> &BTreeMap<String, u64> {
        &self.counts
    }

    pub fn count_of(&self, bits: &str) -> u64 {
        self.counts.get(bits).copied().unwrap_or(0)
    }

    pub fn fraction(&self, bits: &str) -> f64 {
        if self.shots == 0 {
            0.0
        } else {
            self.count_of(bits) as f64 / self.shots as f64
        }
    }

    /// Most frequent bitstring; ties go to the lexicographically smallest.
    pub fn modal(&self) -> Option<(&str, u64)> {
        let mut best: Option<(&str, u64)> = None;
        for (k, &v) in &self.counts {
            if best.map_or(true, |(_, bv)| v > bv) {
                best = Some((k, v));
            }
        }
        best
    }

    /// Shot counts bucketed by Hamming distance from `target`; index d of the
    /// result is the number of shots at distance d, for d in 0..=width.
    pub fn distance_counts(&self, target: &str) -> Result<Vec<u64>> {
        if target.len() != self.width {
            return Err(Error::InvalidBitstring {
                input: target.to_string(),
            });
        }
        let t = parse_bits(target)?;
        let mut bins = vec![0u64; self.width + 1];
        for (k, &v) in &self.counts {
            let d = (parse_bits(k)? ^ t).count_ones() as usize;
            bins[d] += v;
        }
        Ok(bins)
    }

    /// CSV export: `bitstring,count,fraction`, sorted by bitstring. Fractions
    /// use the shortest round-trip float form, so the parsed column sums back
    /// to 1 up to f64 addition error.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bitstring,count,fraction\n");
        for (k, &v) in &self.counts {
            out.push_str(&format!("{},{},{}\n", k, v, self.fraction(k)));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<ShotHistogram> {
        let h: ShotHistogram = serde_json::from_str(text)?;
        if h.counts.values().sum::<u64>() != h.shots {
            return Err(Error::Config {
                msg: "histogram counts do not sum to shots".to_string(),
            });
        }
        for k in h.counts.keys() {
            if k.len() != h.width {
                return Err(Error::InvalidBitstring { input: k.clone() });
            }
            parse_bits(k)?;
        }
        Ok(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_sum_to_shots() {
        let mut h = ShotHistogram::new(3).unwrap();
        h.record_bits("101", 5).unwrap();
        h.record_bits("010", 2).unwrap();
        h.record_index(5, 1).unwrap();
        assert_eq!(h.shots(), 8);
        assert_eq!(h.count_of("101"), 6);
        assert_eq!(h.counts().values().sum::<u64>(), h.shots());
    }

    #[test]
    fn keys_have_exactly_width_bits() {
        let mut h = ShotHistogram::new(3).unwrap();
        assert!(h.record_bits("0101", 1).is_err());
        assert!(h.record_index(8, 1).is_err());
        h.record_index(1, 1).unwrap();
        assert_eq!(h.counts().keys().next().unwrap(), "001");
    }

    #[test]
    fn modal_breaks_ties_lexicographically() {
        let mut h = ShotHistogram::new(2).unwrap();
        h.record_bits("10", 4).unwrap();
        h.record_bits("01", 4).unwrap();
        h.record_bits("11", 1).unwrap();
        assert_eq!(h.modal().unwrap(), ("01", 4));
    }

    #[test]
    fn distance_counts_bucket_by_hamming_distance() {
        let mut h = ShotHistogram::new(3).unwrap();
        h.record_bits("111", 4).unwrap();
        h.record_bits("110", 2).unwrap();
        h.record_bits("000", 1).unwrap();
        assert_eq!(h.distance_counts("111").unwrap(), vec![4, 2, 0, 1]);
    }

    #[test]
    fn csv_is_sorted_and_fractions_sum_to_one() {
        let mut h = ShotHistogram::new(2).unwrap();
        h.record_bits("11", 3).unwrap();
        h.record_bits("00", 1).unwrap();
        h.record_bits("10", 4).unwrap();
        let csv = h.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "bitstring,count,fraction");
        assert_eq!(lines[1].split(',').next().unwrap(), "00");
        assert_eq!(lines[2].split(',').next().unwrap(), "10");
        let total: f64 = lines[1..]
            .iter()
            .map(|l| l.split(',').nth(2).unwrap().parse::<f64>().unwrap())
            .sum();
        assert!((total - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn json_round_trips() {
        let mut h = ShotHistogram::new(2).unwrap();
        h.record_bits("01", 7).unwrap();
        h.record_bits("11", 3).unwrap();
        let json = h.to_json().unwrap();
        assert_eq!(ShotHistogram::from_json(&json).unwrap(), h);
    }
}

use std::fmt;

use crate::error::{Error, Result};
use crate::ff::Prime;

/// A state vector in `F_p^n`. Cell 0 is the leftmost cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration(Vec<u32>);

impl Configuration {
    pub fn new(p: Prime, cells: Vec<u32>) -> Result<Self> {
        for &c in &cells {
            p.check_digit(c)?;
        }
        Ok(Configuration(cells))
    }

    pub(crate) fn from_reduced(cells: Vec<u32>) -> Self {
        Configuration(cells)
    }

    pub fn zero(n: usize) -> Self {
        Configuration(vec![0; n])
    }

    /// `e_0 = (1, 0, ..., 0)`.
    pub fn unit(n: usize) -> Self {
        let mut c = vec![0; n];
        if n > 0 {
            c[0] = 1;
        }
        Configuration(c)
    }

    /// Digit string, leftmost cell first (`1100`), or comma-separated digits (`12,0,3`).
    pub fn parse(s: &str, p: Prime) -> Result<Self> {
        let s = s.trim();
        let cells = if s.contains(',') {
            s.split(',')
                .map(|d| {
                    d.trim()
                        .parse::<u32>()
                        .map_err(|e| Error::parse(format!("bad cell {d:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|ch| {
                    ch.to_digit(10)
                        .ok_or_else(|| Error::parse(format!("bad cell {ch:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        if cells.is_empty() {
            return Err(Error::parse("empty configuration"));
        }
        Self::new(p, cells)
    }

    pub fn cells(&self) -> &[u32] {
        &self.0
    }

    pub fn into_cells(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// `Σ cell_i · p^i`, a bijection `F_p^n → [0, p^n)`.
    pub fn to_index(&self, p: Prime) -> Option<u64> {
        self.0
            .iter()
            .rev()
            .try_fold(0u64, |acc, &d| acc.checked_mul(p.as_u64())?.checked_add(d as u64))
    }

    pub fn from_index(p: Prime, n: usize, mut idx: u64) -> Self {
        let q = p.as_u64();
        Configuration(
            (0..n)
                .map(|_| {
                    let d = (idx % q) as u32;
                    idx /= q;
                    d
                })
                .collect(),
        )
    }

    /// Whether the cells at `coords` equal `x`.
    pub fn matches_at(&self, coords: &[usize], x: &[u32]) -> bool {
        coords.iter().zip(x).all(|(&i, &v)| self.0[i] == v)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&c| c < 10) {
            for c in &self.0 {
                write!(f, "{c}")?;
            }
        } else {
            for (i, c) in self.0.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p2 = Prime::new(2).unwrap();
        let c = Configuration::parse("1100", p2).unwrap();
        assert_eq!(c.cells(), &[1, 1, 0, 0]);
        assert_eq!(c.to_string(), "1100");
        assert!(Configuration::parse("1120", p2).is_err());
        assert!(Configuration::parse("11a0", p2).is_err());
        assert!(Configuration::parse("", p2).is_err());

        let p13 = Prime::new(13).unwrap();
        let d = Configuration::parse("12,0,3", p13).unwrap();
        assert_eq!(d.to_string(), "12,0,3");
        assert_eq!(Configuration::parse(&d.to_string(), p13).unwrap(), d);
    }

    #[test]
    fn index_round_trip() {
        let p3 = Prime::new(3).unwrap();
        for idx in 0..81 {
            assert_eq!(Configuration::from_index(p3, 4, idx).to_index(p3), Some(idx));
        }
    }
}

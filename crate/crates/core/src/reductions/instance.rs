use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lchca::{Configuration, Lchca};

/// Find `τ` with `t = M^τ s`.
#[derive(Clone, Debug)]
pub struct DdpInstance {
    pub ca: Lchca,
    pub s: Configuration,
    pub t: Configuration,
}

impl DdpInstance {
    pub fn new(ca: Lchca, s: Configuration, t: Configuration) -> Result<Self> {
        if s.len() != ca.n() || t.len() != ca.n() {
            return Err(Error::Dimension(format!(
                "configurations of length {} and {} for a CA with {} cells",
                s.len(),
                t.len(),
                ca.n()
            )));
        }
        if s.is_zero() {
            return Err(Error::domain("DDP start configuration must be nonzero"));
        }
        Ok(DdpInstance { ca, s, t })
    }
}

/// A discrete distance, or `Unreachable` when `t` is not on the orbit of `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DdpSolution {
    Distance(u64),
    Unreachable,
}

impl DdpSolution {
    pub fn distance(self) -> Option<u64> {
        match self {
            DdpSolution::Distance(t) => Some(t),
            DdpSolution::Unreachable => None,
        }
    }
}

impl fmt::Display for DdpSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DdpSolution::Distance(t) => write!(f, "{t}"),
            DdpSolution::Unreachable => f.write_str("unreachable"),
        }
    }
}

impl FromStr for DdpSolution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "unreachable" {
            return Ok(DdpSolution::Unreachable);
        }
        s.parse()
            .map(DdpSolution::Distance)
            .map_err(|_| Error::parse(format!("expected a decimal distance or `unreachable`, got {s:?}")))
    }
}

/// Find `τ < delta` such that `M^τ s` holds `x` at `coords`.
#[derive(Clone, Debug)]
pub struct SddpInstance {
    pub ca: Lchca,
    pub s: Configuration,
    pub x: Vec<u32>,
    pub coords: Vec<usize>,
    pub delta: u64,
}

impl SddpInstance {
    /// `coords = None` fixes the first `x.len()` cells.
    pub fn new(ca: Lchca, s: Configuration, x: Vec<u32>, coords: Option<Vec<usize>>, delta: u64) -> Result<Self> {
        let n = ca.n();
        if s.len() != n {
            return Err(Error::Dimension(format!(
                "configuration has {} cells, CA has {n}",
                s.len()
            )));
        }
        if s.is_zero() {
            return Err(Error::domain("SDDP start configuration must be nonzero"));
        }
        if x.len() >= n {
            return Err(Error::domain(format!("need k < n, got k = {} with n = {n}", x.len())));
        }
        for &d in &x {
            ca.p().check_digit(d)?;
        }
        let coords = coords.unwrap_or_else(|| (0..x.len()).collect());
        if coords.len() != x.len() {
            return Err(Error::Dimension(format!(
                "{} coordinates for {} target digits",
                coords.len(),
                x.len()
            )));
        }
        let mut seen = vec![false; n];
        for &c in &coords {
            if c >= n || std::mem::replace(&mut seen[c], true) {
                return Err(Error::domain(format!("coordinate {c} is out of range or repeated")));
            }
        }
        if delta == 0 {
            return Err(Error::domain("delta must be at least 1"));
        }
        Ok(SddpInstance {
            ca,
            s,
            x,
            coords,
            delta,
        })
    }

    pub fn k(&self) -> usize {
        self.x.len()
    }
}

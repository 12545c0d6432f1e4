use super::{Configuration, Lchca};
use crate::error::{Error, Result};

/// Largest state space walked exhaustively.
pub const MAX_ENUMERATION: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    /// Smallest-index configuration on the cycle.
    pub representative: Configuration,
    pub length: u64,
}

fn state_count(ca: &Lchca) -> Result<u64> {
    (ca.p().as_u64())
        .checked_pow(ca.n() as u32)
        .filter(|&q| q <= MAX_ENUMERATION)
        .ok_or_else(|| {
            Error::capacity(format!(
                "{}^{} states exceed the enumeration limit {MAX_ENUMERATION}",
                ca.p(),
                ca.n()
            ))
        })
}

struct Visited(Vec<u64>);

impl Visited {
    fn new(len: u64) -> Self {
        Visited(vec![0; len.div_ceil(64) as usize])
    }

    /// Marks `i`, returning whether it was already set.
    fn mark(&mut self, i: u64) -> bool {
        let (w, b) = ((i / 64) as usize, i % 64);
        let was = self.0[w] >> b & 1 == 1;
        self.0[w] |= 1 << b;
        was
    }

    fn get(&self, i: u64) -> bool {
        self.0[(i / 64) as usize] >> (i % 64) & 1 == 1
    }
}

/// Partitions `F_p^n \ {0}` into orbits of `M` by walking every state.
pub fn enumerate_cycles(ca: &Lchca) -> Result<Vec<Cycle>> {
    ca.require_hybrid("enumerate_cycles")?;
    let q = state_count(ca)?;
    let (p, n) = (ca.p(), ca.n());
    let mut seen = Visited::new(q);
    let mut cycles = Vec::new();
    let mut cur = vec![0u32; n];
    let mut next = vec![0u32; n];
    for start in 1..q {
        if seen.get(start) {
            continue;
        }
        let rep = Configuration::from_index(p, n, start);
        cur.copy_from_slice(rep.cells());
        let mut length = 0u64;
        loop {
            let idx = Configuration::from_reduced(cur.clone()).to_index(p).expect("bounded");
            if seen.mark(idx) {
                return Err(Error::unsupported("transition is not a permutation of the state space"));
            }
            ca.step_into(&cur, &mut next);
            std::mem::swap(&mut cur, &mut next);
            length += 1;
            if cur == rep.cells() {
                break;
            }
        }
        cycles.push(Cycle {
            representative: rep,
            length,
        });
    }
    Ok(cycles)
}

/// Whether `s ↦ M^τ s` hits every configuration exactly once, by exhaustive enumeration.
pub fn is_bijection_at(ca: &Lchca, tau: u64) -> Result<bool> {
    let q = state_count(ca)?;
    let (p, n) = (ca.p(), ca.n());
    let m = ca.matrix().pow(tau)?;
    let mut seen = Visited::new(q);
    for idx in 0..q {
        let s = Configuration::from_index(p, n, idx);
        let t = Configuration::from_reduced(m.mul_vec(s.cells())?);
        if seen.mark(t.to_index(p).expect("bounded")) {
            return Ok(false);
        }
    }
    Ok(true)
}

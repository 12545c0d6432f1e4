//! Proof of work from the short discrete-distance problem.
//!
//! A message fixes, through SHA-256, a start configuration `s ≠ 0` and a
//! target prefix `x` of length `k`. The prover scans `M^τ s` for
//! `τ = 0, 1, ...` until the first `k` cells read `x`; the verifier checks a
//! claimed `τ < delta` with one matrix power. `M` is the companion matrix of
//! the primitive polynomial `f`.

mod challenge;
mod derive;

pub use challenge::{ChallengeFile, PowChallenge};
pub use derive::{derive_s, derive_x, DigitStream, LABEL_S, LABEL_S_RETRY, LABEL_X};

use std::fmt;

use crate::error::{Error, Result};
use crate::ff::{is_primitive, Polynomial, Prime};
use crate::lchca::Lchca;
use crate::matfp::MatrixFp;
use crate::reductions::{solve_sddp, solve_sddp_parallel, ScanOutcome, SddpInstance};

/// Largest supported prime: digits are drawn one hash byte at a time.
pub const MAX_PRIME: u32 = 251;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowParams {
    f: Polynomial,
    k: usize,
    delta: u64,
}

impl PowParams {
    /// Requires `f` primitive with `p ≤ 251`, `k < n` and `1 ≤ delta ≤ p^n - 1`.
    pub fn new(f: Polynomial, k: usize, delta: u64) -> Result<Self> {
        let p = f.modulus().get();
        if p > MAX_PRIME {
            return Err(Error::domain(format!("proof of work needs p <= {MAX_PRIME}, got {p}")));
        }
        let n = match f.degree() {
            Some(n) if n >= 2 && f.is_monic() => n,
            _ => return Err(Error::domain(format!("{f} is not a monic polynomial of degree >= 2"))),
        };
        if !is_primitive(&f)? {
            return Err(Error::domain(format!("{f} is not primitive")));
        }
        if k >= n {
            return Err(Error::domain(format!("difficulty k = {k} must be below n = {n}")));
        }
        let order = crate::ff::factor::group_order(p as u64, n)?;
        if delta == 0 || delta > order {
            return Err(Error::domain(format!("delta must lie in [1, {order}], got {delta}")));
        }
        Ok(PowParams { f, k, delta })
    }

    /// `delta = 8·p^k`, capped at `p^n - 1`.
    pub fn recommended(f: Polynomial, k: usize) -> Result<Self> {
        let p = f.modulus().as_u64();
        let n = f.degree().unwrap_or(0);
        let cap = crate::ff::factor::group_order(p, n.max(1)).unwrap_or(u64::MAX);
        let delta = u32::try_from(k)
            .ok()
            .and_then(|k| p.checked_pow(k))
            .and_then(|pk| pk.checked_mul(8))
            .unwrap_or(u64::MAX)
            .min(cap);
        Self::new(f, k, delta)
    }

    pub fn p(&self) -> Prime {
        self.f.modulus()
    }

    pub fn n(&self) -> usize {
        self.f.degree().expect("validated")
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn matrix(&self) -> MatrixFp {
        MatrixFp::companion(&self.f).expect("validated modulus")
    }
}

pub fn make_challenge(message: &[u8], params: &PowParams) -> PowChallenge {
    PowChallenge::from_digest(derive::digest(message), params.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PowSolution {
    pub tau: u64,
}

impl fmt::Display for PowSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tau)
    }
}

impl std::str::FromStr for PowSolution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .parse()
            .map(|tau| PowSolution { tau })
            .map_err(|_| Error::parse(format!("expected a decimal witness, got {:?}", s.trim())))
    }
}

fn sddp(ch: &PowChallenge) -> Result<SddpInstance> {
    let ca = Lchca::from_matrix(ch.params.matrix())?;
    SddpInstance::new(ca, ch.s.clone(), ch.x.clone(), None, ch.params.delta)
}

/// Scans for the least witness, also reporting how many configurations were inspected.
pub fn prove_counted(ch: &PowChallenge) -> Result<ScanOutcome> {
    Ok(solve_sddp(&sddp(ch)?))
}

/// Least `τ < delta` with `prefix(M^τ s, k) = x`; `None` if the bound runs out.
pub fn prove(ch: &PowChallenge) -> Result<Option<PowSolution>> {
    Ok(prove_counted(ch)?.tau.map(|tau| PowSolution { tau }))
}

/// [`prove`] with the scan split over `jobs` threads; same answer.
pub fn prove_parallel(ch: &PowChallenge, jobs: usize) -> Result<Option<PowSolution>> {
    Ok(solve_sddp_parallel(&sddp(ch)?, jobs)?.map(|tau| PowSolution { tau }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RejectReason {
    BoundExceeded,
    PrefixMismatch,
    /// The challenge is inconsistent with its own digest and parameters.
    Malformed,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RejectReason::BoundExceeded => "bound-exceeded",
            RejectReason::PrefixMismatch => "prefix-mismatch",
            RejectReason::Malformed => "malformed",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(RejectReason),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept => f.write_str("accept"),
            Verdict::Reject(r) => write!(f, "reject: {r}"),
        }
    }
}

/// [`verify`] plus the number of matrix products it spent.
pub fn verify_counted(ch: &PowChallenge, sol: &PowSolution) -> (Verdict, usize) {
    if !ch.is_well_formed() {
        return (Verdict::Reject(RejectReason::Malformed), 0);
    }
    if sol.tau >= ch.params.delta {
        return (Verdict::Reject(RejectReason::BoundExceeded), 0);
    }
    let (power, products) = ch.params.matrix().pow_counted(sol.tau).expect("square matrix");
    let t = power.mul_vec(ch.s.cells()).expect("matching length");
    let verdict = if t[..ch.params.k] == ch.x[..] {
        Verdict::Accept
    } else {
        Verdict::Reject(RejectReason::PrefixMismatch)
    };
    (verdict, products)
}

/// Accepts iff `τ < delta` and `prefix(M^τ s, k) = x`; never scans.
pub fn verify(ch: &PowChallenge, sol: &PowSolution) -> Verdict {
    verify_counted(ch, sol).0
}

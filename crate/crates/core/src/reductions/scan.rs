use std::sync::atomic::{AtomicU64, Ordering};

use super::SddpInstance;
use crate::error::Result;
use crate::lchca::{Configuration, Lchca};
use crate::matfp::PowerTable;

/// Result of a sequential scan, with the number of configurations inspected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanOutcome {
    pub tau: Option<u64>,
    /// `min(τ + 1, delta)`: one per configuration compared against the target.
    pub examined: u64,
}

fn matches(cells: &[u32], coords: &[usize], x: &[u32]) -> bool {
    coords.iter().zip(x).all(|(&c, &d)| cells[c] == d)
}

fn scan_range(ca: &Lchca, start: Vec<u32>, lo: u64, hi: u64, coords: &[usize], x: &[u32]) -> ScanOutcome {
    let mut cur = start;
    let mut next = vec![0; cur.len()];
    for tau in lo..hi {
        if matches(&cur, coords, x) {
            return ScanOutcome {
                tau: Some(tau),
                examined: tau - lo + 1,
            };
        }
        if tau + 1 < hi {
            ca.step_into(&cur, &mut next);
            std::mem::swap(&mut cur, &mut next);
        }
    }
    ScanOutcome {
        tau: None,
        examined: hi - lo,
    }
}

/// Least `τ < delta` whose configuration carries `x` at `coords`, scanning one step at a time.
pub fn solve_sddp(inst: &SddpInstance) -> ScanOutcome {
    scan_range(&inst.ca, inst.s.cells().to_vec(), 0, inst.delta, &inst.coords, &inst.x)
}

/// Least `τ` below the order of `M` matching `x` at `coords` (`None` for the
/// first `x.len()` cells); `None` if the orbit never does.
pub fn solve_fdp(ca: &Lchca, s: &Configuration, x: &[u32], coords: Option<&[usize]>) -> Result<Option<u64>> {
    let inst = super::SddpInstance::new(
        ca.clone(),
        s.clone(),
        x.to_vec(),
        coords.map(<[usize]>::to_vec),
        ca.order()?,
    )?;
    Ok(solve_sddp(&inst).tau)
}

const BLOCK: u64 = 1 << 14;

/// [`solve_sddp`] split over `jobs` threads.
///
/// Workers claim blocks of `τ` in increasing order, jump to each block's
/// start with precomputed squares of `M`, and stop claiming once a block
/// begins past the best hit published so far. The answer equals the
/// sequential one.
pub fn solve_sddp_parallel(inst: &SddpInstance, jobs: usize) -> Result<Option<u64>> {
    if jobs <= 1 || inst.delta <= BLOCK {
        return Ok(solve_sddp(inst).tau);
    }
    let table = PowerTable::new(inst.ca.matrix(), 64 - inst.delta.leading_zeros())?;
    let next_block = AtomicU64::new(0);
    let found = AtomicU64::new(u64::MAX);
    let worker = || -> Result<()> {
        loop {
            let lo = next_block.fetch_add(1, Ordering::Relaxed).saturating_mul(BLOCK);
            if lo >= inst.delta || lo >= found.load(Ordering::Acquire) {
                return Ok(());
            }
            let hi = (lo + BLOCK).min(inst.delta);
            let start = table.apply(lo, inst.s.cells())?;
            if let Some(tau) = scan_range(&inst.ca, start, lo, hi, &inst.coords, &inst.x).tau {
                found.fetch_min(tau, Ordering::AcqRel);
            }
        }
    };
    let results: Vec<Result<()>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs).map(|_| scope.spawn(worker)).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scan worker panicked"))
            .collect()
    });
    results.into_iter().collect::<Result<()>>()?;
    let tau = found.into_inner();
    Ok((tau != u64::MAX).then_some(tau))
}

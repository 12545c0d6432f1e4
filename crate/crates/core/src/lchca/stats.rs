//! Empirical uniformity and pairwise independence of `M^τ s` over random `τ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Configuration, Lchca};
use crate::error::{Error, Result};
use crate::matfp::PowerTable;

/// Joint tables are kept for every pair while they fit in this many counters,
/// otherwise only for adjacent cells.
const ALL_PAIRS_LIMIT: usize = 1 << 22;

/// Per-cell digit tallies and per-pair joint tallies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformityReport {
    pub p: u32,
    pub n: usize,
    pub samples: u64,
    /// The fixed nonzero starting configuration.
    pub start: Configuration,
    /// `cell_counts[i][a]`: samples where cell `i` held digit `a`.
    pub cell_counts: Vec<Vec<u64>>,
    /// Tallied cell pairs `(i, j)` with `i < j`.
    pub pairs: Vec<(usize, usize)>,
    /// `pair_counts[k][a·p + b]`: samples where `pairs[k]` held `(a, b)`.
    pub pair_counts: Vec<Vec<u64>>,
}

impl UniformityReport {
    fn empty(p: u32, n: usize, start: Configuration) -> Self {
        let q = p as usize;
        let pairs: Vec<(usize, usize)> = if n * n.saturating_sub(1) / 2 * q * q <= ALL_PAIRS_LIMIT {
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
        } else {
            (1..n).map(|j| (j - 1, j)).collect()
        };
        UniformityReport {
            p,
            n,
            samples: 0,
            start,
            cell_counts: vec![vec![0; q]; n],
            pair_counts: vec![vec![0; q * q]; pairs.len()],
            pairs,
        }
    }

    fn record(&mut self, cells: &[u32]) {
        self.samples += 1;
        for (i, &c) in cells.iter().enumerate() {
            self.cell_counts[i][c as usize] += 1;
        }
        let q = self.p as usize;
        for (k, &(i, j)) in self.pairs.iter().enumerate() {
            self.pair_counts[k][cells[i] as usize * q + cells[j] as usize] += 1;
        }
    }

    /// Adds another report's tallies; both must share `p`, `n` and `start`.
    pub fn merge(&mut self, other: &UniformityReport) {
        assert_eq!((self.p, self.n), (other.p, other.n));
        assert_eq!(self.pairs, other.pairs);
        self.samples += other.samples;
        for (a, b) in self.cell_counts.iter_mut().zip(&other.cell_counts) {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        }
        for (a, b) in self.pair_counts.iter_mut().zip(&other.pair_counts) {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        }
    }

    pub fn cell_frequency(&self, cell: usize, digit: u32) -> f64 {
        if self.samples == 0 {
            return 0.0;
        }
        self.cell_counts[cell][digit as usize] as f64 / self.samples as f64
    }

    /// Largest `|P(cell = a) - 1/p|` over all cells and digits.
    pub fn max_cell_deviation(&self) -> f64 {
        let expect = 1.0 / self.p as f64;
        (0..self.n)
            .flat_map(|i| (0..self.p).map(move |a| (i, a)))
            .map(|(i, a)| (self.cell_frequency(i, a) - expect).abs())
            .fold(0.0, f64::max)
    }

    /// Pearson statistic of each cell against the uniform distribution (`p - 1` dof).
    pub fn cell_chi_square(&self) -> Vec<f64> {
        let expect = self.samples as f64 / self.p as f64;
        self.cell_counts
            .iter()
            .map(|counts| {
                if self.samples == 0 {
                    return 0.0;
                }
                counts.iter().map(|&c| (c as f64 - expect).powi(2) / expect).sum()
            })
            .collect()
    }

    /// `max_{a,b} |P(c_i = a, c_j = b) - P(c_i = a)·P(c_j = b)|` for tallied pair `k`.
    pub fn pair_deviation(&self, k: usize) -> f64 {
        if self.samples == 0 {
            return 0.0;
        }
        let (i, j) = self.pairs[k];
        let q = self.p as usize;
        let total = self.samples as f64;
        let mut worst: f64 = 0.0;
        for a in 0..q {
            for b in 0..q {
                let joint = self.pair_counts[k][a * q + b] as f64 / total;
                let indep = self.cell_frequency(i, a as u32) * self.cell_frequency(j, b as u32);
                worst = worst.max((joint - indep).abs());
            }
        }
        worst
    }

    pub fn max_pair_deviation(&self) -> f64 {
        (0..self.pairs.len())
            .map(|k| self.pair_deviation(k))
            .fold(0.0, f64::max)
    }

    /// Pearson independence statistic for tallied pair `k` (`(p - 1)^2` dof).
    pub fn pair_chi_square(&self, k: usize) -> f64 {
        if self.samples == 0 {
            return 0.0;
        }
        let (i, j) = self.pairs[k];
        let q = self.p as usize;
        let total = self.samples as f64;
        let mut stat = 0.0;
        for a in 0..q {
            for b in 0..q {
                let expect = self.cell_counts[i][a] as f64 * self.cell_counts[j][b] as f64 / total;
                if expect > 0.0 {
                    stat += (self.pair_counts[k][a * q + b] as f64 - expect).powi(2) / expect;
                }
            }
        }
        stat
    }
}

/// Rng for sample `index`: ChaCha keyed by the seed, one stream per sample,
/// so results do not depend on how samples are split between workers.
fn sample_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_nonzero_start(ca: &Lchca, seed: u64) -> Configuration {
    let mut rng = sample_rng(seed, 0);
    loop {
        let cells: Vec<u32> = (0..ca.n()).map(|_| rng.gen_range(0..ca.p().get())).collect();
        if cells.iter().any(|&c| c != 0) {
            return Configuration::from_reduced(cells);
        }
    }
}

pub fn uniformity_report(ca: &Lchca, sample_count: u64, seed: u64) -> Result<UniformityReport> {
    uniformity_report_parallel(ca, sample_count, seed, 1)
}

/// Samples `τ` uniformly from `[0, p^n - 1)` and tallies `M^τ s` for a fixed random `s ≠ 0`.
///
/// Samples are split into `jobs` contiguous shards; the merged result is
/// identical for every `jobs`.
pub fn uniformity_report_parallel(ca: &Lchca, sample_count: u64, seed: u64, jobs: usize) -> Result<UniformityReport> {
    if !ca.class().is_max_length() {
        return Err(Error::unsupported(format!(
            "uniformity report needs a maximum-length CA, got {}",
            ca.class()
        )));
    }
    let order = ca.order()?;
    let start = random_nonzero_start(ca, seed);
    let mut report = UniformityReport::empty(ca.p().get(), ca.n(), start.clone());
    if sample_count == 0 {
        return Ok(report);
    }
    let table = PowerTable::new(ca.matrix(), 64 - order.leading_zeros())?;
    let jobs = jobs.clamp(1, sample_count.min(256) as usize);
    let chunk = sample_count.div_ceil(jobs as u64);

    let run_shard = |lo: u64, hi: u64| -> Result<UniformityReport> {
        let mut part = UniformityReport::empty(ca.p().get(), ca.n(), start.clone());
        for i in lo..hi {
            let tau = sample_rng(seed, i + 1).gen_range(0..order);
            let t = table.apply(tau, start.cells())?;
            part.record(&t);
        }
        Ok(part)
    };

    let shards: Vec<Result<UniformityReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs as u64)
            .map(|w| {
                let lo = (w * chunk).min(sample_count);
                let hi = ((w + 1) * chunk).min(sample_count);
                scope.spawn(move || run_shard(lo, hi))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    for shard in shards {
        report.merge(&shard?);
    }
    Ok(report)
}

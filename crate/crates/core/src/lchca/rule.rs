use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ff::{is_irreducible, is_primitive, Prime};
use crate::matfp::MatrixFp;

/// Local rules of a linear CA: for each cell, a weight per neighbourhood offset.
///
/// Cell `i` becomes `Σ_k weights[i][k] · s[i + k]`. Neighbours that fall off
/// either end read as 0 (null boundary), so those weights simply never appear
/// in the matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSpec {
    pub p: Prime,
    pub n: usize,
    pub neighborhood: BTreeSet<i64>,
    pub weights: Vec<BTreeMap<i64, u32>>,
}

impl RuleSpec {
    /// The same weights for every cell.
    pub fn uniform(p: Prime, n: usize, weights: BTreeMap<i64, u32>) -> Self {
        RuleSpec {
            p,
            n,
            neighborhood: weights.keys().copied().collect(),
            weights: vec![weights; n],
        }
    }

    /// Three-neighbourhood rule with per-cell weights on offsets -1, 0, +1.
    pub fn tridiagonal(p: Prime, left: &[u32], centre: &[u32], right: &[u32]) -> Result<Self> {
        let n = centre.len();
        if left.len() != n || right.len() != n {
            return Err(Error::Dimension("tridiagonal weight vectors differ in length".into()));
        }
        let weights = (0..n)
            .map(|i| BTreeMap::from([(-1, left[i]), (0, centre[i]), (1, right[i])]))
            .collect();
        Ok(RuleSpec {
            p,
            n,
            neighborhood: BTreeSet::from([-1, 0, 1]),
            weights,
        })
    }

    /// Binary 90/150 hybrid: cell `i` uses rule 150 (self-dependent) where `self_loop[i]`.
    pub fn rule_90_150(self_loop: &[bool]) -> Self {
        let n = self_loop.len();
        let centre: Vec<u32> = self_loop.iter().map(|&b| b as u32).collect();
        Self::tridiagonal(Prime::new(2).expect("2 is prime"), &vec![1; n], &centre, &vec![1; n]).expect("equal lengths")
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::domain("a CA needs at least one cell"));
        }
        if self.weights.len() != self.n {
            return Err(Error::Dimension(format!(
                "{} weight maps for {} cells",
                self.weights.len(),
                self.n
            )));
        }
        for (i, w) in self.weights.iter().enumerate() {
            for (&k, &v) in w {
                if !self.neighborhood.contains(&k) {
                    return Err(Error::domain(format!(
                        "cell {i} uses offset {k} outside the neighbourhood {:?}",
                        self.neighborhood
                    )));
                }
                self.p.check_digit(v)?;
            }
        }
        Ok(())
    }

    pub fn build_matrix(&self) -> Result<MatrixFp> {
        self.validate()?;
        let mut m = MatrixFp::zeros(&self.p, self.n, self.n);
        for (i, w) in self.weights.iter().enumerate() {
            for (&k, &v) in w {
                let j = i as i64 + k;
                if (0..self.n as i64).contains(&j) {
                    m.set(i, j as usize, v);
                }
            }
        }
        Ok(m)
    }
}

/// Transition matrix `M[i][i+k] = weight_i(k)`.
pub fn build_matrix(spec: &RuleSpec) -> Result<MatrixFp> {
    spec.build_matrix()
}

/// Seeded search over three-neighbourhood hybrid rules for one whose
/// characteristic polynomial is irreducible (or primitive).
///
/// Over `F_2` only the 90/150 family is tried (unit off-diagonals); otherwise
/// the off-diagonal weights are random nonzero digits.
pub fn find_hybrid_rule(p: Prime, n: usize, want_primitive: bool, seed: u64) -> Result<RuleSpec> {
    if n < 2 {
        return Err(Error::domain(format!("a hybrid CA needs at least 2 cells, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = 64 * n * n + 1024;
    let q = p.get();
    for _ in 0..budget {
        let centre: Vec<u32> = (0..n).map(|_| rng.gen_range(0..q)).collect();
        let (left, right): (Vec<u32>, Vec<u32>) = if q == 2 {
            (vec![1; n], vec![1; n])
        } else {
            (0..n).map(|_| (rng.gen_range(1..q), rng.gen_range(1..q))).unzip()
        };
        let spec = RuleSpec::tridiagonal(p, &left, &centre, &right)?;
        let f = spec.build_matrix()?.char_poly()?;
        if !is_irreducible(&f) {
            continue;
        }
        if !want_primitive || is_primitive(&f)? {
            return Ok(spec);
        }
    }
    Err(Error::capacity(format!(
        "no hybrid rule with the requested property for n = {n} over F_{p} within {budget} candidates"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::Polynomial;

    fn p2() -> Prime {
        Prime::new(2).unwrap()
    }

    #[test]
    fn single_cell() {
        let spec = RuleSpec::uniform(p2(), 1, BTreeMap::from([(0, 1)]));
        assert_eq!(spec.build_matrix().unwrap().to_string(), "2:1x1:1");
    }

    #[test]
    fn rule_90_null_boundary() {
        let m = RuleSpec::rule_90_150(&[false; 4]).build_matrix().unwrap();
        assert_eq!(m.to_string(), "2:4x4:0,1,0,0,1,0,1,0,0,1,0,1,0,0,1,0");
    }

    #[test]
    fn offset_outside_neighbourhood() {
        let mut spec = RuleSpec::rule_90_150(&[false; 4]);
        spec.weights[2].insert(2, 1);
        assert!(matches!(spec.build_matrix(), Err(Error::Domain(_))));
    }

    #[test]
    fn unreduced_weight() {
        let mut spec = RuleSpec::rule_90_150(&[false; 3]);
        spec.weights[0].insert(0, 2);
        assert!(spec.build_matrix().is_err());
    }

    #[test]
    fn hybrid_realising_x4_x_1() {
        // search all 2^4 diagonal patterns of the 90/150 family
        let target: Polynomial = "2:1,1,0,0,1".parse().unwrap();
        let hits: Vec<u32> = (0..16u32)
            .filter(|bits| {
                let diag: Vec<bool> = (0..4).map(|i| bits >> i & 1 == 1).collect();
                RuleSpec::rule_90_150(&diag)
                    .build_matrix()
                    .unwrap()
                    .char_poly()
                    .unwrap()
                    == target
            })
            .collect();
        assert!(!hits.is_empty());
        for bits in hits {
            let diag: Vec<bool> = (0..4).map(|i| bits >> i & 1 == 1).collect();
            let m = RuleSpec::rule_90_150(&diag).build_matrix().unwrap();
            assert_eq!(m.order().unwrap(), 15);
        }
    }

    #[test]
    fn search_is_deterministic() {
        for p in [2u64, 3, 5] {
            let pr = Prime::new(p).unwrap();
            let a = find_hybrid_rule(pr, 5, true, 9).unwrap();
            assert_eq!(a, find_hybrid_rule(pr, 5, true, 9).unwrap());
            assert!(is_primitive(&a.build_matrix().unwrap().char_poly().unwrap()).unwrap());
        }
        assert!(find_hybrid_rule(p2(), 1, false, 0).is_err());
    }
}

//! TOML description of a CA: either a rule (`neighborhood` + per-cell `weights`)
//! or an explicit `matrix`, plus the expected characteristic polynomial.
//!
//! ```toml
//! p = 2
//! n = 4
//! neighborhood = [-1, 0, 1]
//! weights = [[1, 0, 1], [1, 1, 1], [1, 0, 1], [1, 1, 1]]
//! char_poly = "2:1,0,1,0,1"
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Lchca, RuleSpec};
use crate::error::{Error, Result};
use crate::ff::{Polynomial, Prime};
use crate::matfp::MatrixFp;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaSpecFile {
    pub p: u32,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neighborhood: Option<Vec<i64>>,
    /// One row per cell, aligned with the sorted `neighborhood`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Vec<u32>>>,
    /// `p:RxC:d,d,...`, used when no rule is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char_poly: Option<String>,
}

impl CaSpecFile {
    pub fn from_rule(rule: &RuleSpec) -> Result<Self> {
        let ca = Lchca::from_rule(rule)?;
        let neighborhood: Vec<i64> = rule.neighborhood.iter().copied().collect();
        let weights = rule
            .weights
            .iter()
            .map(|w| neighborhood.iter().map(|k| w.get(k).copied().unwrap_or(0)).collect())
            .collect();
        Ok(CaSpecFile {
            p: rule.p.get(),
            n: rule.n,
            neighborhood: Some(neighborhood),
            weights: Some(weights),
            matrix: None,
            char_poly: Some(ca.char_poly().to_string()),
        })
    }

    pub fn from_matrix(m: &MatrixFp) -> Result<Self> {
        Ok(CaSpecFile {
            p: m.prime().get(),
            n: m.rows(),
            neighborhood: None,
            weights: None,
            matrix: Some(m.to_string()),
            char_poly: Some(m.char_poly()?.to_string()),
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::parse(format!("CA spec: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec fields are plain TOML values")
    }

    pub fn rule(&self) -> Result<Option<RuleSpec>> {
        let (Some(nb), Some(weights)) = (&self.neighborhood, &self.weights) else {
            if self.neighborhood.is_some() || self.weights.is_some() {
                return Err(Error::parse("`neighborhood` and `weights` must be given together"));
            }
            return Ok(None);
        };
        let p = Prime::new(self.p as u64)?;
        let neighborhood: BTreeSet<i64> = nb.iter().copied().collect();
        if neighborhood.len() != nb.len() {
            return Err(Error::parse("repeated offset in `neighborhood`"));
        }
        let offsets: Vec<i64> = neighborhood.iter().copied().collect();
        let mut maps = Vec::with_capacity(weights.len());
        for (i, row) in weights.iter().enumerate() {
            if row.len() != offsets.len() {
                return Err(Error::parse(format!(
                    "cell {i} has {} weights for {} offsets",
                    row.len(),
                    offsets.len()
                )));
            }
            let map: BTreeMap<i64, u32> = offsets
                .iter()
                .zip(row)
                .filter(|(_, &w)| w != 0)
                .map(|(&k, &w)| (k, w))
                .collect();
            maps.push(map);
        }
        let rule = RuleSpec {
            p,
            n: self.n,
            neighborhood,
            weights: maps,
        };
        rule.validate()?;
        Ok(Some(rule))
    }

    pub fn transition_matrix(&self) -> Result<MatrixFp> {
        let m = match (self.rule()?, &self.matrix) {
            (Some(_), Some(_)) => return Err(Error::parse("give either a rule or `matrix`, not both")),
            (Some(rule), None) => rule.build_matrix()?,
            (None, Some(text)) => text.parse::<MatrixFp>()?,
            (None, None) => return Err(Error::parse("CA spec needs `neighborhood`/`weights` or `matrix`")),
        };
        if m.prime().get() != self.p || m.rows() != self.n || m.cols() != self.n {
            return Err(Error::parse(format!(
                "matrix is {}x{} over F_{}, spec says n = {} over F_{}",
                m.rows(),
                m.cols(),
                m.prime().get(),
                self.n,
                self.p
            )));
        }
        Ok(m)
    }

    /// Builds the automaton and checks the recorded `char_poly`, if any.
    pub fn build(&self) -> Result<Lchca> {
        let ca = Lchca::from_matrix(self.transition_matrix()?)?;
        if let Some(text) = &self.char_poly {
            let want: Polynomial = text.parse()?;
            if &want != ca.char_poly() {
                return Err(Error::parse(format!(
                    "recorded char_poly {want} but the matrix has {}",
                    ca.char_poly()
                )));
            }
        }
        Ok(ca)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_round_trip() {
        let rule = RuleSpec::rule_90_150(&[false, true, false, true]);
        let spec = CaSpecFile::from_rule(&rule).unwrap();
        let back = CaSpecFile::parse(&spec.to_toml()).unwrap();
        assert_eq!(back, spec);
        assert_eq!(
            back.rule().unwrap().unwrap().build_matrix().unwrap(),
            rule.build_matrix().unwrap()
        );
        back.build().unwrap();
    }

    #[test]
    fn matrix_form() {
        let m = MatrixFp::companion(&"2:1,1,0,0,1".parse().unwrap()).unwrap();
        let spec = CaSpecFile::from_matrix(&m).unwrap();
        let text = spec.to_toml();
        assert!(text.contains("matrix = "));
        let ca = CaSpecFile::parse(&text).unwrap().build().unwrap();
        assert!(ca.class().is_max_length());
    }

    #[test]
    fn char_poly_cross_check() {
        let text = "p = 2\nn = 2\nmatrix = \"2:2x2:1,0,0,1\"\nchar_poly = \"2:1,1,1\"\n";
        assert!(matches!(CaSpecFile::parse(text).unwrap().build(), Err(Error::Parse(_))));
        let ok = "p = 2\nn = 2\nmatrix = \"2:2x2:1,0,0,1\"\nchar_poly = \"2:1,0,1\"\n";
        CaSpecFile::parse(ok).unwrap().build().unwrap();
    }

    #[test]
    fn rejects_bad_specs() {
        for text in [
            "p = 2\nn = 2\n",
            "p = 2\nn = 2\nneighborhood = [0]\n",
            "p = 2\nn = 2\nneighborhood = [0]\nweights = [[1], [2]]\n",
            "p = 2\nn = 2\nneighborhood = [0]\nweights = [[1, 1], [1, 1]]\n",
            "p = 2\nn = 3\nmatrix = \"2:2x2:1,0,0,1\"\n",
            "p = 2\nn = 2\nbogus = 1\n",
        ] {
            let r = CaSpecFile::parse(text).and_then(|s| s.build());
            assert!(r.is_err(), "{text}");
        }
    }
}

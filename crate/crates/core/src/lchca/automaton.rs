use std::fmt;
use std::sync::OnceLock;

use super::{Configuration, RuleSpec};
use crate::error::{Error, Result};
use crate::ff::{is_irreducible, is_primitive, Field as _, Polynomial, Prime};
use crate::matfp::MatrixFp;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    /// Reducible characteristic polynomial.
    Uniform,
    /// Irreducible characteristic polynomial.
    Hybrid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleClass {
    /// Every nonzero configuration lies on one cycle of length `p^n - 1`.
    MaxLength,
    /// Invertible, but cycles are shorter than `p^n - 1`.
    Group,
    /// Singular transition: some configurations are never revisited.
    NonCyclic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub structure: Structure,
    pub cycles: CycleClass,
}

impl Classification {
    pub fn is_hybrid(&self) -> bool {
        self.structure == Structure::Hybrid
    }

    pub fn is_max_length(&self) -> bool {
        self.cycles == CycleClass::MaxLength
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.structure {
            Structure::Uniform => "uniform",
            Structure::Hybrid => "hybrid",
        };
        let c = match self.cycles {
            CycleClass::MaxLength => "max-length",
            CycleClass::Group => "group",
            CycleClass::NonCyclic => "non-cyclic",
        };
        write!(f, "{s} {c}")
    }
}

/// Classifies a transition matrix by its characteristic polynomial.
pub fn classify(m: &MatrixFp) -> Result<Classification> {
    let f = m.char_poly()?;
    classify_by_poly(&f)
}

fn classify_by_poly(f: &Polynomial) -> Result<Classification> {
    if is_irreducible(f) {
        let cycles = if is_primitive(f)? {
            CycleClass::MaxLength
        } else {
            CycleClass::Group
        };
        return Ok(Classification {
            structure: Structure::Hybrid,
            cycles,
        });
    }
    // det(M) = ±f(0); a singular M has a nontrivial kernel and cannot permute states
    let cycles = if f.coeff(0) == 0 {
        CycleClass::NonCyclic
    } else {
        CycleClass::Group
    };
    Ok(Classification {
        structure: Structure::Uniform,
        cycles,
    })
}

/// Result of [`Lchca::cycle_length`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleLength {
    /// The zero configuration, a fixed point of every linear CA.
    Dead,
    Length(u64),
}

/// A linear CA `⟨F_p, n, M⟩` with its characteristic polynomial and class cached.
#[derive(Clone, Debug)]
pub struct Lchca {
    matrix: MatrixFp,
    /// nonzero entries of each row, for O(nnz) steps
    sparse_rows: Vec<Vec<(usize, u32)>>,
    char_poly: Polynomial,
    class: Classification,
    order: OnceLock<Result<u64>>,
}

impl Lchca {
    pub fn from_matrix(matrix: MatrixFp) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::Dimension(format!(
                "transition matrix must be square and nonempty, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let char_poly = matrix.char_poly()?;
        let class = classify_by_poly(&char_poly)?;
        let sparse_rows = (0..matrix.rows())
            .map(|i| {
                matrix
                    .row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(j, &v)| (j, v))
                    .collect()
            })
            .collect();
        Ok(Lchca {
            matrix,
            sparse_rows,
            char_poly,
            class,
            order: OnceLock::new(),
        })
    }

    pub fn from_rule(spec: &RuleSpec) -> Result<Self> {
        Self::from_matrix(spec.build_matrix()?)
    }

    pub fn p(&self) -> Prime {
        self.matrix.prime()
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &MatrixFp {
        &self.matrix
    }

    pub fn char_poly(&self) -> &Polynomial {
        &self.char_poly
    }

    pub fn class(&self) -> Classification {
        self.class
    }

    pub(crate) fn require_hybrid(&self, what: &str) -> Result<()> {
        if self.class.is_hybrid() {
            Ok(())
        } else {
            Err(Error::unsupported(format!(
                "{what} needs a hybrid CA (irreducible characteristic polynomial), got {}",
                self.char_poly
            )))
        }
    }

    /// Multiplicative order of `M`; requires a hybrid CA.
    pub fn order(&self) -> Result<u64> {
        self.order.get_or_init(|| self.matrix.order()).clone()
    }

    fn check_len(&self, s: &Configuration) -> Result<()> {
        if s.len() == self.n() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "configuration has {} cells, CA has {}",
                s.len(),
                self.n()
            )))
        }
    }

    /// `out = M·cells`, touching only nonzero matrix entries.
    pub(crate) fn step_into(&self, cells: &[u32], out: &mut [u32]) {
        let p = self.p();
        for (o, row) in out.iter_mut().zip(&self.sparse_rows) {
            *o = p.dot(row.iter().map(|(j, v)| (v, &cells[*j])));
        }
    }

    /// One transition `M·s`.
    pub fn step(&self, s: &Configuration) -> Result<Configuration> {
        self.check_len(s)?;
        let mut out = vec![0; self.n()];
        self.step_into(s.cells(), &mut out);
        Ok(Configuration::from_reduced(out))
    }

    /// `M^τ·s` via matrix exponentiation.
    pub fn run(&self, s: &Configuration, tau: u64) -> Result<Configuration> {
        self.check_len(s)?;
        if tau == 0 {
            return Ok(s.clone());
        }
        let m = self.matrix.pow(tau)?;
        Ok(Configuration::from_reduced(m.mul_vec(s.cells())?))
    }

    /// Length of the cycle through `s`. For a hybrid CA every nonzero
    /// configuration has the same cycle length, the order of `M`.
    pub fn cycle_length(&self, s: &Configuration) -> Result<CycleLength> {
        self.check_len(s)?;
        self.require_hybrid("cycle_length")?;
        if s.is_zero() {
            return Ok(CycleLength::Dead);
        }
        Ok(CycleLength::Length(self.order()?))
    }
}

//! Dense linear algebra over `F_p` and `F_{p^n}`.
//!
//! Vectors are columns: a configuration `s` advances as `M·s`.

mod matrix;

use std::fmt;
use std::str::FromStr;

pub use matrix::Matrix;

use crate::error::{Error, Result};
use crate::ff::factor;
use crate::ff::{is_irreducible, ExtField, Polynomial, Prime};

pub type MatrixFp = Matrix<Prime>;
pub type MatrixExt = Matrix<ExtField>;

impl Matrix<Prime> {
    pub fn prime(&self) -> Prime {
        *self.field()
    }

    /// Builds from row-major digits, rejecting unreduced ones.
    pub fn from_digits(p: Prime, rows: usize, cols: usize, digits: Vec<u32>) -> Result<Self> {
        for &d in &digits {
            p.check_digit(d)?;
        }
        Matrix::from_vec(&p, rows, cols, digits)
    }

    /// Square matrix from nested rows of reduced digits.
    pub fn from_rows(p: Prime, rows: &[Vec<u32>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::from_digits(p, r, c, rows.concat())
    }

    /// Companion matrix of monic `f`: multiplication by `x` in the basis `1, x, ..., x^{n-1}`.
    ///
    /// Column `j < n-1` is `e_{j+1}`; the last column holds `-f_0, ..., -f_{n-1}`.
    pub fn companion(f: &Polynomial) -> Result<Self> {
        let n = match f.degree() {
            Some(n) if n >= 1 && f.is_monic() => n,
            _ => {
                return Err(Error::domain(format!(
                    "companion matrix needs a monic non-constant polynomial, got {f}"
                )))
            }
        };
        let p = f.modulus();
        let mut m = Matrix::zeros(&p, n, n);
        for i in 1..n {
            m.set(i, i - 1, 1);
        }
        for i in 0..n {
            m.set(i, n - 1, p.neg_digit(f.coeff(i)));
        }
        Ok(m)
    }

    /// `det(xI - M)`, always monic of degree n.
    pub fn char_poly(&self) -> Result<Polynomial> {
        Ok(Polynomial::from_reduced(self.prime(), self.char_poly_coeffs()?))
    }

    /// `g(M)` by Horner's rule.
    pub fn eval_poly(&self, g: &Polynomial) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("eval_poly needs a square matrix".into()));
        }
        let p = self.prime();
        let n = self.rows();
        let mut acc = Matrix::zeros(&p, n, n);
        for &c in g.coeffs().iter().rev() {
            acc = acc.mul(self)?;
            for i in 0..n {
                let v = p.add_digits(*acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }

    /// Least `d >= 1` with `M^d = I`, for matrices whose characteristic polynomial is irreducible.
    pub fn order(&self) -> Result<u64> {
        let f = self.char_poly()?;
        if !is_irreducible(&f) {
            return Err(Error::unsupported(format!(
                "matrix order needs an irreducible characteristic polynomial, got {f}"
            )));
        }
        let n = self.rows();
        let mut ord = factor::group_order(self.prime().as_u64(), n)?;
        for (q, e) in factor::factorize(ord, &factor::FactorConfig::default())? {
            for _ in 0..e {
                if self.pow(ord / q)?.is_identity() {
                    ord /= q;
                } else {
                    break;
                }
            }
        }
        Ok(ord)
    }

    /// Embeds into matrices over an extension of the same prime field.
    pub fn lift(&self, field: &ExtField) -> Result<MatrixExt> {
        if field.characteristic() != self.prime() {
            return Err(Error::domain("extension field has a different characteristic"));
        }
        Ok(self.map(field, |&d| field.constant(d)))
    }
}

/// Serialises as `p:RxC:d,d,...` (row-major).
impl fmt::Display for Matrix<Prime> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}x{}:", self.prime(), self.rows(), self.cols())?;
        for (i, d) in self.entries().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for Matrix<Prime> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.trim().splitn(3, ':');
        let (Some(p), Some(dims), Some(body)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::parse(format!("expected `p:RxC:digits`, got {s:?}")));
        };
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|e| Error::parse(format!("bad prime {p:?}: {e}")))?;
        let p = Prime::new(p).map_err(|e| Error::parse(e.to_string()))?;
        let (r, c) = dims
            .split_once('x')
            .ok_or_else(|| Error::parse(format!("bad dimensions {dims:?}")))?;
        let parse_dim = |d: &str| {
            d.trim()
                .parse::<usize>()
                .map_err(|e| Error::parse(format!("bad dimension {d:?}: {e}")))
        };
        let (r, c) = (parse_dim(r)?, parse_dim(c)?);
        let digits = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|d| {
                    d.trim()
                        .parse::<u32>()
                        .map_err(|e| Error::parse(format!("bad digit {d:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        MatrixFp::from_digits(p, r, c, digits).map_err(|e| Error::parse(e.to_string()))
    }
}

/// Standard matrix product.
pub fn mat_mul<F: crate::ff::Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Matrix<F>> {
    a.mul(b)
}

/// `M^e` by square-and-multiply; `M^0 = I`.
pub fn mat_pow<F: crate::ff::Field>(m: &Matrix<F>, e: u64) -> Result<Matrix<F>> {
    m.pow(e)
}

pub fn gauss_solve<F: crate::ff::Field>(a: &Matrix<F>, b: &[F::Elem]) -> Result<Vec<F::Elem>> {
    a.gauss_solve(b)
}

pub fn mat_inv<F: crate::ff::Field>(a: &Matrix<F>) -> Result<Matrix<F>> {
    a.inverse()
}

pub fn char_poly(m: &MatrixFp) -> Result<Polynomial> {
    m.char_poly()
}

pub fn mat_order(m: &MatrixFp) -> Result<u64> {
    m.order()
}

/// Precomputed `M^{2^i}` so that `M^e·v` costs at most `popcount(e)` matrix-vector products.
#[derive(Clone, Debug)]
pub struct PowerTable {
    squares: Vec<MatrixFp>,
}

impl PowerTable {
    /// Covers every exponent below `2^bits`.
    pub fn new(m: &MatrixFp, bits: u32) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension("power table needs a square matrix".into()));
        }
        let mut squares = Vec::with_capacity(bits as usize);
        let mut cur = m.clone();
        for i in 0..bits {
            if i > 0 {
                cur = cur.mul(&cur)?;
            }
            squares.push(cur.clone());
        }
        Ok(PowerTable { squares })
    }

    pub fn apply(&self, e: u64, v: &[u32]) -> Result<Vec<u32>> {
        if self.squares.len() < 64 && e >> self.squares.len() != 0 {
            return Err(Error::capacity(format!("exponent {e} exceeds the power table")));
        }
        let mut out = v.to_vec();
        for (i, sq) in self.squares.iter().enumerate() {
            if (e >> i) & 1 == 1 {
                out = sq.mul_vec(&out)?;
            }
        }
        Ok(out)
    }
}

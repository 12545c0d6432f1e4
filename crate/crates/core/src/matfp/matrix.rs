use crate::error::{Error, Result};
use crate::ff::Field;

/// Dense row-major matrix over a [`Field`].
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            data: vec![field.zero(); rows * cols],
            field: field.clone(),
            rows,
            cols,
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn diagonal(field: &F, diag: Vec<F::Elem>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(field, n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Row-major entries; `data.len()` must equal `rows * cols`.
    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "{what} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let t = other.transpose();
        Ok(Self::from_fn(&self.field, self.rows, other.cols, |i, j| {
            self.field.dot(self.row(i).iter().zip(t.row(j)))
        }))
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{}x{} matrix applied to a length-{} vector",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.field.dot(self.row(i).iter().zip(v)))
            .collect())
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect();
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| self.field.sub(a, b))
    }

    pub fn scale(&self, k: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, k)).collect();
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| self.field.is_zero(a))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let a = self.get(i, j);
                    if i == j {
                        *a == self.field.one()
                    } else {
                        self.field.is_zero(a)
                    }
                })
            })
    }

    pub fn pow(&self, e: u64) -> Result<Self> {
        Ok(self.pow_counted(e)?.0)
    }

    /// `self^e` together with the number of matrix multiplications performed.
    ///
    /// Left-to-right square-and-multiply starting from `self`, so at most
    /// `2·(bitlen(e) - 1)` products.
    pub fn pow_counted(&self, e: u64) -> Result<(Self, usize)> {
        self.require_square("pow")?;
        if e == 0 {
            return Ok((Self::identity(&self.field, self.rows), 0));
        }
        let mut acc = self.clone();
        let mut count = 0;
        for bit in (0..63 - e.leading_zeros()).rev() {
            acc = acc.mul(&acc)?;
            count += 1;
            if (e >> bit) & 1 == 1 {
                acc = acc.mul(self)?;
                count += 1;
            }
        }
        Ok((acc, count))
    }

    /// Reduced row echelon form in place, eliminating only the first `limit` columns.
    /// Pivots are the first nonzero entry in each column. Returns the pivot columns.
    fn rref_in_place(&mut self, limit: usize) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit.min(self.cols) {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || f.is_zero(self.get(i, c)) {
                    continue;
                }
                let k = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), &f.mul(&k, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place(self.cols).len()
    }

    /// Solves `self · x = b` for square invertible `self`.
    pub fn gauss_solve(&self, b: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.require_square("gauss_solve")?;
        let n = self.rows;
        if b.len() != n {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, expected {n}",
                b.len()
            )));
        }
        let mut aug = Self::from_fn(&self.field, n, n + 1, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return Err(Error::Singular {
                rank: pivots.len(),
                size: n,
            });
        }
        Ok((0..n).map(|i| aug.get(i, n).clone()).collect())
    }

    pub fn inverse(&self) -> Result<Self> {
        self.require_square("inverse")?;
        let n = self.rows;
        let mut aug = Self::from_fn(&self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return Err(Error::Singular {
                rank: pivots.len(),
                size: n,
            });
        }
        Ok(Self::from_fn(&self.field, n, n, |i, j| aug.get(i, n + j).clone()))
    }

    /// A basis of `{ v : self · v = 0 }`, one vector per free column, with a 1 in that column.
    pub fn null_space(&self) -> Vec<Vec<F::Elem>> {
        let mut r = self.clone();
        let pivots = r.rref_in_place(self.cols);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![self.field.zero(); self.cols];
                v[fc] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.field.neg(r.get(row, fc));
                }
                v
            })
            .collect()
    }

    /// Coefficients (little-endian, monic, length n+1) of `det(xI - self)`.
    ///
    /// Similarity-reduces to upper Hessenberg form, then runs the standard
    /// recurrence on the leading principal minors. Exact over any field.
    pub fn char_poly_coeffs(&self) -> Result<Vec<F::Elem>> {
        self.require_square("char_poly")?;
        let f = self.field.clone();
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| !f.is_zero(h.get(i, j))) else {
                continue;
            };
            if piv != j + 1 {
                // P·H·P^{-1} with P swapping piv and j+1
                for c in 0..n {
                    h.data.swap(piv * n + c, (j + 1) * n + c);
                }
                for r in 0..n {
                    h.data.swap(r * n + piv, r * n + j + 1);
                }
            }
            let inv = f.inv(h.get(j + 1, j)).expect("nonzero pivot");
            for i in j + 2..n {
                let u = f.mul(h.get(i, j), &inv);
                if f.is_zero(&u) {
                    continue;
                }
                // row_i -= u·row_{j+1}; col_{j+1} += u·col_i
                for c in 0..n {
                    let v = f.sub(h.get(i, c), &f.mul(&u, h.get(j + 1, c)));
                    h.set(i, c, v);
                }
                for r in 0..n {
                    let v = f.add(h.get(r, j + 1), &f.mul(&u, h.get(r, i)));
                    h.set(r, j + 1, v);
                }
            }
        }

        // polys[m] = char poly of the leading m×m block
        let mut polys: Vec<Vec<F::Elem>> = vec![vec![f.one()]];
        for m in 1..=n {
            let prev = &polys[m - 1];
            let hmm = h.get(m - 1, m - 1);
            let mut next = vec![f.zero(); m + 1];
            for (k, c) in prev.iter().enumerate() {
                next[k + 1] = f.add(&next[k + 1], c);
                next[k] = f.sub(&next[k], &f.mul(hmm, c));
            }
            let mut t = f.one();
            for i in (1..m).rev() {
                t = f.mul(&t, h.get(i, i - 1));
                let coef = f.mul(h.get(i - 1, m - 1), &t);
                if f.is_zero(&coef) {
                    continue;
                }
                for (k, c) in polys[i - 1].iter().enumerate() {
                    next[k] = f.sub(&next[k], &f.mul(&coef, c));
                }
            }
            polys.push(next);
        }
        Ok(polys.pop().expect("n + 1 entries"))
    }

    /// Applies `map` to every entry, moving to another field.
    pub fn map<G: Field>(&self, field: &G, map: impl Fn(&F::Elem) -> G::Elem) -> Matrix<G> {
        Matrix {
            field: field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(map).collect(),
        }
    }
}

use super::{DdpInstance, DdpSolution};
use crate::error::{Error, Result};
use crate::ff::{dlog, is_irreducible, ExtElem, ExtField, Field as _};
use crate::lchca::{Configuration, Lchca};
use crate::matfp::{MatrixExt, MatrixFp};

/// Least `τ < bound` with `M^τ s = t`, by stepping.
///
/// Returns `Unreachable` once the orbit of `s` closes without meeting `t`,
/// and `None` if `bound` runs out first.
pub fn solve_ddp_bruteforce(inst: &DdpInstance, bound: u64) -> Option<DdpSolution> {
    let n = inst.ca.n();
    let mut cur = inst.s.cells().to_vec();
    let mut next = vec![0; n];
    for tau in 0..bound {
        if cur == inst.t.cells() {
            return Some(DdpSolution::Distance(tau));
        }
        inst.ca.step_into(&cur, &mut next);
        std::mem::swap(&mut cur, &mut next);
        if cur == inst.s.cells() {
            return Some(DdpSolution::Unreachable);
        }
    }
    None
}

/// `M = Q·Λ·Q⁻¹` over `F_p[x]/<f_M>`.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    /// `F_p[x]/<f_M>`; its generator `α` is a root of `f_M`.
    pub field: ExtField,
    /// Column `i` spans the `α^{p^i}`-eigenspace, first nonzero entry 1.
    pub q: MatrixExt,
    /// `diag(α, α^p, ..., α^{p^{n-1}})`.
    pub lambda: MatrixExt,
    pub qinv: MatrixExt,
}

pub fn diagonalize(m: &MatrixFp) -> Result<Diagonalization> {
    let f = m.char_poly()?;
    if !is_irreducible(&f) {
        return Err(Error::unsupported(format!(
            "diagonalisation needs an irreducible characteristic polynomial, got {f}"
        )));
    }
    let field = ExtField::from_irreducible(f)?;
    let n = m.rows();
    let lifted = m.lift(&field)?;
    let alpha = field.generator();
    let eigen: Vec<ExtElem> = (0..n).map(|i| alpha.frobenius(i)).collect();

    let mut columns = Vec::with_capacity(n);
    for lam in &eigen {
        let shifted = lifted.sub(&MatrixExt::identity(&field, n).scale(lam))?;
        let mut basis = shifted.null_space();
        if basis.len() != 1 {
            return Err(Error::domain(format!(
                "eigenspace of dimension {} for a simple eigenvalue",
                basis.len()
            )));
        }
        let mut v = basis.pop().expect("one basis vector");
        let lead = v.iter().find(|e| !e.is_zero()).expect("nonzero null vector").inv()?;
        for e in &mut v {
            *e = e.mul(&lead);
        }
        columns.push(v);
    }
    let q = MatrixExt::from_fn(&field, n, n, |i, j| columns[j][i].clone());
    let qinv = q.inverse()?;
    let lambda = MatrixExt::diagonal(&field, eigen);
    Ok(Diagonalization { field, q, lambda, qinv })
}

/// Reusable DDP solver for one hybrid CA: diagonalises once, then each
/// instance costs two matrix-vector products and a discrete log.
#[derive(Clone, Debug)]
pub struct DdpSolver {
    ca: Lchca,
    diag: Diagonalization,
}

impl DdpSolver {
    pub fn new(ca: Lchca) -> Result<Self> {
        ca.require_hybrid("DDP solver")?;
        let diag = diagonalize(ca.matrix())?;
        Ok(DdpSolver { ca, diag })
    }

    pub fn diagonalization(&self) -> &Diagonalization {
        &self.diag
    }

    fn lift(&self, c: &Configuration) -> Result<Vec<ExtElem>> {
        if c.len() != self.ca.n() {
            return Err(Error::Dimension(format!(
                "configuration has {} cells, CA has {}",
                c.len(),
                self.ca.n()
            )));
        }
        Ok(c.cells().iter().map(|&d| self.diag.field.constant(d)).collect())
    }

    /// `(α, α^τ)` for `t = M^τ s`, from a single eigen-coordinate.
    ///
    /// With `w = Q⁻¹s` and `u = Q⁻¹t`, coordinate `i` satisfies
    /// `u_i = (α^τ)^{p^i} w_i`, so the first `i` with `w_i ≠ 0` gives `α^τ`.
    /// For `s, t` over `F_p` the coordinates of `w` (and of `u`) are Frobenius
    /// conjugates of each other, so the other coordinates carry no extra
    /// information and are not computed.
    pub fn to_dlp(&self, s: &Configuration, t: &Configuration) -> Result<(ExtElem, ExtElem)> {
        self.lift(s)?;
        self.lift(t)?;
        let field = &self.diag.field;
        let n = self.ca.n();
        for i in 0..n {
            let row = self.diag.qinv.row(i);
            let wi = dot_digits(field, row, s.cells());
            if wi.is_zero() {
                continue;
            }
            let ui = dot_digits(field, row, t.cells());
            let a = ui.div(&wi)?.frobenius(n - i);
            if a.is_zero() {
                return Err(Error::NoSolution("the zero configuration is unreachable".into()));
            }
            return Ok((field.generator(), a));
        }
        Err(Error::domain("start configuration is zero"))
    }

    /// Same as [`DdpSolver::to_dlp`], but solves the whole system
    /// `Q·diag(w)·z = t` for `z_i = (α^τ)^{p^i}` by Gaussian elimination.
    pub fn to_dlp_full(&self, s: &Configuration, t: &Configuration) -> Result<(ExtElem, ExtElem)> {
        let w = self.diag.qinv.mul_vec(&self.lift(s)?)?;
        let n = self.ca.n();
        let field = &self.diag.field;
        let system = MatrixExt::from_fn(field, n, n, |r, c| field.mul(self.diag.q.get(r, c), &w[c]));
        let z = system.gauss_solve(&self.lift(t)?)?;
        let a = z[0].clone();
        if a.is_zero() || !conjugates_match(&a, &z, |_, c| c.clone()) {
            return Err(Error::NoSolution(
                "target is not on any orbit of the start configuration".into(),
            ));
        }
        Ok((field.generator(), a))
    }

    pub fn solve(&self, s: &Configuration, t: &Configuration) -> Result<DdpSolution> {
        let (g, a) = match self.to_dlp(s, t) {
            Ok(pair) => pair,
            Err(Error::NoSolution(_)) => return Ok(DdpSolution::Unreachable),
            Err(e) => return Err(e),
        };
        match dlog(&g, &a) {
            Ok(x) => Ok(DdpSolution::Distance(x % self.ca.order()?)),
            Err(Error::NoSolution(_)) => Ok(DdpSolution::Unreachable),
            Err(e) => Err(e),
        }
    }
}

/// `Σ row_j · d_j` for base-field digits `d_j`.
fn dot_digits(field: &ExtField, row: &[ExtElem], digits: &[u32]) -> ExtElem {
    row.iter()
        .zip(digits)
        .filter(|(_, &d)| d != 0)
        .fold(field.zero(), |acc, (e, &d)| acc.add(&e.scale(d)))
}

/// `want[j] == f(j, a^{p^j})` for every `j`.
fn conjugates_match(a: &ExtElem, want: &[ExtElem], f: impl Fn(usize, &ExtElem) -> ExtElem) -> bool {
    let p = a.field().characteristic().as_u64();
    let mut conj = a.clone();
    for (j, wj) in want.iter().enumerate() {
        if j > 0 {
            conj = conj.pow(p);
        }
        if f(j, &conj) != *wj {
            return false;
        }
    }
    true
}

pub fn ddp_to_dlp(inst: &DdpInstance) -> Result<(ExtElem, ExtElem)> {
    DdpSolver::new(inst.ca.clone())?.to_dlp(&inst.s, &inst.t)
}

pub fn ddp_to_dlp_full(inst: &DdpInstance) -> Result<(ExtElem, ExtElem)> {
    DdpSolver::new(inst.ca.clone())?.to_dlp_full(&inst.s, &inst.t)
}

/// `τ` via diagonalisation and a discrete log; the least one below the order of `M`.
pub fn solve_ddp(inst: &DdpInstance) -> Result<DdpSolution> {
    DdpSolver::new(inst.ca.clone())?.solve(&inst.s, &inst.t)
}

use super::{DdpInstance, DdpSolution};
use crate::error::{Error, Result};
use crate::ff::ExtElem;
use crate::lchca::{Configuration, Lchca};
use crate::matfp::MatrixFp;

/// Matrix of `b ↦ a·b` in the basis `1, x, ..., x^{n-1}`: column `j` holds `a·x^j`.
pub fn mul_matrix(a: &ExtElem) -> MatrixFp {
    let field = a.field();
    let n = field.degree();
    let x = field.generator();
    let mut cols = Vec::with_capacity(n);
    let mut cur = a.clone();
    for _ in 0..n {
        cols.push(cur.coeffs().to_vec());
        cur = cur.mul(&x);
    }
    MatrixFp::from_fn(&field.characteristic(), n, n, |i, j| cols[j][i])
}

/// Maps a DDP answer back to a discrete log.
pub type DlpDecoder = fn(DdpSolution) -> Option<u64>;

/// DDP instance `(T_g, e_0, T_a·e_0)`; a distance `τ` for it is a log of `a` to base `g`.
pub fn dlp_to_ddp(g: &ExtElem, a: &ExtElem) -> Result<(DdpInstance, DlpDecoder)> {
    if g.field() != a.field() {
        return Err(Error::domain("DLP base and target live in different fields"));
    }
    let ca = Lchca::from_matrix(mul_matrix(g))?;
    let n = ca.n();
    let s = Configuration::unit(n);
    let t = Configuration::from_reduced(mul_matrix(a).mul_vec(s.cells())?);
    Ok((DdpInstance::new(ca, s, t)?, decode_dlp))
}

/// Distances map to exponents unchanged.
pub fn decode_dlp(sol: DdpSolution) -> Option<u64> {
    sol.distance()
}

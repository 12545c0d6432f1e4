use std::fmt;
use std::str::FromStr;

use super::Prime;
use crate::error::{Error, Result};

/// A polynomial over `F_p`, little-endian: `coeffs[i]` is the coefficient of `x^i`.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has no
/// coefficients and `degree()` is `None` for it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    p: Prime,
    coeffs: Vec<u32>,
}

impl Polynomial {
    /// Builds a polynomial from reduced digits. Unreduced digits are rejected.
    pub fn new(p: Prime, coeffs: Vec<u32>) -> Result<Self> {
        for &c in &coeffs {
            p.check_digit(c)?;
        }
        Ok(Self::from_reduced(p, coeffs))
    }

    pub(crate) fn from_reduced(p: Prime, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { p, coeffs }
    }

    /// Reduces arbitrary integers mod p.
    pub fn from_ints(p: Prime, coeffs: &[i64]) -> Self {
        let m = p.as_u64() as i64;
        Self::from_reduced(p, coeffs.iter().map(|c| c.rem_euclid(m) as u32).collect())
    }

    pub fn zero(p: Prime) -> Self {
        Polynomial { p, coeffs: Vec::new() }
    }

    pub fn one(p: Prime) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: Prime, c: u32) -> Self {
        Self::from_reduced(p, vec![c % p.get()])
    }

    /// `c · x^deg`
    pub fn monomial(p: Prime, c: u32, deg: usize) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c % p.get();
        Self::from_reduced(p, coeffs)
    }

    pub fn x(p: Prime) -> Self {
        Self::monomial(p, 1, 1)
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Coefficients padded with zeros (or truncated) to exactly `len` entries.
    pub fn to_dense(&self, len: usize) -> Vec<u32> {
        (0..len).map(|i| self.coeff(i)).collect()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("the zero polynomial has no monic associate"));
        }
        let inv = self.p.inv_digit(self.leading())?;
        Ok(self.scale(inv))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "polynomials over F_{} and F_{} cannot be combined",
                self.p, other.p
            )))
        }
    }

    fn assert_same(&self, other: &Self) {
        assert_eq!(self.p, other.p, "polynomials over different prime fields");
    }

    /// Panics if the moduli differ.
    pub fn add(&self, other: &Self) -> Self {
        self.assert_same(other);
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len)
            .map(|i| self.p.add_digits(self.coeff(i), other.coeff(i)))
            .collect();
        Self::from_reduced(self.p, c)
    }

    /// Panics if the moduli differ.
    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same(other);
        let len = self.coeffs.len().max(other.coeffs.len());
        let c = (0..len)
            .map(|i| self.p.sub_digits(self.coeff(i), other.coeff(i)))
            .collect();
        Self::from_reduced(self.p, c)
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|&a| self.p.neg_digit(a)).collect();
        Self::from_reduced(self.p, c)
    }

    pub fn scale(&self, k: u32) -> Self {
        let c = self.coeffs.iter().map(|&a| self.p.mul_digits(a, k)).collect();
        Self::from_reduced(self.p, c)
    }

    /// Panics if the moduli differ.
    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p.as_u64();
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        Self::from_reduced(self.p, acc.into_iter().map(|v| v as u32).collect())
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        self.check_same(d)?;
        let dd = d
            .degree()
            .ok_or_else(|| Error::domain("division by the zero polynomial"))?;
        let p = self.p;
        let lead_inv = p.inv_digit(d.leading())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(p), self.clone()));
        }
        let mut q = vec![0u32; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = p.mul_digits(r[i], lead_inv);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                let k = i - dd + j;
                r[k] = p.sub_digits(r[k], p.mul_digits(c, dj));
            }
        }
        r.truncate(dd);
        Ok((Self::from_reduced(p, q), Self::from_reduced(p, r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    /// Inverse modulo `f` by the extended Euclidean algorithm.
    pub fn inv_mod(&self, f: &Self) -> Result<Self> {
        self.check_same(f)?;
        let p = self.p;
        let (mut r0, mut r1) = (f.clone(), self.rem(f)?);
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        if r0.degree() != Some(0) {
            return Err(Error::domain("polynomial is not invertible modulo f"));
        }
        let k = p.inv_digit(r0.leading())?;
        t0.scale(k).rem(f)
    }

    /// `self^e mod f` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64, f: &Self) -> Result<Self> {
        let mut base = self.rem(f)?;
        let mut acc = Self::one(self.p).rem(f)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(f)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(f)?;
            }
        }
        Ok(acc)
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.p.add_digits(self.p.mul_digits(acc, x), c))
    }
}

/// `a·b mod f`. Errors when the moduli differ or `f` is zero.
pub fn poly_mul_mod(a: &Polynomial, b: &Polynomial, f: &Polynomial) -> Result<Polynomial> {
    a.check_same(b)?;
    a.check_same(f)?;
    a.mul(b).rem(f)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.p)?;
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Parses `p:c0,c1,...,cn`.
    fn from_str(s: &str) -> Result<Self> {
        let (p, body) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::parse(format!("expected `p:c0,c1,...`, got {s:?}")))?;
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|e| Error::parse(format!("bad prime {p:?}: {e}")))?;
        let p = Prime::new(p).map_err(|e| Error::parse(e.to_string()))?;
        let coeffs = body
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::parse(format!("bad digit {c:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Polynomial::new(p, coeffs)
    }
}

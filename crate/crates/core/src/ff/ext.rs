use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use super::factor::{self, FactorConfig};
use super::{is_irreducible, Field, Polynomial, Prime};
use crate::error::{Error, Result};

struct Inner {
    p: Prime,
    n: usize,
    /// monic, irreducible, degree n
    modulus: Polynomial,
    order_factors: OnceLock<Result<Vec<(u64, u32)>>>,
}

/// The extension field `F_{p^n} = F_p[x]/<f>` for a monic irreducible `f`.
///
/// Cheap to clone; all clones share one reference-counted description.
#[derive(Clone)]
pub struct ExtField(Arc<Inner>);

impl ExtField {
    /// Requires `f` monic, irreducible and of degree at least 2.
    pub fn new(f: Polynomial) -> Result<Self> {
        match f.degree() {
            Some(d) if d >= 2 => Self::from_irreducible(f),
            _ => Err(Error::domain(format!(
                "extension modulus must have degree >= 2, got {f}"
            ))),
        }
    }

    /// Like [`ExtField::new`] but also accepts linear moduli (`F_p` itself).
    pub(crate) fn from_irreducible(f: Polynomial) -> Result<Self> {
        if !f.is_monic() {
            return Err(Error::domain(format!("modulus {f} is not monic")));
        }
        if !is_irreducible(&f) {
            return Err(Error::domain(format!("modulus {f} is reducible")));
        }
        let n = f.degree().expect("irreducible implies nonzero");
        Ok(ExtField(Arc::new(Inner {
            p: f.modulus(),
            n,
            modulus: f,
            order_factors: OnceLock::new(),
        })))
    }

    pub fn characteristic(&self) -> Prime {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.n
    }

    pub fn modulus(&self) -> &Polynomial {
        &self.0.modulus
    }

    /// Number of elements, `p^n`.
    pub fn size(&self) -> Result<u64> {
        let e = u32::try_from(self.0.n).map_err(|_| Error::capacity("degree too large"))?;
        self.0
            .p
            .as_u64()
            .checked_pow(e)
            .ok_or_else(|| Error::capacity(format!("{}^{} does not fit in 64 bits", self.0.p, self.0.n)))
    }

    /// `p^n - 1`, the order of the multiplicative group.
    pub fn group_order(&self) -> Result<u64> {
        factor::group_order(self.0.p.as_u64(), self.0.n)
    }

    /// Factorisation of `p^n - 1`, computed once with the default limits.
    pub fn group_order_factors(&self) -> Result<&[(u64, u32)]> {
        self.0
            .order_factors
            .get_or_init(|| {
                let order = self.group_order()?;
                factor::factorize(order, &FactorConfig::default())
            })
            .as_deref()
            .map_err(Clone::clone)
    }

    fn make(&self, c: Vec<u32>) -> ExtElem {
        debug_assert_eq!(c.len(), self.0.n);
        ExtElem { field: self.clone(), c }
    }

    pub fn zero(&self) -> ExtElem {
        self.make(vec![0; self.0.n])
    }

    pub fn one(&self) -> ExtElem {
        self.constant(1)
    }

    /// The embedded base-field digit `c mod p`.
    pub fn constant(&self, c: u32) -> ExtElem {
        let mut v = vec![0; self.0.n];
        v[0] = c % self.0.p.get();
        self.make(v)
    }

    /// The class of `x`, a root of the modulus.
    pub fn generator(&self) -> ExtElem {
        self.from_poly(&Polynomial::x(self.0.p)).expect("same prime")
    }

    /// Element from little-endian coefficients; longer inputs are reduced mod f.
    pub fn element(&self, coeffs: &[u32]) -> Result<ExtElem> {
        self.from_poly(&Polynomial::new(self.0.p, coeffs.to_vec())?)
    }

    pub fn from_poly(&self, a: &Polynomial) -> Result<ExtElem> {
        let r = a.rem(&self.0.modulus)?;
        Ok(self.make(r.to_dense(self.0.n)))
    }

    /// Inverse of [`ExtElem::index`].
    pub fn from_index(&self, mut idx: u64) -> ExtElem {
        let p = self.0.p.as_u64();
        let c = (0..self.0.n)
            .map(|_| {
                let d = (idx % p) as u32;
                idx /= p;
                d
            })
            .collect();
        self.make(c)
    }

    fn same(&self, other: &ExtField) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }

    fn mul_raw(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = self.0.n;
        let p = self.0.p.as_u64();
        let mut r = vec![0u64; 2 * n - 1];
        // small p: sums of up to n products cannot overflow, reduce once per slot
        let lazy = (p - 1)
            .checked_mul(p - 1)
            .and_then(|sq| sq.checked_mul(2 * n as u64))
            .is_some();
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] += ai as u64 * bj as u64;
                if !lazy {
                    r[i + j] %= p;
                }
            }
        }
        let f = self.0.modulus.coeffs();
        for i in (n..2 * n - 1).rev() {
            let c = r[i] % p;
            if c == 0 {
                continue;
            }
            let neg = p - c;
            for (j, &fj) in f[..n].iter().enumerate() {
                r[i - n + j] += neg * fj as u64;
                if !lazy {
                    r[i - n + j] %= p;
                }
            }
        }
        for v in &mut r[..n] {
            *v %= p;
        }
        r.truncate(n);
        r.into_iter().map(|v| v as u32).collect()
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for ExtField {}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[x]/<{}>", self.0.p, self.0.modulus)
    }
}

/// An element of an [`ExtField`], stored as `n` little-endian coefficients.
#[derive(Clone)]
pub struct ExtElem {
    field: ExtField,
    c: Vec<u32>,
}

impl ExtElem {
    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn to_poly(&self) -> Polynomial {
        Polynomial::from_reduced(self.field.0.p, self.c.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&v| v == 0)
    }

    /// `Σ c_i p^i`, a bijection onto `[0, p^n)`; `None` if that overflows `u64`.
    pub fn index(&self) -> Option<u64> {
        let p = self.field.0.p.as_u64();
        self.c
            .iter()
            .rev()
            .try_fold(0u64, |acc, &d| acc.checked_mul(p)?.checked_add(d as u64))
    }

    fn check(&self, other: &ExtElem) {
        assert!(self.field.same(&other.field), "elements of different fields");
    }

    pub fn add(&self, other: &ExtElem) -> ExtElem {
        self.check(other);
        let p = self.field.0.p;
        let c = self.c.iter().zip(&other.c).map(|(&a, &b)| p.add_digits(a, b)).collect();
        self.field.make(c)
    }

    pub fn sub(&self, other: &ExtElem) -> ExtElem {
        self.check(other);
        let p = self.field.0.p;
        let c = self.c.iter().zip(&other.c).map(|(&a, &b)| p.sub_digits(a, b)).collect();
        self.field.make(c)
    }

    pub fn neg(&self) -> ExtElem {
        let p = self.field.0.p;
        self.field.make(self.c.iter().map(|&a| p.neg_digit(a)).collect())
    }

    pub fn mul(&self, other: &ExtElem) -> ExtElem {
        self.check(other);
        self.field.make(self.field.mul_raw(&self.c, &other.c))
    }

    pub fn scale(&self, k: u32) -> ExtElem {
        let p = self.field.0.p;
        self.field.make(self.c.iter().map(|&a| p.mul_digits(a, k)).collect())
    }

    pub fn inv(&self) -> Result<ExtElem> {
        if self.is_zero() {
            return Err(Error::domain("zero has no inverse"));
        }
        let inv = self.to_poly().inv_mod(&self.field.0.modulus)?;
        self.field.from_poly(&inv)
    }

    pub fn div(&self, other: &ExtElem) -> Result<ExtElem> {
        Ok(self.mul(&other.inv()?))
    }

    /// `self^e` by square-and-multiply; `a^0 = 1` (including `0^0`).
    pub fn pow(&self, mut e: u64) -> ExtElem {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self^{p^k}`, applying the Frobenius map `k` times.
    pub fn frobenius(&self, k: usize) -> ExtElem {
        let p = self.field.0.p.as_u64();
        (0..k % self.field.0.n).fold(self.clone(), |a, _| a.pow(p))
    }

    /// Multiplicative order, by descent over the factorisation of `p^n - 1`.
    pub fn order(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::domain("zero has no multiplicative order"));
        }
        let mut ord = self.field.group_order()?;
        for &(q, e) in self.field.group_order_factors()? {
            for _ in 0..e {
                if self.pow(ord / q).is_one() {
                    ord /= q;
                } else {
                    break;
                }
            }
        }
        Ok(ord)
    }
}

/// `a^e` in `F_{p^n}`.
pub fn ext_pow(a: &ExtElem, e: u64) -> ExtElem {
    a.pow(e)
}

impl PartialEq for ExtElem {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.field.same(&other.field)
    }
}

impl Eq for ExtElem {}

impl Hash for ExtElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.c)
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl<'a> $tr<&'a ExtElem> for &'a ExtElem {
            type Output = ExtElem;
            fn $m(self, rhs: &'a ExtElem) -> ExtElem {
                ExtElem::$m(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &ExtElem {
    type Output = ExtElem;
    fn neg(self) -> ExtElem {
        ExtElem::neg(self)
    }
}

impl Field for ExtField {
    type Elem = ExtElem;

    fn zero(&self) -> ExtElem {
        ExtField::zero(self)
    }
    fn one(&self) -> ExtElem {
        ExtField::one(self)
    }
    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.add(b)
    }
    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.sub(b)
    }
    fn neg(&self, a: &ExtElem) -> ExtElem {
        a.neg()
    }
    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.mul(b)
    }
    fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        a.inv().ok()
    }
    fn is_zero(&self, a: &ExtElem) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf16() -> ExtField {
        ExtField::new("2:1,1,0,0,1".parse().unwrap()).unwrap()
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(ExtField::new("2:1,1".parse().unwrap()).is_err());
        assert!(ExtField::new("2:1,0,1".parse().unwrap()).is_err());
        assert!(ExtField::new("3:1,0,2".parse().unwrap()).is_err());
        assert!(ExtField::new("3:1".parse().unwrap()).is_err());
    }

    #[test]
    fn pow_examples() {
        let k = gf16();
        let x = k.generator();
        assert!(ext_pow(&x, 0).is_one());
        assert_eq!(ext_pow(&x, 4), k.element(&[1, 1]).unwrap());
        assert!(ext_pow(&x, 15).is_one());
        assert!(ext_pow(&k.zero(), 0).is_one());
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let k = gf16();
        let x = k.generator();
        let mut acc = k.one();
        for e in 0..40 {
            assert_eq!(x.pow(e), acc);
            acc = acc.mul(&x);
        }
    }

    #[test]
    fn lagrange_in_small_fields() {
        for f in ["2:1,1,0,0,1", "3:1,2,0,1", "5:2,0,1"] {
            let k = ExtField::new(f.parse().unwrap()).unwrap();
            let q = k.size().unwrap();
            for idx in 1..q {
                assert!(k.from_index(idx).pow(q - 1).is_one(), "{f} {idx}");
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let k = ExtField::new("3:1,2,0,1".parse().unwrap()).unwrap();
        for idx in 0..27 {
            assert_eq!(k.from_index(idx).index(), Some(idx));
        }
    }

    #[test]
    fn inverse_and_orders() {
        let k = gf16();
        for idx in 1..16 {
            let a = k.from_index(idx);
            assert!(a.mul(&a.inv().unwrap()).is_one());
            let ord = a.order().unwrap();
            assert_eq!(15 % ord, 0);
            assert!(a.pow(ord).is_one());
            assert!((1..ord).all(|e| !a.pow(e).is_one()));
        }
        assert!(k.zero().inv().is_err());
    }

    #[test]
    fn frobenius_is_additive() {
        let k = ExtField::new("3:1,2,0,1".parse().unwrap()).unwrap();
        for i in 0..27 {
            for j in 0..27 {
                let (a, b) = (k.from_index(i), k.from_index(j));
                assert_eq!(a.add(&b).frobenius(1), a.frobenius(1).add(&b.frobenius(1)));
            }
        }
    }
}

use std::fmt;

use super::Field;
use crate::error::{Error, Result};

/// A prime `2 <= p < 2^31`, validated at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub const MAX: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self> {
        if !(2..Self::MAX).contains(&p) {
            return Err(Error::domain(format!("{p} is outside [2, 2^31)")));
        }
        if !super::factor::is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_u64(self) -> u64 {
        self.0 as u64
    }

    #[inline]
    pub fn reduce(self, a: u64) -> u32 {
        (a % self.as_u64()) as u32
    }

    #[inline]
    pub fn add_digits(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.as_u64();
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub_digits(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.as_u64() - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg_digit(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul_digits(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.as_u64()) as u32
    }

    pub fn pow_digit(self, mut base: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_digits(acc, base);
            }
            base = self.mul_digits(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv_digit(self, a: u32) -> Result<u32> {
        let a = a % self.0;
        if a == 0 {
            return Err(Error::domain(format!("0 has no inverse mod {}", self.0)));
        }
        let (mut r0, mut r1) = (self.0 as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(t0.rem_euclid(self.0 as i64) as u32)
    }

    pub fn check_digit(self, d: u32) -> Result<u32> {
        if d < self.0 {
            Ok(d)
        } else {
            Err(Error::parse(format!("digit {d} is not reduced mod {}", self.0)))
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Inverse of `a` in `F_p`. Errors when `a ≡ 0 (mod p)`.
pub fn fp_inv(a: u32, p: Prime) -> Result<u32> {
    p.inv_digit(a)
}

impl Field for Prime {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.add_digits(*a, *b)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.sub_digits(*a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        self.neg_digit(*a)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mul_digits(*a, *b)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        self.inv_digit(*a).ok()
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn dot<'a, I>(&self, pairs: I) -> u32
    where
        I: Iterator<Item = (&'a u32, &'a u32)>,
    {
        // products are < 2^62, so four of them fit in a u64 before reducing
        let p = self.as_u64();
        let mut acc = 0u64;
        for (i, (a, b)) in pairs.enumerate() {
            acc += *a as u64 * *b as u64;
            if i & 3 == 3 {
                acc %= p;
            }
        }
        (acc % p) as u32
    }
}

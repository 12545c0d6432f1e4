//! Integer factorisation for group orders `p^n - 1`.
//!
//! Trial division up to a configurable bound, then Brent's variant of Pollard's
//! rho for whatever cofactor remains. Everything works in `u64`; orders that do
//! not fit are rejected by the callers.

use crate::error::{Error, Result};

pub const DEFAULT_TRIAL_BOUND: u64 = 1 << 20;

/// How hard to try when factoring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorConfig {
    pub trial_bound: u64,
    /// Fall back to Pollard rho for composite cofactors past the trial bound.
    pub pollard_rho: bool,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            trial_bound: DEFAULT_TRIAL_BOUND,
            pollard_rho: true,
        }
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all `u64` (first twelve prime bases).
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Finds a nontrivial factor of an odd composite `n`.
fn brent_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..std::cmp::min(128, r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    if n.is_multiple_of(2) {
        out.push(2);
        split_into(n / 2, out);
        return;
    }
    let d = brent_rho(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Prime factorisation of `m` as sorted `(prime, exponent)` pairs. `m = 1` gives `[]`.
pub fn factorize(m: u64, cfg: &FactorConfig) -> Result<Vec<(u64, u32)>> {
    if m == 0 {
        return Err(Error::domain("cannot factor 0"));
    }
    let mut primes = Vec::new();
    let mut rest = m;
    let mut d = 2u64;
    while d <= cfg.trial_bound && d.saturating_mul(d) <= rest {
        while rest.is_multiple_of(d) {
            primes.push(d);
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        if d.saturating_mul(d) > rest || is_prime(rest) {
            primes.push(rest);
        } else if cfg.pollard_rho {
            split_into(rest, &mut primes);
        } else {
            return Err(Error::capacity(format!(
                "cofactor {rest} of {m} is composite beyond trial bound {}",
                cfg.trial_bound
            )));
        }
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    Ok(out)
}

/// `p^n - 1`, or a capacity error when it does not fit in a `u64`.
pub fn group_order(p: u64, n: usize) -> Result<u64> {
    let exp = u32::try_from(n).map_err(|_| Error::capacity("degree too large"))?;
    (p as u128)
        .checked_pow(exp)
        .and_then(|q| u64::try_from(q - 1).ok())
        .ok_or_else(|| Error::capacity(format!("{p}^{n} - 1 does not fit in 64 bits")))
}

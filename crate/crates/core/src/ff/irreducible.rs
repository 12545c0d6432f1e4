use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::factor::{self, FactorConfig};
use super::{Polynomial, Prime};
use crate::error::{Error, Result};

fn distinct_prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `f` of degree `n` is irreducible iff `x^{p^n} ≡ x (mod f)` and
/// `gcd(x^{p^{n/q}} - x, f) = 1` for every prime `q | n`.
///
/// The zero polynomial and constants are not irreducible.
pub fn is_irreducible(f: &Polynomial) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let f = f.monic().expect("nonzero");
    let p = f.modulus();
    let x = Polynomial::x(p);
    // frob[k] = x^{p^k} mod f
    let mut frob = Vec::with_capacity(n + 1);
    frob.push(x.clone());
    for k in 1..=n {
        let next = frob[k - 1].pow_mod(p.as_u64(), &f).expect("f nonzero");
        frob.push(next);
    }
    if frob[n] != x {
        return false;
    }
    distinct_prime_divisors(n).into_iter().all(|q| {
        let h = frob[n / q].sub(&x);
        h.gcd(&f).map(|g| g.is_one()).unwrap_or(false)
    })
}

/// Whether the class of `x` generates `(F_p[x]/<f>)^*`, using default factoring limits.
///
/// Degree-1 inputs are reported as not primitive: the extension is degenerate there.
pub fn is_primitive(f: &Polynomial) -> Result<bool> {
    is_primitive_with(f, &FactorConfig::default())
}

pub fn is_primitive_with(f: &Polynomial, cfg: &FactorConfig) -> Result<bool> {
    let n = match f.degree() {
        None | Some(0) | Some(1) => return Ok(false),
        Some(n) => n,
    };
    if !is_irreducible(f) {
        return Ok(false);
    }
    let f = f.monic()?;
    let p = f.modulus();
    let order = factor::group_order(p.as_u64(), n)?;
    let x = Polynomial::x(p);
    for (q, _) in factor::factorize(order, cfg)? {
        if x.pow_mod(order / q, &f)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Seeded random search for a monic irreducible (optionally primitive) polynomial of degree `n`.
pub fn find_irreducible(p: Prime, n: usize, want_primitive: bool, seed: u64) -> Result<Polynomial> {
    if n < 2 {
        return Err(Error::domain(format!("degree must be at least 2, got {n}")));
    }
    if want_primitive {
        // fail early when the group order cannot be handled at all
        factor::group_order(p.as_u64(), n)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = 64 * n * n + 1024;
    for _ in 0..budget {
        let mut coeffs: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p.get())).collect();
        if coeffs[0] == 0 {
            coeffs[0] = rng.gen_range(1..p.get());
        }
        coeffs.push(1);
        let f = Polynomial::from_reduced(p, coeffs);
        if !is_irreducible(&f) {
            continue;
        }
        if !want_primitive || is_primitive(&f)? {
            return Ok(f);
        }
    }
    Err(Error::capacity(format!(
        "no {} polynomial of degree {n} over F_{p} within {budget} candidates",
        if want_primitive { "primitive" } else { "irreducible" }
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[u32]) -> Polynomial {
        Polynomial::new(Prime::new(p).unwrap(), c.to_vec()).unwrap()
    }

    /// Every monic polynomial over F_p of exactly degree `d`.
    fn monic_of_degree(p: Prime, d: usize) -> Vec<Polynomial> {
        let q = p.get() as u64;
        (0..q.pow(d as u32))
            .map(|mut idx| {
                let mut c: Vec<u32> = (0..d)
                    .map(|_| {
                        let v = (idx % q) as u32;
                        idx /= q;
                        v
                    })
                    .collect();
                c.push(1);
                Polynomial::new(p, c).unwrap()
            })
            .collect()
    }

    /// Brute-force oracle: no monic divisor of degree 1..=deg/2.
    fn irreducible_by_trial(f: &Polynomial) -> bool {
        let n = f.degree().unwrap();
        (1..=n / 2).all(|d| {
            monic_of_degree(f.modulus(), d)
                .iter()
                .all(|g| !f.rem(g).unwrap().is_zero())
        })
    }

    #[test]
    fn examples() {
        assert!(is_irreducible(&poly(2, &[1, 1, 0, 0, 1])));
        assert!(!is_irreducible(&poly(2, &[1, 0, 1])));
        assert!(is_irreducible(&poly(2, &[1, 1, 1, 1, 1])));
        assert!(is_primitive(&poly(2, &[1, 1, 0, 0, 1])).unwrap());
        assert!(!is_primitive(&poly(2, &[1, 1, 1, 1, 1])).unwrap());
        assert!(!is_primitive(&poly(2, &[1, 1])).unwrap());
    }

    #[test]
    fn agrees_with_trial_division_exhaustively() {
        for (p, max_deg) in [(2u64, 6usize), (3, 4)] {
            let pr = Prime::new(p).unwrap();
            for d in 1..=max_deg {
                for f in monic_of_degree(pr, d) {
                    assert_eq!(is_irreducible(&f), irreducible_by_trial(&f), "{f}");
                }
            }
        }
    }

    #[test]
    fn non_monic_inputs() {
        // 2x^2 + 2 = 2(x^2 + 1), irreducible over F_3
        assert!(is_irreducible(&poly(3, &[2, 0, 2])));
        assert!(!is_irreducible(&poly(3, &[0])));
        assert!(!is_irreducible(&poly(3, &[2])));
    }

    #[test]
    fn primitive_matches_power_enumeration() {
        let pr = Prime::new(3).unwrap();
        for f in monic_of_degree(pr, 2).into_iter().filter(is_irreducible) {
            let x = Polynomial::x(pr);
            let mut acc = x.clone();
            let mut order = 1;
            while !acc.is_one() {
                acc = poly_mul(&acc, &x, &f);
                order += 1;
            }
            assert_eq!(is_primitive(&f).unwrap(), order == 8, "{f}");
        }
    }

    fn poly_mul(a: &Polynomial, b: &Polynomial, f: &Polynomial) -> Polynomial {
        a.mul(b).rem(f).unwrap()
    }

    #[test]
    fn find_examples() {
        let p2 = Prime::new(2).unwrap();
        let f = find_irreducible(p2, 4, true, 0).unwrap();
        assert!(is_primitive(&f).unwrap());
        assert_eq!(f, find_irreducible(p2, 4, true, 0).unwrap());
        let p3 = Prime::new(3).unwrap();
        let g = find_irreducible(p3, 2, false, 0).unwrap();
        assert!(is_irreducible(&g) && g.is_monic() && g.degree() == Some(2));
        assert!(matches!(find_irreducible(p2, 1, false, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn capacity_for_huge_orders() {
        let p2 = Prime::new(2).unwrap();
        assert!(matches!(find_irreducible(p2, 80, true, 0), Err(Error::Capacity(_))));
    }
}

//! Discrete logarithms in `F_{p^n}^*`: Pohlig–Hellman over the factorisation of
//! the order of the base, with baby-step/giant-step in each prime-order subgroup.

use std::collections::HashMap;

use super::ExtElem;
use crate::error::{Error, Result};

/// Largest baby-step table; bounds the prime factors we can handle to ~2^48.
const MAX_BABY_STEPS: u64 = 1 << 24;

fn key(a: &ExtElem) -> u64 {
    a.index()
        .expect("field size fits u64 once the group order was factored")
}

/// Solves `gamma^d = h` for `d in [0, q)` where `gamma` has prime order `q`.
fn bsgs(gamma: &ExtElem, h: &ExtElem, q: u64) -> Result<u64> {
    let m = (q as f64).sqrt().ceil() as u64;
    let m = (m.saturating_sub(2)..=m + 2)
        .find(|&c| c.saturating_mul(c) >= q)
        .unwrap_or(m);
    if m > MAX_BABY_STEPS {
        return Err(Error::capacity(format!(
            "prime factor {q} needs {m} baby steps (limit {MAX_BABY_STEPS})"
        )));
    }
    let mut table = HashMap::with_capacity(m as usize);
    let mut cur = gamma.field().one();
    for j in 0..m {
        table.entry(key(&cur)).or_insert(j);
        cur = cur.mul(gamma);
    }
    let giant = gamma.pow(m).inv()?;
    let mut y = h.clone();
    for i in 0..m {
        if let Some(&j) = table.get(&key(&y)) {
            return Ok(i * m + j);
        }
        y = y.mul(&giant);
    }
    Err(Error::NoSolution("element outside the prime-order subgroup".into()))
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

/// Combines `x ≡ r_i (mod m_i)` for pairwise coprime moduli.
fn crt(parts: &[(u64, u64)]) -> u64 {
    let (mut r, mut m) = (0u128, 1u128);
    for &(ri, mi) in parts {
        let mi = mi as u128;
        // solve r + m·t ≡ ri (mod mi)
        let (_, inv, _) = ext_gcd((m % mi) as i128, mi as i128);
        let inv = inv.rem_euclid(mi as i128) as u128;
        let diff = ((ri as u128 % mi) + mi - r % mi) % mi;
        let t = diff * inv % mi;
        r += m * t;
        m *= mi;
        r %= m;
    }
    r as u64
}

/// Least `x >= 0` with `g^x = a`.
///
/// Errors with [`Error::NoSolution`] when `a` is not in the subgroup generated
/// by `g`, and with [`Error::Capacity`] when `p^n - 1` cannot be handled.
pub fn dlog(g: &ExtElem, a: &ExtElem) -> Result<u64> {
    if g.field() != a.field() {
        return Err(Error::domain("base and target live in different fields"));
    }
    if g.is_zero() {
        return Err(Error::domain("zero is not a group element"));
    }
    if a.is_zero() {
        return Err(Error::NoSolution("zero is not a power of any unit".into()));
    }
    let field = g.field();
    field.size()?;
    let factors = field.group_order_factors()?;

    // order of g, keeping track of its factorisation
    let mut ord = field.group_order()?;
    let mut ord_factors = Vec::new();
    for &(q, e) in factors {
        let mut kept = e;
        for _ in 0..e {
            if g.pow(ord / q).is_one() {
                ord /= q;
                kept -= 1;
            } else {
                break;
            }
        }
        if kept > 0 {
            ord_factors.push((q, kept));
        }
    }
    if !a.pow(ord).is_one() {
        return Err(Error::NoSolution(format!(
            "target is not in the subgroup of order {ord}"
        )));
    }

    let g_inv = g.inv()?;
    let mut parts = Vec::with_capacity(ord_factors.len());
    for &(q, e) in &ord_factors {
        let qe = q.pow(e);
        let gamma = g.pow(ord / q);
        let mut x = 0u64;
        let mut q_j = 1u64;
        for j in 0..e {
            // strip the digits found so far, then project into the order-q subgroup
            let stripped = g_inv.pow(x).mul(a);
            let h = stripped.pow(ord / (q_j * q));
            let d = bsgs(&gamma, &h, q)?;
            x += d * q_j;
            if j + 1 < e {
                q_j *= q;
            }
        }
        parts.push((x % qe, qe));
    }
    let x = crt(&parts);
    debug_assert!(g.pow(x) == *a);
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::ExtField;

    fn field(f: &str) -> ExtField {
        ExtField::new(f.parse().unwrap()).unwrap()
    }

    fn scan(g: &ExtElem, a: &ExtElem) -> Option<u64> {
        let mut cur = g.field().one();
        let q = g.field().size().unwrap();
        for e in 0..q {
            if cur == *a {
                return Some(e);
            }
            cur = cur.mul(g);
        }
        None
    }

    #[test]
    fn examples() {
        let k = field("2:1,1,0,0,1");
        let x = k.generator();
        assert_eq!(dlog(&x, &k.one()).unwrap(), 0);
        assert_eq!(dlog(&x, &k.element(&[1, 1]).unwrap()).unwrap(), 4);

        let k5 = field("2:1,1,1,1,1");
        let t = k5.element(&[1, 1]).unwrap();
        assert!(matches!(dlog(&k5.generator(), &t), Err(Error::NoSolution(_))));
        assert!(matches!(dlog(&x, &k.zero()), Err(Error::NoSolution(_))));
    }

    #[test]
    fn agrees_with_exhaustive_scan() {
        for f in ["2:1,1,0,0,1", "2:1,1,1,1,1", "3:1,2,0,1", "5:2,0,1", "3:2,0,0,1,1"] {
            let k = field(f);
            let q = k.size().unwrap();
            for gi in 1..q {
                let g = k.from_index(gi);
                for ai in 1..q {
                    let a = k.from_index(ai);
                    let expected = scan(&g, &a);
                    match dlog(&g, &a) {
                        Ok(x) => assert_eq!(Some(x), expected, "{f} g={gi} a={ai}"),
                        Err(Error::NoSolution(_)) => assert_eq!(expected, None, "{f} g={gi} a={ai}"),
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn round_trip_in_larger_field() {
        use rand::{Rng, SeedableRng};
        let k = field(
            &crate::ff::find_irreducible(crate::ff::Prime::new(2).unwrap(), 40, true, 1)
                .unwrap()
                .to_string(),
        );
        let g = k.generator();
        let order = k.group_order().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let e = rng.gen_range(0..order);
            assert_eq!(dlog(&g, &g.pow(e)).unwrap(), e);
        }
    }

    #[test]
    fn crt_small() {
        assert_eq!(crt(&[(2, 3), (3, 5)]), 8);
        assert_eq!(crt(&[(0, 16), (4, 5)]), 64);
    }
}

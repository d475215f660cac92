//! Dense polynomials over F_p, coefficients ascending. Used for extension-field
//! multiplication and the irreducibility test on user-supplied moduli.

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub(crate) type Poly = Vec<BigUint>;

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn degree(a: &[BigUint]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn sub(a: &[BigUint], b: &[BigUint], p: &BigUint) -> Poly {
    let len = a.len().max(b.len());
    let zero = BigUint::zero();
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).unwrap_or(&zero);
            let y = b.get(i).unwrap_or(&zero);
            if x >= y {
                x - y
            } else {
                x + p - y
            }
        })
        .collect();
    trim(out)
}

fn mul(a: &[BigUint], b: &[BigUint], p: &BigUint) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    for c in out.iter_mut() {
        *c %= p;
    }
    trim(out)
}

/// Remainder of `a` modulo the monic polynomial `f`.
pub(crate) fn rem_monic(mut a: Poly, f: &[BigUint], p: &BigUint) -> Poly {
    let m = f.len() - 1;
    while a.len() > m {
        let lead = a.pop().expect("non-empty");
        if lead.is_zero() {
            continue;
        }
        let shift = a.len() - m;
        for (j, fj) in f[..m].iter().enumerate() {
            let t = (&lead * fj) % p;
            let slot = &mut a[shift + j];
            if *slot >= t {
                *slot -= &t;
            } else {
                *slot += p;
                *slot -= &t;
            }
        }
    }
    trim(a)
}

pub(crate) fn mulmod(a: &[BigUint], b: &[BigUint], f: &[BigUint], p: &BigUint) -> Poly {
    rem_monic(mul(a, b, p), f, p)
}

fn powmod(base: &[BigUint], e: &BigUint, f: &[BigUint], p: &BigUint) -> Poly {
    let mut acc: Poly = vec![BigUint::one()];
    for i in (0..e.bits()).rev() {
        acc = mulmod(&acc, &acc, f, p);
        if e.bit(i) {
            acc = mulmod(&acc, base, f, p);
        }
    }
    acc
}

/// Monic gcd over F_p.
fn gcd(a: &[BigUint], b: &[BigUint], p: &BigUint) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem_general(a, &b, p);
        a = b;
        b = r;
    }
    make_monic(a, p)
}

fn make_monic(a: Poly, p: &BigUint) -> Poly {
    match a.last() {
        None => a,
        Some(lead) => {
            let inv = lead.modinv(p).expect("p prime");
            a.into_iter().map(|c| (c * &inv) % p).collect()
        }
    }
}

fn rem_general(a: Poly, b: &[BigUint], p: &BigUint) -> Poly {
    let lead_inv = b.last().expect("non-zero divisor").modinv(p).expect("p prime");
    let monic: Poly = b.iter().map(|c| (c * &lead_inv) % p).collect();
    rem_monic(a, &monic, p)
}

/// Rabin's test: a monic `f` of degree m is irreducible iff it has no
/// common factor with x^(p^k) - x for every k <= m/2.
pub(crate) fn is_irreducible(f: &[BigUint], p: &BigUint) -> bool {
    let Some(m) = degree(f) else {
        return false;
    };
    if m == 0 {
        return false;
    }
    let x: Poly = vec![BigUint::zero(), BigUint::one()];
    let mut frob = rem_monic(x.clone(), f, p);
    for _ in 1..=m / 2 {
        frob = powmod(&frob, p, f, p);
        let g = gcd(f, &sub(&frob, &x, p), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[u32]) -> Poly {
        cs.iter().map(|&c| BigUint::from(c)).collect()
    }

    /// Exhaustive factor search for small p and degree: f is reducible iff
    /// some monic polynomial of degree 1..=m/2 divides it.
    fn brute_irreducible(f: &[u32], p: u32) -> bool {
        let m = f.len() - 1;
        let pb = BigUint::from(p);
        let fp = poly(f);
        for d in 1..=m / 2 {
            let count = (p as usize).pow(d as u32);
            for idx in 0..count {
                let mut cs = Vec::with_capacity(d + 1);
                let mut k = idx;
                for _ in 0..d {
                    cs.push((k % p as usize) as u32);
                    k /= p as usize;
                }
                cs.push(1);
                if rem_monic(fp.clone(), &poly(&cs), &pb).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn x2_plus_1_mod_3() {
        assert!(is_irreducible(&poly(&[1, 0, 1]), &BigUint::from(3u32)));
        // x^2 + 1 = (x + 2)(x + 3) mod 5
        assert!(!is_irreducible(&poly(&[1, 0, 1]), &BigUint::from(5u32)));
    }

    #[test]
    fn matches_exhaustive_search_small_cubics_and_quartics() {
        for p in [3u32, 5] {
            for m in [2usize, 3, 4] {
                let total = (p as usize).pow(m as u32);
                for idx in 0..total {
                    let mut cs = Vec::new();
                    let mut k = idx;
                    for _ in 0..m {
                        cs.push((k % p as usize) as u32);
                        k /= p as usize;
                    }
                    cs.push(1);
                    assert_eq!(
                        is_irreducible(&poly(&cs), &BigUint::from(p)),
                        brute_irreducible(&cs, p),
                        "p={p} f={cs:?}"
                    );
                }
            }
        }
    }
}

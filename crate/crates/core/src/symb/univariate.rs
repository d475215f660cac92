//! Dense univariate polynomials over Q.
//!
//! Division, GCD and exact square roots live here; none of them is ever
//! applied to multivariate data.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::Q;

/// Coefficients ascending; empty for zero, otherwise the last entry is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Q>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| Q::from_integer(BigInt::from(c))).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::new(Vec::new());
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let d = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.coeffs[d].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (UniPoly::new(Vec::new()), self.clone());
        }
        let mut quo = vec![Q::zero(); rem.len() - d];
        for k in (0..quo.len()).rev() {
            let c = &rem[k + d] * &lead_inv;
            if !c.is_zero() {
                for (j, dj) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dj;
                }
            }
            quo[k] = c;
        }
        rem.truncate(d);
        (UniPoly::new(quo), UniPoly::new(rem))
    }

    /// Monic greatest common divisor; zero iff both inputs are zero.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// The `h` with `h^2 == self` and positive leading coefficient, found by
    /// matching coefficients from the top down.
    pub fn exact_sqrt(&self) -> Option<UniPoly> {
        let Some(deg) = self.degree() else {
            return Some(self.clone());
        };
        if deg % 2 != 0 {
            return None;
        }
        let half = deg / 2;
        let lead = rational_sqrt(&self.coeffs[deg])?;
        let two_lead_inv = (&lead + &lead).recip();
        let mut h = vec![Q::zero(); half + 1];
        h[half] = lead;
        for k in (0..half).rev() {
            // coefficient of x^(half + k) in h^2 is 2 h_half h_k + sum over
            // i + j = half + k with k < i, j < half
            let mut rest = Q::zero();
            for i in (k + 1)..half {
                let j = half + k - i;
                if j > k && j < half {
                    rest += &h[i] * &h[j];
                }
            }
            h[k] = (&self.coeffs[half + k] - rest) * &two_lead_inv;
        }
        let h = UniPoly::new(h);
        (h.mul(&h) == *self).then_some(h)
    }
}

/// Square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = int_sqrt(x.numer())?;
    let d = int_sqrt(x.denom())?;
    Some(Q::new(n, d))
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

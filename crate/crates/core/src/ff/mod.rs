//! Exact arithmetic in odd-characteristic finite fields F_q, q = p^m.
//!
//! Elements are coefficient vectors of length m over F_p, reduced modulo a
//! user-supplied monic irreducible polynomial when m > 1. The canonical order
//! on elements is lexicographic on that vector, constant term first; for prime
//! fields this is the integer order of the residue in [0, p).

mod poly;
pub mod prime;
mod small;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use prime::Primality;
pub use small::SmallPrimeField;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("NotPrime: {0} is not prime")]
    NotPrime(BigUint),
    #[error("PrimalityUnverified: {0} exceeds the deterministic primality bound; pass the trust flag to accept it")]
    PrimalityUnverified(BigUint),
    #[error("EvenCharacteristic: characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("NotIrreducible: modulus is reducible over F_{0}")]
    NotIrreducible(BigUint),
    #[error("InvalidModulus: {0}")]
    InvalidModulus(String),
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("Parse: {0}")]
    Parse(String),
}

/// Characteristic, extension degree and (for m > 1) the defining modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    p: BigUint,
    m: usize,
    modulus: Option<Vec<BigUint>>,
}

impl FieldSpec {
    pub fn prime(p: impl Into<BigUint>) -> Self {
        FieldSpec { p: p.into(), m: 1, modulus: None }
    }

    /// `modulus` lists m + 1 coefficients, constant term first, and must be monic.
    pub fn extension(p: impl Into<BigUint>, modulus: Vec<BigUint>) -> Self {
        let m = modulus.len().saturating_sub(1);
        FieldSpec { p: p.into(), m, modulus: Some(modulus) }
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> Option<&[BigUint]> {
        self.modulus.as_deref()
    }
}

/// Grammar: `p` for prime fields, `p^m:c0,c1,...,cm` for extensions.
impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, FieldError> {
        let s = s.trim();
        let parse_big = |t: &str| {
            t.trim()
                .parse::<BigUint>()
                .map_err(|_| FieldError::Parse(format!("bad integer {t:?} in field spec")))
        };
        let Some((head, coeffs)) = s.split_once(':') else {
            if s.contains('^') {
                return Err(FieldError::Parse(format!("extension field {s:?} needs a modulus")));
            }
            return Ok(FieldSpec::prime(parse_big(s)?));
        };
        let (p, m) = head
            .split_once('^')
            .ok_or_else(|| FieldError::Parse(format!("expected p^m before ':' in {s:?}")))?;
        let p = parse_big(p)?;
        let m: usize = m
            .trim()
            .parse()
            .map_err(|_| FieldError::Parse(format!("bad extension degree {m:?}")))?;
        let modulus = coeffs.split(',').map(parse_big).collect::<Result<Vec<_>, _>>()?;
        if modulus.len() != m + 1 {
            return Err(FieldError::Parse(format!(
                "degree {m} modulus needs {} coefficients, got {}",
                m + 1,
                modulus.len()
            )));
        }
        if m == 1 {
            return Ok(FieldSpec::prime(p));
        }
        Ok(FieldSpec::extension(p, modulus))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.modulus {
            None => write!(f, "{}", self.p),
            Some(cs) => {
                let joined: Vec<String> = cs.iter().map(ToString::to_string).collect();
                write!(f, "{}^{}:{}", self.p, self.m, joined.join(","))
            }
        }
    }
}

/// An element of F_q. Always canonical: `coeffs.len() == m`, entries in [0, p).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    coeffs: Vec<BigUint>,
}

impl FieldElem {
    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// Elements serialize as the decimal residue (m = 1) or a comma-joined
/// coefficient list (m > 1).
impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// A validated field. Immutable apart from the write-once non-residue cache.
#[derive(Debug)]
pub struct FieldCtx {
    spec: FieldSpec,
    q: BigUint,
    // (q - 1) / 2
    half_order: BigUint,
    // q - 1 = 2^two_adicity * odd_part
    odd_part: BigUint,
    two_adicity: u64,
    nonresidue: OnceLock<FieldElem>,
}

impl FieldCtx {
    pub fn new(spec: FieldSpec) -> Result<Self, FieldError> {
        Self::build(spec, false)
    }

    /// Like [`FieldCtx::new`], but accepts characteristics above the
    /// deterministic Miller–Rabin bound once they pass the extended witness set.
    pub fn new_trusted(spec: FieldSpec) -> Result<Self, FieldError> {
        Self::build(spec, true)
    }

    fn build(spec: FieldSpec, trust: bool) -> Result<Self, FieldError> {
        let p = &spec.p;
        if p == &BigUint::from(2u32) {
            return Err(FieldError::EvenCharacteristic);
        }
        match prime::classify(p) {
            Primality::Prime => {}
            Primality::Composite => return Err(FieldError::NotPrime(p.clone())),
            Primality::ProbablePrime if trust => {}
            Primality::ProbablePrime => return Err(FieldError::PrimalityUnverified(p.clone())),
        }
        if spec.m == 0 {
            return Err(FieldError::InvalidModulus("extension degree must be at least 1".into()));
        }
        if let Some(modulus) = &spec.modulus {
            if spec.m == 1 {
                return Err(FieldError::InvalidModulus("m = 1 takes no modulus".into()));
            }
            if modulus.iter().any(|c| c >= p) {
                return Err(FieldError::InvalidModulus("coefficients must lie in [0, p)".into()));
            }
            if !modulus.last().is_some_and(One::is_one) {
                return Err(FieldError::InvalidModulus("modulus must be monic".into()));
            }
            if !poly::is_irreducible(modulus, p) {
                return Err(FieldError::NotIrreducible(p.clone()));
            }
        } else if spec.m > 1 {
            return Err(FieldError::InvalidModulus("extension fields need a modulus".into()));
        }

        let q = num_traits::pow(p.clone(), spec.m);
        let q_minus_one = &q - 1u32;
        let two_adicity = q_minus_one.trailing_zeros().expect("q > 2");
        let odd_part = &q_minus_one >> two_adicity;
        Ok(FieldCtx {
            half_order: q_minus_one >> 1,
            q,
            odd_part,
            two_adicity,
            spec,
            nonresidue: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> &BigUint {
        &self.spec.p
    }

    pub fn m(&self) -> usize {
        self.spec.m
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    /// q as a machine integer, if it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.q.to_u64()
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { coeffs: vec![BigUint::zero(); self.spec.m] }
    }

    pub fn one(&self) -> FieldElem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> FieldElem {
        self.from_biguint(BigUint::from(v))
    }

    pub fn from_i64(&self, v: i64) -> FieldElem {
        self.from_bigint(&BigInt::from(v))
    }

    /// Embeds an integer via the prime subfield.
    pub fn from_biguint(&self, v: BigUint) -> FieldElem {
        let mut e = self.zero();
        e.coeffs[0] = v % &self.spec.p;
        e
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElem {
        let p = BigInt::from(self.spec.p.clone());
        let r = v.mod_floor(&p);
        self.from_biguint(r.to_biguint().expect("non-negative"))
    }

    /// Builds an element from coefficients (constant first), reducing each
    /// mod p. At most m coefficients are accepted.
    pub fn element(&self, coeffs: &[BigInt]) -> Result<FieldElem, FieldError> {
        if coeffs.is_empty() || coeffs.len() > self.spec.m {
            return Err(FieldError::Parse(format!(
                "expected 1..={} coefficients, got {}",
                self.spec.m,
                coeffs.len()
            )));
        }
        let p = BigInt::from(self.spec.p.clone());
        let mut e = self.zero();
        for (slot, c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = c.mod_floor(&p).to_biguint().expect("non-negative");
        }
        Ok(e)
    }

    pub fn parse_elem(&self, s: &str) -> Result<FieldElem, FieldError> {
        let coeffs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| FieldError::Parse(format!("bad field element {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.element(&coeffs)
    }

    /// The `index`-th element in canonical ascending order.
    pub fn element_at(&self, index: u64) -> FieldElem {
        let p = &self.spec.p;
        let mut e = self.zero();
        let mut k = BigUint::from(index);
        for slot in e.coeffs.iter_mut().rev() {
            let (quo, rem) = k.div_rem(p);
            *slot = rem;
            k = quo;
        }
        e
    }

    /// Position of `x` in canonical ascending order.
    pub fn index_of(&self, x: &FieldElem) -> BigUint {
        x.coeffs.iter().fold(BigUint::zero(), |acc, c| acc * &self.spec.p + c)
    }

    /// All elements in canonical ascending order. Only sensible for small q.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let q = self.order_u64().expect("field too large to enumerate");
        (0..q).map(move |i| self.element_at(i))
    }

    pub fn arith(&self, op: ArithOp, x: &FieldElem, y: &FieldElem) -> FieldElem {
        match op {
            ArithOp::Add => self.add(x, y),
            ArithOp::Sub => self.sub(x, y),
            ArithOp::Mul => self.mul(x, y),
            ArithOp::Neg => self.neg(x),
        }
    }

    pub fn add(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let p = &self.spec.p;
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(a, b)| {
                let s = a + b;
                if &s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        FieldElem { coeffs }
    }

    pub fn sub(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let p = &self.spec.p;
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(a, b)| if a >= b { a - b } else { a + p - b })
            .collect();
        FieldElem { coeffs }
    }

    pub fn neg(&self, x: &FieldElem) -> FieldElem {
        let p = &self.spec.p;
        let coeffs = x
            .coeffs
            .iter()
            .map(|a| if a.is_zero() { BigUint::zero() } else { p - a })
            .collect();
        FieldElem { coeffs }
    }

    pub fn mul(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        let p = &self.spec.p;
        match &self.spec.modulus {
            None => FieldElem { coeffs: vec![(&x.coeffs[0] * &y.coeffs[0]) % p] },
            Some(modulus) => {
                let mut coeffs = poly::mulmod(&x.coeffs, &y.coeffs, modulus, p);
                coeffs.resize(self.spec.m, BigUint::zero());
                FieldElem { coeffs }
            }
        }
    }

    pub fn square(&self, x: &FieldElem) -> FieldElem {
        self.mul(x, x)
    }

    pub fn inv(&self, x: &FieldElem) -> Result<FieldElem, FieldError> {
        if x.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match &self.spec.modulus {
            None => {
                let r = x.coeffs[0].modinv(&self.spec.p).expect("p prime, x nonzero");
                Ok(FieldElem { coeffs: vec![r] })
            }
            Some(_) => Ok(self.pow(x, &(&self.q - 2u32))),
        }
    }

    pub fn div(&self, x: &FieldElem, y: &FieldElem) -> Result<FieldElem, FieldError> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    /// Square-and-multiply; `pow(0, 0) = 1`.
    pub fn pow(&self, x: &FieldElem, e: &BigUint) -> FieldElem {
        if self.spec.modulus.is_none() {
            return FieldElem { coeffs: vec![x.coeffs[0].modpow(e, &self.spec.p)] };
        }
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, x);
            }
        }
        acc
    }

    pub fn pow_u64(&self, x: &FieldElem, e: u64) -> FieldElem {
        self.pow(x, &BigUint::from(e))
    }

    /// Quadratic character by Euler's criterion: 0, +1 or -1.
    pub fn legendre(&self, x: &FieldElem) -> i8 {
        if x.is_zero() {
            return 0;
        }
        if self.pow(x, &self.half_order) == self.one() {
            1
        } else {
            -1
        }
    }

    pub fn is_square(&self, x: &FieldElem) -> bool {
        self.legendre(x) >= 0
    }

    /// First quadratic non-residue in canonical order. Cached after the first call.
    pub fn find_nonresidue(&self) -> FieldElem {
        self.nonresidue
            .get_or_init(|| {
                let mut index = 1u64;
                loop {
                    let v = self.element_at(index);
                    if self.legendre(&v) == -1 {
                        return v;
                    }
                    index += 1;
                }
            })
            .clone()
    }

    /// The smaller of {r, -r} in canonical order.
    pub fn canonical_root(&self, r: FieldElem) -> FieldElem {
        let neg = self.neg(&r);
        if neg < r {
            neg
        } else {
            r
        }
    }

    /// Tonelli–Shanks. Returns the canonical root, or `None` for non-residues.
    pub fn sqrt(&self, x: &FieldElem) -> Option<FieldElem> {
        match self.legendre(x) {
            0 => return Some(self.zero()),
            -1 => return None,
            _ => {}
        }
        let one = self.one();
        let mut m = self.two_adicity;
        let mut c = self.pow(&self.find_nonresidue(), &self.odd_part);
        let mut t = self.pow(x, &self.odd_part);
        let mut r = self.pow(x, &((&self.odd_part + 1u32) >> 1));
        while t != one {
            // least i with t^(2^i) = 1; i < m because t has order dividing 2^(m-1)
            let mut i = 0u64;
            let mut probe = t.clone();
            while probe != one {
                probe = self.square(&probe);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.square(&b);
            }
            m = i;
            c = self.square(&b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(self.canonical_root(r))
    }
}

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{BuildHasherDefault, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{SymbError, UniPoly, Var, Q};

const BITS: u32 = 16;
const FIELD: u128 = 0xFFFF;
const NVARS: usize = Var::ALL.len();

/// A monomial over the fixed variable universe, packed as 16-bit exponent
/// fields with `a` in the most significant position. Integer order on the
/// packed value is lexicographic order on exponent vectors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    fn shift(v: Var) -> u32 {
        BITS * (NVARS - 1 - v.index()) as u32
    }

    pub fn var(v: Var, e: u32) -> Monomial {
        assert!(e as u128 <= FIELD, "exponent {e} too large");
        Monomial((e as u128) << Self::shift(v))
    }

    pub fn from_exponents(exps: &[(Var, u32)]) -> Monomial {
        exps.iter().fold(Monomial::ONE, |m, &(v, e)| m.mul(Monomial::var(v, e)))
    }

    pub fn exp(self, v: Var) -> u32 {
        ((self.0 >> Self::shift(v)) & FIELD) as u32
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn degree(self) -> u32 {
        Var::ALL.iter().map(|&v| self.exp(v)).sum()
    }

    /// Caller guarantees no field overflows.
    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial(self.0 + other.0)
    }

    pub fn pow(self, e: u32) -> Monomial {
        Monomial::from_exponents(
            &Var::ALL.map(|v| (v, self.exp(v).checked_mul(e).expect("exponent overflow"))),
        )
    }

    pub fn divides(self, other: Monomial) -> bool {
        Var::ALL.iter().all(|&v| self.exp(v) <= other.exp(v))
    }

    /// `self / other`; requires `other.divides(self)`.
    pub fn div(self, other: Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0 - other.0)
    }

    pub fn min(self, other: Monomial) -> Monomial {
        Monomial::from_exponents(&Var::ALL.map(|v| (v, self.exp(v).min(other.exp(v)))))
    }

    pub fn max(self, other: Monomial) -> Monomial {
        Monomial::from_exponents(&Var::ALL.map(|v| (v, self.exp(v).max(other.exp(v)))))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct MonomialHasher(u64);

impl Hasher for MonomialHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.write_u64(b as u64);
        }
    }

    fn write_u64(&mut self, n: u64) {
        self.0 = (self.0.rotate_left(5) ^ n).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
    }

    fn write_u128(&mut self, n: u128) {
        self.write_u64(n as u64);
        self.write_u64((n >> 64) as u64);
    }
}

type MonomialMap<C = Q> = HashMap<Monomial, C, BuildHasherDefault<MonomialHasher>>;

/// Product of two term lists, sorted, without zero coefficients.
fn convolve<C>(ma: &[Monomial], ca: &[C], mb: &[Monomial], cb: &[C]) -> Vec<(Monomial, C)>
where
    C: Zero + AddAssign,
    for<'x> &'x C: Mul<&'x C, Output = C>,
{
    let mut acc = MonomialMap::<C>::with_capacity_and_hasher(
        (ma.len() * mb.len()).min(1 << 20),
        Default::default(),
    );
    for (m1, c1) in ma.iter().zip(ca) {
        for (m2, c2) in mb.iter().zip(cb) {
            *acc.entry(m1.mul(*m2)).or_insert_with(C::zero) += c1 * c2;
        }
    }
    let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    terms.sort_unstable_by_key(|(m, _)| *m);
    terms
}

/// Sparse polynomial with exact rational coefficients. Terms are sorted by
/// ascending monomial and never carry a zero coefficient, so structural
/// equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: Vec<(Monomial, Q)>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Q::from_integer(BigInt::from(c)))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Q::one(), Monomial::var(v, 1))
    }

    pub fn term(c: Q, m: Monomial) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MPoly { terms: vec![(m, c)] }
        }
    }

    /// Builds from arbitrary (monomial, coefficient) pairs, merging duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut acc = MonomialMap::default();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Q::zero) += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: MonomialMap) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|(m, _)| *m);
        MPoly { terms }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, &Q)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(One::is_one)
    }

    pub fn as_constant(&self) -> Option<&Q> {
        match self.terms.as_slice() {
            [] => None,
            [(m, c)] if m.is_one() => Some(c),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.as_constant().is_some()
    }

    /// Largest monomial and its coefficient.
    pub fn leading(&self) -> Option<(Monomial, &Q)> {
        self.terms.last().map(|(m, c)| (*m, c))
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Variables that occur with positive exponent, in canonical order.
    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|&v| self.terms.iter().any(|(m, _)| m.exp(v) > 0))
            .collect()
    }

    fn max_exponents(&self) -> [u32; NVARS] {
        let mut out = [0; NVARS];
        for (m, _) in &self.terms {
            for v in Var::ALL {
                out[v.index()] = out[v.index()].max(m.exp(v));
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn mul_monomial(&self, mono: Monomial) -> MPoly {
        if !self.is_zero() {
            let (a, b) = (self.max_exponents(), mono);
            for v in Var::ALL {
                assert!(a[v.index()] + b.exp(v) <= FIELD as u32, "exponent overflow in {v}");
            }
        }
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect() }
    }

    pub fn div_monomial(&self, mono: Monomial) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.div(mono), c.clone())).collect() }
    }

    /// Greatest monomial dividing every term (1 for the zero polynomial).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter().map(|(m, _)| *m);
        match it.next() {
            None => Monomial::ONE,
            Some(first) => it.fold(first, Monomial::min),
        }
    }

    /// Splits `self = content * prim` where `prim` has coprime integer
    /// coefficients and a positive leading coefficient.
    pub fn primitive(&self) -> (Q, MPoly) {
        let Some((_, lead)) = self.leading() else {
            return (Q::zero(), MPoly::zero());
        };
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Q::new(num_gcd, den_lcm);
        if lead.is_negative() {
            content = -content;
        }
        if content.is_one() {
            return (content, self.clone());
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    pub fn pow(&self, e: u32) -> MPoly {
        if e == 0 {
            return MPoly::one();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return MPoly::term(num_traits::pow(c.clone(), e as usize), m.pow(e));
        }
        // Repeated multiplication by the (small) base beats squaring for
        // sparse inputs.
        let mut acc = self.clone();
        for _ in 1..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &BTreeMap<Var, Q>) -> Result<Q, SymbError> {
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for v in Var::ALL {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                let x = point.get(&v).ok_or(SymbError::UnboundVariable(v))?;
                term *= num_traits::pow(x.clone(), e as usize);
            }
            total += term;
        }
        Ok(total)
    }

    /// Dense view as a polynomial in `v`; `None` if any other variable occurs.
    pub fn to_univariate(&self, v: Var) -> Option<UniPoly> {
        let only_v = Monomial::var(v, FIELD as u32);
        let mut coeffs = vec![Q::zero(); self.degree_in(v).map_or(0, |d| d as usize + 1)];
        for (m, c) in &self.terms {
            if !m.divides(only_v) {
                return None;
            }
            coeffs[m.exp(v) as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn from_univariate(p: &UniPoly, v: Var) -> MPoly {
        MPoly::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(v, i as u32), c.clone())),
        )
    }

    fn mul_impl(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        let (a, b) = (self.max_exponents(), other.max_exponents());
        for v in Var::ALL {
            assert!(a[v.index()] + b[v.index()] <= FIELD as u32, "exponent overflow in {v}");
        }
        if self.terms.len() == 1 || other.terms.len() == 1 {
            let (single, many) = if self.terms.len() == 1 { (self, other) } else { (other, self) };
            let (m, c) = &single.terms[0];
            // Multiplying by one monomial preserves the order.
            return MPoly {
                terms: many.terms.iter().map(|(n, d)| (n.mul(*m), d * c)).collect(),
            };
        }
        let ints = |p: &MPoly| -> Option<Vec<BigInt>> {
            p.terms.iter().map(|(_, c)| c.is_integer().then(|| c.numer().clone())).collect()
        };
        let monos = |p: &MPoly| p.terms.iter().map(|(m, _)| *m).collect::<Vec<_>>();
        let (ma, mb) = (monos(self), monos(other));
        match (ints(self), ints(other)) {
            (Some(x), Some(y)) => {
                // One output monomial collects at most min(len) products.
                let bits = |v: &[BigInt]| v.iter().map(BigInt::bits).max().unwrap_or(0);
                let len_bits = u64::from(usize::BITS - x.len().min(y.len()).leading_zeros());
                let terms = if bits(&x) + bits(&y) + len_bits < 126 {
                    let small = |v: Vec<BigInt>| -> Vec<i128> {
                        v.iter().map(|c| c.to_i128().expect("bit length checked")).collect()
                    };
                    convolve(&ma, &small(x), &mb, &small(y))
                        .into_iter()
                        .map(|(m, c)| (m, Q::from_integer(BigInt::from(c))))
                        .collect()
                } else {
                    convolve(&ma, &x, &mb, &y).into_iter().map(|(m, c)| (m, Q::from_integer(c))).collect()
                };
                MPoly { terms }
            }
            _ => {
                let coeffs = |p: &MPoly| p.terms.iter().map(|(_, c)| c.clone()).collect::<Vec<_>>();
                MPoly { terms: convolve(&ma, &coeffs(self), &mb, &coeffs(other)) }
            }
        }
    }

    fn add_impl(&self, other: &MPoly, negate: bool) -> MPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let rhs = |c: &Q| if negate { -c.clone() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0, rhs(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, rhs(c))));
        MPoly { terms: out }
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.add_impl(rhs, false)
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.add_impl(rhs, true)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.mul_impl(rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

/// Terms in descending canonical order, written `coeff*a^i*b^j*t^k*u^l`
/// and joined with ` + `.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symb::{q, q_frac};

    fn t() -> MPoly {
        MPoly::var(Var::T)
    }

    #[test]
    fn basic_identities() {
        let one = MPoly::one();
        let lhs = &(&t() + &one) * &(&t() - &one);
        assert_eq!(lhs, &t().pow(2) - &one);
        let ab = &MPoly::var(Var::A) + &MPoly::var(Var::B);
        assert_eq!(ab.pow(0), one);
        // (t^2 g)^(n-1) = t^4 g^2 for n = 3
        let g = &(&t().pow(3) + &MPoly::var(Var::A)) + &one;
        assert_eq!((&t().pow(2) * &g).pow(2), &t().pow(4) * &g.pow(2));
    }

    #[test]
    fn display_is_descending() {
        let p = &(&t().pow(2).scale(&q_frac(3, 2)) * &MPoly::var(Var::A)) - &MPoly::from_int(1);
        assert_eq!(p.to_string(), "3/2*a*t^2 + -1");
        assert_eq!(MPoly::zero().to_string(), "0");
        let m = Monomial::from_exponents(&[(Var::A, 2), (Var::B, 1), (Var::T, 3), (Var::U, 4)]);
        assert_eq!(MPoly::term(q(-7), m).to_string(), "-7*a^2*b*t^3*u^4");
    }

    #[test]
    fn primitive_part() {
        let p = &t().scale(&q_frac(-3, 2)) + &MPoly::constant(q_frac(9, 4));
        let (c, prim) = p.primitive();
        assert_eq!(c, q_frac(-3, 4));
        assert_eq!(prim, &t().scale(&q(2)) - &MPoly::from_int(3));
        assert_eq!(prim.scale(&c), p);
    }

    #[test]
    fn monomial_content_and_eval() {
        let p = &t().pow(3) * &(&MPoly::var(Var::U) + &t());
        assert_eq!(p.monomial_content(), Monomial::var(Var::T, 3));
        let point = BTreeMap::from([(Var::T, q(2)), (Var::U, q_frac(1, 2))]);
        assert_eq!(p.eval(&point).unwrap(), q(20));
        assert_eq!(
            p.eval(&BTreeMap::from([(Var::T, q(1))])),
            Err(SymbError::UnboundVariable(Var::U))
        );
    }

    #[test]
    fn univariate_round_trip() {
        let p = &t().pow(4) - &t().scale(&q(3));
        let u = p.to_univariate(Var::T).unwrap();
        assert_eq!(MPoly::from_univariate(&u, Var::T), p);
        assert!((&p * &MPoly::var(Var::A)).to_univariate(Var::T).is_none());
    }
}

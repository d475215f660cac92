//! One set of ring operations shared by finite fields, exact rationals and
//! rational functions, so the curve formulas are written once and run
//! unchanged in all three settings.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ff::{FieldCtx, FieldElem, SmallPrimeField};
use crate::symb::{RatFun, Q};

pub trait Ring {
    type Elem: Clone + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    /// `None` when `y` is zero.
    fn div(&self, x: &Self::Elem, y: &Self::Elem) -> Option<Self::Elem>;
    fn equal(&self, x: &Self::Elem, y: &Self::Elem) -> bool;

    fn pow(&self, x: &Self::Elem, e: u32) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..u32::BITS - e.leading_zeros()).rev() {
            acc = self.mul(&acc, &acc);
            if (e >> i) & 1 == 1 {
                acc = self.mul(&acc, x);
            }
        }
        acc
    }
}

impl Ring for FieldCtx {
    type Elem = FieldElem;

    fn zero(&self) -> FieldElem {
        FieldCtx::zero(self)
    }
    fn one(&self) -> FieldElem {
        FieldCtx::one(self)
    }
    fn from_i64(&self, v: i64) -> FieldElem {
        FieldCtx::from_i64(self, v)
    }
    fn add(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        FieldCtx::add(self, x, y)
    }
    fn sub(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        FieldCtx::sub(self, x, y)
    }
    fn mul(&self, x: &FieldElem, y: &FieldElem) -> FieldElem {
        FieldCtx::mul(self, x, y)
    }
    fn neg(&self, x: &FieldElem) -> FieldElem {
        FieldCtx::neg(self, x)
    }
    fn is_zero(&self, x: &FieldElem) -> bool {
        x.is_zero()
    }
    fn div(&self, x: &FieldElem, y: &FieldElem) -> Option<FieldElem> {
        FieldCtx::div(self, x, y).ok()
    }
    fn equal(&self, x: &FieldElem, y: &FieldElem) -> bool {
        x == y
    }
    fn pow(&self, x: &FieldElem, e: u32) -> FieldElem {
        self.pow_u64(x, e as u64)
    }
}

/// A finite field that can be listed in canonical order and has square roots.
pub trait FiniteField: Ring<Elem: Ord + Send + Sync> + Sync {
    /// `None` when q does not fit in a u64.
    fn order(&self) -> Option<u64>;
    fn element_at(&self, index: u64) -> Self::Elem;
    fn legendre(&self, x: &Self::Elem) -> i8;
    /// The canonical root, or `None` for non-squares.
    fn sqrt(&self, x: &Self::Elem) -> Option<Self::Elem>;
}

impl FiniteField for FieldCtx {
    fn order(&self) -> Option<u64> {
        self.order_u64()
    }
    fn element_at(&self, index: u64) -> FieldElem {
        FieldCtx::element_at(self, index)
    }
    fn legendre(&self, x: &FieldElem) -> i8 {
        FieldCtx::legendre(self, x)
    }
    fn sqrt(&self, x: &FieldElem) -> Option<FieldElem> {
        FieldCtx::sqrt(self, x)
    }
}

impl Ring for SmallPrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p() as i64) as u64
    }
    fn add(&self, x: &u64, y: &u64) -> u64 {
        SmallPrimeField::add(self, *x, *y)
    }
    fn sub(&self, x: &u64, y: &u64) -> u64 {
        SmallPrimeField::sub(self, *x, *y)
    }
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        SmallPrimeField::mul(self, *x, *y)
    }
    fn neg(&self, x: &u64) -> u64 {
        SmallPrimeField::neg(self, *x)
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn div(&self, x: &u64, y: &u64) -> Option<u64> {
        self.inv(*y).map(|i| SmallPrimeField::mul(self, *x, i))
    }
    fn equal(&self, x: &u64, y: &u64) -> bool {
        x == y
    }
    fn pow(&self, x: &u64, e: u32) -> u64 {
        SmallPrimeField::pow(self, *x, u64::from(e))
    }
}

impl FiniteField for SmallPrimeField {
    fn order(&self) -> Option<u64> {
        Some(self.p())
    }
    fn element_at(&self, index: u64) -> u64 {
        index
    }
    fn legendre(&self, x: &u64) -> i8 {
        SmallPrimeField::legendre(self, *x)
    }
    fn sqrt(&self, x: &u64) -> Option<u64> {
        SmallPrimeField::sqrt(self, *x)
    }
}

/// The field Q of exact rationals.
#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Q;

    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn from_i64(&self, v: i64) -> Q {
        Q::from_integer(BigInt::from(v))
    }
    fn add(&self, x: &Q, y: &Q) -> Q {
        x + y
    }
    fn sub(&self, x: &Q, y: &Q) -> Q {
        x - y
    }
    fn mul(&self, x: &Q, y: &Q) -> Q {
        x * y
    }
    fn neg(&self, x: &Q) -> Q {
        -x.clone()
    }
    fn is_zero(&self, x: &Q) -> bool {
        x.is_zero()
    }
    fn div(&self, x: &Q, y: &Q) -> Option<Q> {
        (!y.is_zero()).then(|| x / y)
    }
    fn equal(&self, x: &Q, y: &Q) -> bool {
        x == y
    }
}

/// The field Q(a, b, c, d, t, u, x) of rational functions.
#[derive(Clone, Copy, Debug, Default)]
pub struct Functions;

impl Ring for Functions {
    type Elem = RatFun;

    fn zero(&self) -> RatFun {
        RatFun::zero()
    }
    fn one(&self) -> RatFun {
        RatFun::one()
    }
    fn from_i64(&self, v: i64) -> RatFun {
        RatFun::from_int(v)
    }
    fn add(&self, x: &RatFun, y: &RatFun) -> RatFun {
        x.add(y)
    }
    fn sub(&self, x: &RatFun, y: &RatFun) -> RatFun {
        x.sub(y)
    }
    fn mul(&self, x: &RatFun, y: &RatFun) -> RatFun {
        x.mul(y)
    }
    fn neg(&self, x: &RatFun) -> RatFun {
        x.neg()
    }
    fn is_zero(&self, x: &RatFun) -> bool {
        x.is_zero()
    }
    fn div(&self, x: &RatFun, y: &RatFun) -> Option<RatFun> {
        x.div(y).ok()
    }
    fn equal(&self, x: &RatFun, y: &RatFun) -> bool {
        x.rf_eq(y)
    }
    fn pow(&self, x: &RatFun, e: u32) -> RatFun {
        x.pow(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldSpec;

    #[test]
    fn default_pow_matches_repeated_multiplication() {
        let r = Rationals;
        let x = Q::new(BigInt::from(3), BigInt::from(2));
        let mut acc = r.one();
        for e in 0..12u32 {
            assert_eq!(r.pow(&x, e), acc);
            acc = r.mul(&acc, &x);
        }
        let f = FieldCtx::new(FieldSpec::prime(11u32)).unwrap();
        assert_eq!(Ring::pow(&f, &f.from_u64(2), 5), f.from_u64(10));
        assert!(Ring::div(&f, &f.one(), &f.zero()).is_none());
    }
}

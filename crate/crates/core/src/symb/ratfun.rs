use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{Monomial, MPoly, SymbError, Var, Q};

/// `scale * mono * prod(factor^exp)`. Factors are primitive, free of monomial
/// content, non-constant and pairwise distinct, so equal factors are found by
/// structural comparison alone.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Factored {
    scale: Q,
    mono: Monomial,
    factors: Vec<(MPoly, u32)>,
}

impl Factored {
    fn zero() -> Self {
        Factored { scale: Q::zero(), mono: Monomial::ONE, factors: Vec::new() }
    }

    fn one() -> Self {
        Factored { scale: Q::one(), mono: Monomial::ONE, factors: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    fn from_poly(p: MPoly) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        let (scale, prim) = p.primitive();
        let mono = prim.monomial_content();
        let rest = if mono.is_one() { prim } else { prim.div_monomial(mono) };
        let factors = if rest.is_one() { Vec::new() } else { vec![(rest, 1)] };
        Factored { scale, mono, factors }
    }

    fn push_factor(&mut self, f: &MPoly, e: u32) {
        if e == 0 {
            return;
        }
        match self.factors.iter_mut().find(|(g, _)| g == f) {
            Some((_, k)) => *k += e,
            None => self.factors.push((f.clone(), e)),
        }
    }

    fn exponent_of(&self, f: &MPoly) -> u32 {
        self.factors.iter().find(|(g, _)| g == f).map_or(0, |(_, e)| *e)
    }

    fn mul(&self, other: &Factored) -> Factored {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.scale *= &other.scale;
        out.mono = out.mono.mul(other.mono);
        for (f, e) in &other.factors {
            out.push_factor(f, *e);
        }
        out
    }

    fn pow(&self, e: u32) -> Factored {
        if e == 0 {
            return Self::one();
        }
        Factored {
            scale: num_traits::pow(self.scale.clone(), e as usize),
            mono: self.mono.pow(e),
            factors: self.factors.iter().map(|(f, k)| (f.clone(), k * e)).collect(),
        }
    }

    /// Removes the structurally common part of `a` and `b` (not the scales).
    fn cancel(a: &mut Factored, b: &mut Factored) {
        let common = a.mono.min(b.mono);
        a.mono = a.mono.div(common);
        b.mono = b.mono.div(common);
        for (f, ea) in a.factors.iter_mut() {
            if let Some((_, eb)) = b.factors.iter_mut().find(|(g, _)| g == f) {
                let k = (*ea).min(*eb);
                *ea -= k;
                *eb -= k;
            }
        }
        a.factors.retain(|(_, e)| *e > 0);
        b.factors.retain(|(_, e)| *e > 0);
    }

    /// Multiplies everything out, smallest pieces first.
    fn expand(&self) -> MPoly {
        if self.is_zero() {
            return MPoly::zero();
        }
        let mut pieces: Vec<MPoly> = self.factors.iter().map(|(f, e)| f.pow(*e)).collect();
        pieces.sort_by_key(MPoly::len);
        let mut acc = MPoly::term(self.scale.clone(), self.mono);
        for p in &pieces {
            acc = &acc * p;
        }
        acc
    }

    fn eval(&self, point: &BTreeMap<Var, Q>) -> Result<Q, SymbError> {
        let mut acc = self.scale.clone();
        if acc.is_zero() {
            return Ok(acc);
        }
        acc *= MPoly::term(Q::one(), self.mono).eval(point)?;
        for (f, e) in &self.factors {
            acc *= num_traits::pow(f.eval(point)?, *e as usize);
        }
        Ok(acc)
    }
}

/// A rational function `num / den` over Q. Not kept in lowest terms; only
/// structurally identical factors and monomial content are cancelled.
#[derive(Clone, Debug)]
pub struct RatFun {
    num: Factored,
    // scale is always 1
    den: Factored,
}

impl RatFun {
    pub fn zero() -> Self {
        RatFun { num: Factored::zero(), den: Factored::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(MPoly::from_int(c))
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MPoly::var(v))
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFun { num: Factored::from_poly(p), den: Factored::one() }
    }

    pub fn new(num: MPoly, den: MPoly) -> Result<Self, SymbError> {
        if den.is_zero() {
            return Err(SymbError::DivisionByZeroFunction);
        }
        Ok(RatFun::from_parts(Factored::from_poly(num), Factored::from_poly(den)))
    }

    fn from_parts(mut num: Factored, mut den: Factored) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        Factored::cancel(&mut num, &mut den);
        num.scale /= &den.scale;
        den.scale = Q::one();
        RatFun { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Expanded numerator.
    pub fn numerator(&self) -> MPoly {
        self.num.expand()
    }

    /// Expanded denominator.
    pub fn denominator(&self) -> MPoly {
        self.den.expand()
    }

    pub fn neg(&self) -> RatFun {
        let mut out = self.clone();
        out.num.scale = -out.num.scale;
        out
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        RatFun::from_parts(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun, SymbError> {
        if other.is_zero() {
            return Err(SymbError::DivisionByZeroFunction);
        }
        let mut flipped_den = other.num.clone();
        let mut flipped_num = other.den.clone();
        flipped_num.scale = flipped_den.scale.recip();
        flipped_den.scale = Q::one();
        Ok(RatFun::from_parts(self.num.mul(&flipped_num), self.den.mul(&flipped_den)))
    }

    pub fn pow(&self, e: u32) -> RatFun {
        RatFun { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        RatFun::sum([self, other])
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        RatFun::sum([self, &other.neg()])
    }

    /// Sum over a common structural denominator (least common multiple of
    /// the factor lists). A numerator part shared by every summand is kept
    /// factored instead of being expanded.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a RatFun>) -> RatFun {
        let items: Vec<&RatFun> = items.into_iter().filter(|r| !r.is_zero()).collect();
        match items.as_slice() {
            [] => return RatFun::zero(),
            [one] => return (*one).clone(),
            _ => {}
        }

        let mut lcm = Factored::one();
        for r in &items {
            lcm.mono = lcm.mono.max(r.den.mono);
            for (f, e) in &r.den.factors {
                let have = lcm.exponent_of(f);
                if *e > have {
                    lcm.push_factor(f, e - have);
                }
            }
        }

        let mut common = Factored::one();
        common.mono = items.iter().map(|r| r.num.mono).reduce(Monomial::min).expect("non-empty");
        for (f, _) in &items[0].num.factors {
            let k = items.iter().map(|r| r.num.exponent_of(f)).min().expect("non-empty");
            common.push_factor(f, k);
        }

        let mut total = MPoly::zero();
        for r in &items {
            let mut part = Factored::one();
            part.scale = r.num.scale.clone();
            part.mono = r.num.mono.div(common.mono).mul(lcm.mono.div(r.den.mono));
            for (f, e) in &r.num.factors {
                part.push_factor(f, e - common.exponent_of(f));
            }
            for (f, e) in &lcm.factors {
                part.push_factor(f, e - r.den.exponent_of(f));
            }
            total = &total + &part.expand();
        }
        RatFun::from_parts(common.mul(&Factored::from_poly(total)), lcm)
    }

    /// Exact equality: `self.num * other.den == other.num * self.den`.
    pub fn rf_eq(&self, other: &RatFun) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let mut lhs = self.num.mul(&other.den);
        let mut rhs = other.num.mul(&self.den);
        Factored::cancel(&mut lhs, &mut rhs);
        if lhs.factors.is_empty() && rhs.factors.is_empty() {
            return lhs.scale == rhs.scale && lhs.mono == rhs.mono;
        }
        lhs.expand() == rhs.expand()
    }

    /// Evaluates a polynomial at rational-function arguments. Variables
    /// without a binding stay symbolic.
    fn subst_poly(p: &MPoly, bindings: &BTreeMap<Var, RatFun>) -> RatFun {
        let terms: Vec<RatFun> = p
            .terms()
            .map(|(m, c)| {
                let mut term = RatFun::constant(c.clone());
                let mut leftover = Monomial::ONE;
                for v in Var::ALL {
                    let e = m.exp(v);
                    if e == 0 {
                        continue;
                    }
                    match bindings.get(&v) {
                        Some(b) => term = term.mul(&b.pow(e)),
                        None => leftover = leftover.mul(Monomial::var(v, e)),
                    }
                }
                term.mul(&RatFun::from_poly(MPoly::term(Q::one(), leftover)))
            })
            .collect();
        RatFun::sum(&terms)
    }

    fn subst_factored(f: &Factored, bindings: &BTreeMap<Var, RatFun>) -> RatFun {
        let mut acc = RatFun::constant(f.scale.clone());
        acc = acc.mul(&Self::subst_poly(&MPoly::term(Q::one(), f.mono), bindings));
        for (g, e) in &f.factors {
            acc = acc.mul(&Self::subst_poly(g, bindings).pow(*e));
        }
        acc
    }

    /// Composition: replaces each bound variable by its rational function.
    pub fn subst(&self, bindings: &BTreeMap<Var, RatFun>) -> Result<RatFun, SymbError> {
        let num = Self::subst_factored(&self.num, bindings);
        let den = Self::subst_factored(&self.den, bindings);
        num.div(&den).map_err(|_| SymbError::SubstitutionDenominatorZero)
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &BTreeMap<Var, Q>) -> Result<Q, SymbError> {
        let den = self.den.eval(point)?;
        if den.is_zero() {
            return Err(SymbError::PoleAtPoint);
        }
        Ok(self.num.eval(point)? / den)
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = [&self.num, &self.den]
            .iter()
            .flat_map(|f| {
                let mono_vars = Var::ALL.into_iter().filter(|&v| f.mono.exp(v) > 0);
                mono_vars.chain(f.factors.iter().flat_map(|(g, _)| g.variables()))
            })
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.denominator();
        if den.is_one() {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "({}) / ({})", self.numerator(), den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symb::{q, q_frac};

    fn t() -> RatFun {
        RatFun::var(Var::T)
    }

    fn int(c: i64) -> RatFun {
        RatFun::from_int(c)
    }

    #[test]
    fn arithmetic_examples() {
        let inv_t = int(1).div(&t()).unwrap();
        let two_over_t = inv_t.add(&inv_t);
        assert!(two_over_t.rf_eq(&int(2).div(&t()).unwrap()));
        assert!(t().mul(&inv_t).rf_eq(&int(1)));
        assert_eq!(t().div(&RatFun::zero()).unwrap_err(), SymbError::DivisionByZeroFunction);
        assert_eq!(
            RatFun::new(MPoly::one(), MPoly::zero()).unwrap_err(),
            SymbError::DivisionByZeroFunction
        );
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let tp = MPoly::var(Var::T);
        let one = MPoly::one();
        assert!(!t().rf_eq(&t().add(&int(1))));
        let lhs = RatFun::new(&tp.pow(2) - &one, &tp - &one).unwrap();
        assert!(lhs.rf_eq(&t().add(&int(1))));
        let unreduced = RatFun::new(tp.pow(2).scale(&q(2)), tp.pow(3)).unwrap();
        assert!(unreduced.rf_eq(&int(2).div(&t()).unwrap()));
        assert!(RatFun::zero().rf_eq(&t().sub(&t())));
        assert!(!RatFun::zero().rf_eq(&t()));
    }

    #[test]
    fn substitution() {
        let y = RatFun::var(Var::U);
        let f = y.pow(2);
        let x = RatFun::var(Var::X);
        let bindings = BTreeMap::from([(Var::U, t().pow(2).mul(&x))]);
        let got = f.subst(&bindings).unwrap();
        assert!(got.rf_eq(&t().pow(4).mul(&x.pow(2))));
        assert!(t().subst(&BTreeMap::new()).unwrap().rf_eq(&t()));
        let pole = int(1).div(&t().sub(&int(1))).unwrap();
        let at_one = BTreeMap::from([(Var::T, int(1))]);
        assert_eq!(pole.subst(&at_one).unwrap_err(), SymbError::SubstitutionDenominatorZero);
    }

    #[test]
    fn evaluation() {
        let tp = MPoly::var(Var::T);
        let f = RatFun::new(&tp.pow(2) - &MPoly::one(), &tp - &MPoly::one()).unwrap();
        assert_eq!(f.eval(&BTreeMap::from([(Var::T, q(2))])).unwrap(), q(3));
        let inv = int(1).div(&t()).unwrap();
        assert_eq!(inv.eval(&BTreeMap::from([(Var::T, q(0))])), Err(SymbError::PoleAtPoint));
        assert_eq!(inv.eval(&BTreeMap::from([(Var::T, q(4))])).unwrap(), q_frac(1, 4));
    }

    #[test]
    fn shared_factors_cancel() {
        let g = RatFun::from_poly(&MPoly::var(Var::U).pow(3) + &MPoly::one());
        let x = t().div(&g).unwrap();
        let back = x.mul(&g);
        assert!(back.rf_eq(&t()));
        assert!(back.denominator().is_one());
    }
}

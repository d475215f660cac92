//! The curve families C_i : y^2 = g_i(x) with g_1 = x^n + ax + b and
//! g_2 = x^n + ax^2 + bx, their parametrized hypersurface points, and the
//! deterministic point encoder.

pub mod certify;
mod encode;
mod maps;
mod special;
mod surface;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::ff::{FieldCtx, FieldElem};
use crate::ring::{Functions, Rationals, Ring};
use crate::symb::{RatFun, SymbError, Var, Q};

pub use encode::{
    encode, encode_detailed, encode_in, even_n_pair, even_n_point, EncodedPair, Encoding,
};
pub use maps::{
    displayed_denominator_vanishes, three_point_map, three_point_x2_forms, two_point_map, DomainRule,
};
pub use special::{quartic_curve, reciprocal_three, reciprocal_two, QuarticCurve};
pub use surface::{surface_curve, surface_curve_holds, Surface, SurfaceCurve};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("ZeroCoefficient: a and b must both be nonzero")]
    ZeroCoefficient,
    #[error("DegreeTooSmall: n = {0}")]
    DegreeTooSmall(u32),
    #[error("UnsupportedParity: n = {0}")]
    UnsupportedParity(u32),
    #[error("DenominatorVanishes: {0}")]
    DenominatorVanishes(&'static str),
    #[error("BasePointOnCurve: g(u) = 0")]
    BasePointOnCurve,
    #[error("DomainExcluded: {0}")]
    DomainExcluded(&'static str),
    #[error("NotOnCurve")]
    NotOnCurve,
    #[error("NotReciprocal")]
    NotReciprocal,
    #[error("NotAPerfectSquare")]
    NotAPerfectSquare,
    #[error("Parse: {0}")]
    Parse(String),
    #[error(transparent)]
    Symb(#[from] SymbError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    G1,
    G2,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::G1 => "g1",
            Family::G2 => "g2",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A curve y^2 = g(x) with coefficients in some ring.
#[derive(Clone, Debug)]
pub struct CurveParams<E> {
    family: Family,
    n: u32,
    a: E,
    b: E,
}

impl<E: Clone + fmt::Debug> CurveParams<E> {
    /// Requires a, b nonzero and n >= 2 (n = 2 only makes sense for the
    /// even-degree point).
    pub fn new<R: Ring<Elem = E>>(
        ring: &R,
        family: Family,
        n: u32,
        a: E,
        b: E,
    ) -> Result<Self, CurveError> {
        if n < 2 {
            return Err(CurveError::DegreeTooSmall(n));
        }
        if ring.is_zero(&a) || ring.is_zero(&b) {
            return Err(CurveError::ZeroCoefficient);
        }
        Ok(CurveParams { family, n, a, b })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> &E {
        &self.a
    }

    pub fn b(&self) -> &E {
        &self.b
    }

    /// g(x) for this family.
    pub fn g<R: Ring<Elem = E>>(&self, ring: &R, x: &E) -> E {
        g_eval(ring, self.family, self.n, &self.a, &self.b, x)
    }

    /// The same (n, a, b) read as the other family.
    pub fn with_family(&self, family: Family) -> Self {
        CurveParams { family, ..self.clone() }
    }
}

/// x^n + ax + b (G1) or x^n + ax^2 + bx (G2).
pub fn g_eval<R: Ring>(
    ring: &R,
    family: Family,
    n: u32,
    a: &R::Elem,
    b: &R::Elem,
    x: &R::Elem,
) -> R::Elem {
    let xn = ring.pow(x, n);
    match family {
        Family::G1 => ring.add(&ring.add(&xn, &ring.mul(a, x)), b),
        Family::G2 => {
            let inner = ring.add(&ring.mul(a, x), b);
            ring.add(&xn, &ring.mul(&inner, x))
        }
    }
}

impl CurveParams<RatFun> {
    /// a and b as free symbols.
    pub fn symbolic(family: Family, n: u32) -> Result<Self, CurveError> {
        CurveParams::new(&Functions, family, n, RatFun::var(Var::A), RatFun::var(Var::B))
    }
}

/// Textual curve description, `g1:n=3,a=1,b=1`, before it is bound to a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub family: Family,
    pub n: u32,
    pub a: BigInt,
    pub b: BigInt,
}

impl CurveSpec {
    pub fn over_field(&self, ctx: &FieldCtx) -> Result<CurveParams<FieldElem>, CurveError> {
        CurveParams::new(ctx, self.family, self.n, ctx.from_bigint(&self.a), ctx.from_bigint(&self.b))
    }

    pub fn over_rationals(&self) -> Result<CurveParams<Q>, CurveError> {
        CurveParams::new(
            &Rationals,
            self.family,
            self.n,
            Q::from_integer(self.a.clone()),
            Q::from_integer(self.b.clone()),
        )
    }
}

impl FromStr for CurveSpec {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self, CurveError> {
        let bad = |msg: &str| CurveError::Parse(format!("{msg} in curve spec {s:?}"));
        let (family, rest) = s.trim().split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let family = match family.trim().to_ascii_lowercase().as_str() {
            "g1" => Family::G1,
            "g2" => Family::G2,
            _ => return Err(bad("unknown family")),
        };
        let (mut n, mut a, mut b) = (None, None, None);
        for kv in rest.split(',') {
            let (k, v) = kv.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let v = v.trim();
            match k.trim() {
                "n" => n = Some(v.parse::<u32>().map_err(|_| bad("bad n"))?),
                "a" => a = Some(v.parse::<BigInt>().map_err(|_| bad("bad a"))?),
                "b" => b = Some(v.parse::<BigInt>().map_err(|_| bad("bad b"))?),
                _ => return Err(bad("unknown key")),
            }
        }
        Ok(CurveSpec {
            family,
            n: n.ok_or_else(|| bad("missing n"))?,
            a: a.ok_or_else(|| bad("missing a"))?,
            b: b.ok_or_else(|| bad("missing b"))?,
        })
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:n={},a={},b={}", self.family, self.n, self.a, self.b)
    }
}

/// A point of C(F_q): either affine with y^2 = g(x), or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePoint {
    coords: Option<(FieldElem, FieldElem)>,
}

impl AffinePoint {
    pub fn infinity() -> Self {
        AffinePoint { coords: None }
    }

    /// Checks membership before constructing.
    pub fn new(
        ctx: &FieldCtx,
        params: &CurveParams<FieldElem>,
        x: FieldElem,
        y: FieldElem,
    ) -> Result<Self, CurveError> {
        if ctx.square(&y) != params.g(ctx, &x) {
            return Err(CurveError::NotOnCurve);
        }
        Ok(AffinePoint { coords: Some((x, y)) })
    }

    pub fn is_infinity(&self) -> bool {
        self.coords.is_none()
    }

    pub fn x(&self) -> Option<&FieldElem> {
        self.coords.as_ref().map(|(x, _)| x)
    }

    pub fn y(&self) -> Option<&FieldElem> {
        self.coords.as_ref().map(|(_, y)| y)
    }

    pub fn is_on_curve(&self, ctx: &FieldCtx, params: &CurveParams<FieldElem>) -> bool {
        match &self.coords {
            None => true,
            Some((x, y)) => ctx.square(y) == params.g(ctx, x),
        }
    }

    /// `{"x": "...", "y": "..."}` or `{"infinity": true}`.
    pub fn to_json(&self) -> Value {
        match &self.coords {
            None => json!({ "infinity": true }),
            Some((x, y)) => json!({ "x": x.to_string(), "y": y.to_string() }),
        }
    }
}

impl fmt::Display for AffinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.coords {
            None => f.write_str("O"),
            Some((x, y)) => write!(f, "({x}, {y})"),
        }
    }
}

/// Points x_1..x_k and u with u^2 = g(x_1)...g(x_k), k = 2 or 3.
#[derive(Clone, Debug)]
pub struct ParamTriple<E> {
    pub xs: Vec<E>,
    pub u: E,
}

impl<E: Clone> ParamTriple<E> {
    pub fn arity(&self) -> usize {
        self.xs.len()
    }

    /// Checks u^2 = prod g(x_i) for an arbitrary g.
    pub fn satisfies_with<R, G>(&self, ring: &R, g: G) -> bool
    where
        R: Ring<Elem = E>,
        G: Fn(&E) -> E,
    {
        let product = self.xs.iter().fold(ring.one(), |acc, x| ring.mul(&acc, &g(x)));
        ring.equal(&ring.mul(&self.u, &self.u), &product)
    }
}

impl<E: Clone + fmt::Debug> ParamTriple<E> {
    pub fn satisfies<R: Ring<Elem = E>>(&self, ring: &R, params: &CurveParams<E>) -> bool {
        self.satisfies_with(ring, |x| params.g(ring, x))
    }
}

use crate::ff::{FieldCtx, FieldElem};
use crate::ring::{FiniteField, Ring};

use super::maps::{three_point_map, DomainRule};
use super::{AffinePoint, CurveError, CurveParams};

/// (-b/a, (b/a)^(n/2)) for even n, using g(-b/a) = (b/a)^n.
pub fn even_n_pair<R: Ring>(
    ring: &R,
    params: &CurveParams<R::Elem>,
) -> Result<(R::Elem, R::Elem), CurveError> {
    let n = params.n();
    if n % 2 != 0 {
        return Err(CurveError::UnsupportedParity(n));
    }
    let ratio = ring.div(params.b(), params.a()).ok_or(CurveError::ZeroCoefficient)?;
    Ok((ring.neg(&ratio), ring.pow(&ratio, n / 2)))
}

pub fn even_n_point(
    ctx: &FieldCtx,
    params: &CurveParams<FieldElem>,
) -> Result<AffinePoint, CurveError> {
    let (x, y) = even_n_pair(ctx, params)?;
    AffinePoint::new(ctx, params, x, y)
}

/// The point chosen by the encoder together with how it was chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoding {
    pub point: AffinePoint,
    /// 1-based index j of the X_j used.
    pub index: usize,
    /// Quadratic characters of g(X_1), g(X_2), g(X_3); `None` when g(u) = 0
    /// short-circuits the map.
    pub chars: Option<[i8; 3]>,
}

/// The encoder: (X_j, sqrt g(X_j)) for the least j with g(X_j) a square.
pub fn encode(
    ctx: &FieldCtx,
    params: &CurveParams<FieldElem>,
    t: &FieldElem,
    u: &FieldElem,
) -> Result<AffinePoint, CurveError> {
    encode_detailed(ctx, params, t, u, DomainRule::default()).map(|e| e.point)
}

pub fn encode_detailed(
    ctx: &FieldCtx,
    params: &CurveParams<FieldElem>,
    t: &FieldElem,
    u: &FieldElem,
    rule: DomainRule,
) -> Result<Encoding, CurveError> {
    let pair = encode_in(ctx, params, t, u, rule)?;
    let point = AffinePoint::new(ctx, params, pair.x, pair.y)?;
    Ok(Encoding { point, index: pair.index, chars: pair.chars })
}

/// The encoder output in any [`FiniteField`], before it is wrapped as a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedPair<E> {
    pub x: E,
    pub y: E,
    pub index: usize,
    pub chars: Option<[i8; 3]>,
}

pub fn encode_in<F: FiniteField>(
    field: &F,
    params: &CurveParams<F::Elem>,
    t: &F::Elem,
    u: &F::Elem,
    rule: DomainRule,
) -> Result<EncodedPair<F::Elem>, CurveError> {
    let trip = match three_point_map(field, params, t, u, rule) {
        Ok(trip) => trip,
        Err(CurveError::BasePointOnCurve) => {
            return Ok(EncodedPair { x: u.clone(), y: field.zero(), index: 1, chars: None });
        }
        Err(CurveError::DenominatorVanishes(what)) => return Err(CurveError::DomainExcluded(what)),
        Err(e) => return Err(e),
    };
    let values: Vec<F::Elem> = trip.xs.iter().map(|x| params.g(field, x)).collect();
    let chars = [0, 1, 2].map(|i| field.legendre(&values[i]));

    let (j, y) = if field.is_zero(&trip.u) {
        let j = chars.iter().position(|&c| c == 0).expect("U = 0 forces a zero factor");
        (j, field.zero())
    } else {
        let j = chars
            .iter()
            .position(|&c| c == 1)
            .expect("a product of three nonzero characters equal to 1 has a +1 factor");
        (j, field.sqrt(&values[j]).expect("legendre is +1"))
    };
    let x = trip.xs.into_iter().nth(j).expect("three points");
    Ok(EncodedPair { x, y, index: j + 1, chars: Some(chars) })
}

use crate::ring::Ring;

use super::{CurveError, CurveParams, Family, ParamTriple};

/// Which pairs (t, u) the three-point map accepts.
///
/// Write w = t^2 g(u) and k = n (G1) or n - 1 (G2). The displayed formula for
/// X_2 has numerator w^k - 1 and denominator g(u) t^2 (w^(k-1) - 1); both
/// share the factor w - 1. `Raw` rejects every pair where the displayed
/// denominator vanishes. `Reduced` only rejects zeros of
/// D(t, u) = g(u) t^2 (w^(k-1) - 1) / (w - 1) and evaluates the cancelled
/// quotient at w = 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum DomainRule {
    #[default]
    Reduced,
    Raw,
}

impl DomainRule {
    pub fn name(self) -> &'static str {
        match self {
            DomainRule::Reduced => "reduced",
            DomainRule::Raw => "raw",
        }
    }
}

fn minus_b_over_a<R: Ring>(ring: &R, params: &CurveParams<R::Elem>) -> R::Elem {
    let ratio = ring.div(params.b(), params.a()).expect("a is nonzero by construction");
    ring.neg(&ratio)
}

/// 1 + w + ... + w^(len-1)
fn geometric_sum<R: Ring>(ring: &R, w: &R::Elem, len: u32) -> R::Elem {
    (0..len).fold(ring.zero(), |acc, _| ring.add(&ring.mul(&acc, w), &ring.one()))
}

/// Two points: X_1 = -(b/a)(t^e - 1)/(t^e - t^2), X_2 = t^2 X_1,
/// U = t^n g(X_1), with e = 2n for G1 and e = 2(n-1) for G2.
pub fn two_point_map<R: Ring>(
    ring: &R,
    params: &CurveParams<R::Elem>,
    t: &R::Elem,
) -> Result<ParamTriple<R::Elem>, CurveError> {
    let n = params.n();
    if n < 3 {
        return Err(CurveError::DegreeTooSmall(n));
    }
    if ring.is_zero(t) {
        return Err(CurveError::DenominatorVanishes("t"));
    }
    let (e, label) = match params.family() {
        Family::G1 => (2 * n, "t^(2n) - t^2"),
        Family::G2 => (2 * (n - 1), "t^(2(n-1)) - t^2"),
    };
    let t2 = ring.mul(t, t);
    let te = ring.pow(t, e);
    let den = ring.sub(&te, &t2);
    let quotient = ring
        .div(&ring.sub(&te, &ring.one()), &den)
        .ok_or(CurveError::DenominatorVanishes(label))?;
    let x1 = ring.mul(&minus_b_over_a(ring, params), &quotient);
    let x2 = ring.mul(&t2, &x1);
    let u = ring.mul(&ring.pow(t, n), &params.g(ring, &x1));
    Ok(ParamTriple { xs: vec![x1, x2], u })
}

/// The two algebraic forms of X_2 for the three-point map: the displayed
/// quotient and the one with the common factor w - 1 removed. Returns
/// `(displayed, reduced)`; either is `None` where its denominator vanishes.
pub fn three_point_x2_forms<R: Ring>(
    ring: &R,
    params: &CurveParams<R::Elem>,
    t: &R::Elem,
    u: &R::Elem,
) -> (Option<R::Elem>, Option<R::Elem>) {
    let g_u = params.g(ring, u);
    let k = x2_exponent(params);
    let t2 = ring.mul(t, t);
    let w = ring.mul(&t2, &g_u);
    let ratio = minus_b_over_a(ring, params);
    let g_t2 = ring.mul(&g_u, &t2);

    let raw_num = ring.sub(&ring.pow(&w, k), &ring.one());
    let raw_den = ring.mul(&g_t2, &ring.sub(&ring.pow(&w, k - 1), &ring.one()));
    let displayed = ring.div(&raw_num, &raw_den).map(|q| ring.mul(&ratio, &q));

    let red_num = geometric_sum(ring, &w, k);
    let red_den = ring.mul(&g_t2, &geometric_sum(ring, &w, k - 1));
    let reduced = ring.div(&red_num, &red_den).map(|q| ring.mul(&ratio, &q));
    (displayed, reduced)
}

/// True where the displayed X_2 denominator vanishes although g(u) t != 0,
/// i.e. where only `DomainRule::Reduced` can admit (t, u).
pub fn displayed_denominator_vanishes<R: Ring>(
    ring: &R,
    params: &CurveParams<R::Elem>,
    t: &R::Elem,
    u: &R::Elem,
) -> bool {
    let g_u = params.g(ring, u);
    if ring.is_zero(&g_u) || ring.is_zero(t) {
        return false;
    }
    let w = ring.mul(&ring.mul(t, t), &g_u);
    ring.is_zero(&ring.sub(&ring.pow(&w, x2_exponent(params) - 1), &ring.one()))
}

fn x2_exponent<E: Clone + std::fmt::Debug>(params: &CurveParams<E>) -> u32 {
    match params.family() {
        Family::G1 => params.n(),
        Family::G2 => params.n() - 1,
    }
}

/// Three points for odd n:
/// X_1 = u, X_2 = -(b/a)(w^k - 1)/(g(u) t^2 (w^(k-1) - 1)), X_3 = t^2 g(u) X_2,
/// U = t^n g(u)^((n+1)/2) g(X_2), where w = t^2 g(u).
pub fn three_point_map<R: Ring>(
    ring: &R,
    params: &CurveParams<R::Elem>,
    t: &R::Elem,
    u: &R::Elem,
    rule: DomainRule,
) -> Result<ParamTriple<R::Elem>, CurveError> {
    let n = params.n();
    if n < 3 {
        return Err(CurveError::DegreeTooSmall(n));
    }
    if n % 2 == 0 {
        return Err(CurveError::UnsupportedParity(n));
    }
    let g_u = params.g(ring, u);
    if ring.is_zero(&g_u) {
        return Err(CurveError::BasePointOnCurve);
    }
    if ring.is_zero(t) {
        return Err(CurveError::DenominatorVanishes("t"));
    }

    let k = x2_exponent(params);
    let t2 = ring.mul(t, t);
    let w = ring.mul(&t2, &g_u);
    let g_t2 = ring.mul(&g_u, &t2);
    let tail = ring.sub(&ring.pow(&w, k - 1), &ring.one());
    let quotient = if !ring.is_zero(&tail) {
        let num = ring.sub(&ring.pow(&w, k), &ring.one());
        ring.div(&num, &ring.mul(&g_t2, &tail)).expect("denominator checked")
    } else {
        // w^(k-1) = 1: the displayed quotient is 0/0 when w = 1.
        if rule == DomainRule::Raw {
            return Err(CurveError::DenominatorVanishes("g(u) t^2 (w^(k-1) - 1)"));
        }
        let num = geometric_sum(ring, &w, k);
        let den = ring.mul(&g_t2, &geometric_sum(ring, &w, k - 1));
        ring.div(&num, &den).ok_or(CurveError::DenominatorVanishes("D(t,u)"))?
    };
    let x2 = ring.mul(&minus_b_over_a(ring, params), &quotient);
    let x3 = ring.mul(&g_t2, &x2);
    let lift = ring.mul(&ring.pow(t, n), &ring.pow(&g_u, n.div_ceil(2)));
    let big_u = ring.mul(&lift, &params.g(ring, &x2));
    Ok(ParamTriple { xs: vec![u.clone(), x2, x3], u: big_u })
}

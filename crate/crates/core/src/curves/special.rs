//! Rational curves on u^2 = g(x_1)...g(x_k) that exist for special g rather
//! than for the two families.

use std::collections::BTreeMap;

use crate::symb::{poly_exact_sqrt, q, MPoly, RatFun, Var};

use super::{CurveError, ParamTriple};

fn substitute(g: &MPoly, x: &RatFun) -> Result<RatFun, CurveError> {
    let bindings = BTreeMap::from([(Var::X, x.clone())]);
    Ok(RatFun::from_poly(g.clone()).subst(&bindings)?)
}

/// x^n g(1/x) = g(x)
fn check_reciprocal(g: &MPoly, n: u32) -> Result<(), CurveError> {
    if g.variables().iter().any(|&v| v != Var::X) {
        return Err(CurveError::NotReciprocal);
    }
    let x = RatFun::var(Var::X);
    let mirrored = x.pow(n).mul(&substitute(g, &RatFun::one().div(&x)?)?);
    if mirrored.rf_eq(&RatFun::from_poly(g.clone())) {
        Ok(())
    } else {
        Err(CurveError::NotReciprocal)
    }
}

/// x_1 = t^2, x_2 = 1/t^2, u = t^n g(1/t^2) for reciprocal g of degree n.
pub fn reciprocal_two(g: &MPoly, n: u32) -> Result<ParamTriple<RatFun>, CurveError> {
    check_reciprocal(g, n)?;
    let t2 = RatFun::var(Var::T).pow(2);
    let inv = RatFun::one().div(&t2)?;
    let u = RatFun::var(Var::T).pow(n).mul(&substitute(g, &inv)?);
    Ok(ParamTriple { xs: vec![t2, inv], u })
}

/// x_1 = t, x_2 = g(t), x_3 = 1/g(t), u = g(t)^((n+1)/2) g(1/g(t)) for
/// reciprocal g of odd degree n.
pub fn reciprocal_three(g: &MPoly, n: u32) -> Result<ParamTriple<RatFun>, CurveError> {
    if n.is_multiple_of(2) {
        return Err(CurveError::UnsupportedParity(n));
    }
    check_reciprocal(g, n)?;
    let t = RatFun::var(Var::T);
    let gt = substitute(g, &t)?;
    let inv = RatFun::one().div(&gt)?;
    let u = gt.pow(n.div_ceil(2)).mul(&substitute(g, &inv)?);
    Ok(ParamTriple { xs: vec![t, gt, inv], u })
}

/// The curve on u^2 = g(x_1) g(x_2) g(x_3) for g = x^4 + 1. Only the x_i are
/// given in closed form; u is recovered as an exact square root.
#[derive(Clone, Debug)]
pub struct QuarticCurve {
    pub triple: ParamTriple<RatFun>,
    /// Expanded numerator and denominator of u.
    pub u_num: MPoly,
    pub u_den: MPoly,
}

pub fn quartic_curve() -> Result<QuarticCurve, CurveError> {
    let t = MPoly::var(Var::T);
    let poly = |c2: i64, c1: i64, c0: i64| {
        &(&t.pow(2).scale(&q(c2)) + &t.scale(&q(c1)))
            + &MPoly::from_int(c0)
    };
    let den = poly(3, 3, 1);
    let xs = [poly(0, 2, 1), poly(3, 2, 0), poly(3, 4, 1)]
        .into_iter()
        .map(|num| RatFun::new(num, den.clone()))
        .collect::<Result<Vec<_>, _>>()?;

    let one = RatFun::one();
    let product = xs.iter().fold(RatFun::one(), |acc, x| acc.mul(&x.pow(4).add(&one)));
    let u_num = poly_exact_sqrt(&product.numerator(), Var::T).ok_or(CurveError::NotAPerfectSquare)?;
    let u_den =
        poly_exact_sqrt(&product.denominator(), Var::T).ok_or(CurveError::NotAPerfectSquare)?;
    let u = RatFun::new(u_num.clone(), u_den.clone())?;
    Ok(QuarticCurve { triple: ParamTriple { xs, u }, u_num, u_den })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Functions;
    use crate::symb::{q_frac, univariate::rational_sqrt, UniPoly, Q};

    fn gx(cs: &[i64]) -> MPoly {
        MPoly::from_univariate(&UniPoly::from_ints(cs), Var::X)
    }

    fn g_of(g: &MPoly) -> impl Fn(&RatFun) -> RatFun + '_ {
        move |x| substitute(g, x).unwrap()
    }

    #[test]
    fn reciprocal_two_examples() {
        let g = gx(&[1, 0, 3, 0, 1]);
        let trip = reciprocal_two(&g, 4).unwrap();
        assert!(trip.satisfies_with(&Functions, g_of(&g)));

        let g = gx(&[1, 0, 1]);
        let trip = reciprocal_two(&g, 2).unwrap();
        let t = RatFun::var(Var::T);
        let expected = t.pow(2).mul(&RatFun::one().div(&t.pow(4)).unwrap().add(&RatFun::one()));
        assert!(trip.u.rf_eq(&expected));

        assert_eq!(reciprocal_two(&gx(&[0, 1, 1]), 2).unwrap_err(), CurveError::NotReciprocal);
    }

    #[test]
    fn reciprocal_three_examples() {
        let g = gx(&[1, 2, 2, 1]);
        let trip = reciprocal_three(&g, 3).unwrap();
        assert!(trip.satisfies_with(&Functions, g_of(&g)));

        let g = gx(&[1, 1]);
        let trip = reciprocal_three(&g, 1).unwrap();
        assert!(trip.satisfies_with(&Functions, g_of(&g)));

        assert!(reciprocal_three(&gx(&[1, 0, 0, 1]), 3).is_ok());
        assert_eq!(reciprocal_three(&gx(&[1, 1, 0, 1]), 3).unwrap_err(), CurveError::NotReciprocal);
        assert_eq!(reciprocal_three(&gx(&[0, 1]), 1).unwrap_err(), CurveError::NotReciprocal);
        assert_eq!(
            reciprocal_three(&gx(&[1, 0, 3, 0, 1]), 4).unwrap_err(),
            CurveError::UnsupportedParity(4)
        );
    }

    #[test]
    fn quartic_curve_certified() {
        let curve = quartic_curve().unwrap();
        let g = gx(&[1, 0, 0, 0, 1]);
        assert!(curve.triple.satisfies_with(&Functions, g_of(&g)));

        let at = |v: Q| BTreeMap::from([(Var::T, v)]);
        let x1: Vec<Q> = curve.triple.xs.iter().map(|x| x.eval(&at(q(1))).unwrap()).collect();
        assert_eq!(x1, [q_frac(3, 7), q_frac(5, 7), q_frac(8, 7)]);
        let p1: Q = x1.iter().map(|x| x.pow(4) + q(1)).product();
        assert!(rational_sqrt(&p1).is_some());

        let u0 = curve.triple.u.eval(&at(q(0))).unwrap();
        assert_eq!(&u0 * &u0, q(4));
    }
}

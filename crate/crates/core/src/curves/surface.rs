//! Rational curves on the surfaces
//! S1 : g_1(x) z^m = y^n + cy + d and S2 : g_2(x) z^m = y^n + cy^2 + dy,
//! found by putting x = T, y = t^m T, z = t^n and solving the resulting
//! linear equation for T.

use crate::ring::{Functions, Ring};
use crate::symb::{RatFun, Var};

use super::{g_eval, CurveError, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Surface {
    S1,
    S2,
}

impl Surface {
    pub fn name(self) -> &'static str {
        match self {
            Surface::S1 => "S1",
            Surface::S2 => "S2",
        }
    }

    fn family(self) -> Family {
        match self {
            Surface::S1 => Family::G1,
            Surface::S2 => Family::G2,
        }
    }
}

/// (x(t), y(t), z(t)) in Q(a, b, c, d, t).
#[derive(Clone, Debug)]
pub struct SurfaceCurve {
    pub surface: Surface,
    pub m: u32,
    pub n: u32,
    pub x: RatFun,
    pub y: RatFun,
    pub z: RatFun,
}

fn var(v: Var) -> RatFun {
    RatFun::var(v)
}

fn t_pow(e: u32) -> RatFun {
    var(Var::T).pow(e)
}

pub fn surface_curve(surface: Surface, m: u32, n: u32) -> Result<SurfaceCurve, CurveError> {
    if m == 0 || n == 0 {
        return Err(CurveError::DegreeTooSmall(m.min(n)));
    }
    let (a, b, c, d) = (var(Var::A), var(Var::B), var(Var::C), var(Var::D));
    let e = match surface {
        Surface::S1 => m * n,
        Surface::S2 => m * (n - 1),
    };
    let num = b.mul(&t_pow(e)).sub(&d);
    let den = a.mul(&t_pow(e)).sub(&c.mul(&t_pow(m)));
    let x = num.div(&den)?.neg();
    let y = t_pow(m).mul(&x);
    Ok(SurfaceCurve { surface, m, n, x, y, z: t_pow(n) })
}

impl SurfaceCurve {
    /// F(x, y, z) = g(x) z^m - (y^n + cy + d) for S1, g(x) z^m - (y^n + cy^2 + dy) for S2.
    pub fn residual(&self) -> RatFun {
        let (a, b, c, d) = (var(Var::A), var(Var::B), var(Var::C), var(Var::D));
        let lhs = g_eval(&Functions, self.surface.family(), self.n, &a, &b, &self.x)
            .mul(&self.z.pow(self.m));
        let rhs = g_eval(&Functions, self.surface.family(), self.n, &c, &d, &self.y);
        lhs.sub(&rhs)
    }

    /// y(t) written without the factor t^m cancelled against x(t), as it is
    /// usually displayed. Needs n >= 2 on S2.
    pub fn displayed_y(&self) -> Option<RatFun> {
        let (a, b, c, d) = (var(Var::A), var(Var::B), var(Var::C), var(Var::D));
        let (num_e, den_e) = match self.surface {
            Surface::S1 => (self.m * self.n, self.m * (self.n - 1)),
            Surface::S2 if self.n >= 2 => (self.m * (self.n - 1), self.m * (self.n - 2)),
            Surface::S2 => return None,
        };
        let num = b.mul(&t_pow(num_e)).sub(&d);
        let den = a.mul(&t_pow(den_e)).sub(&c);
        num.div(&den).ok().map(|q| q.neg())
    }
}

/// The curve lies on its surface, and the displayed y agrees with t^m x
/// wherever it is defined.
pub fn surface_curve_holds(surface: Surface, m: u32, n: u32) -> Result<bool, CurveError> {
    let curve = surface_curve(surface, m, n)?;
    let on_surface = curve.residual().rf_eq(&RatFun::zero());
    let display_ok = curve.displayed_y().is_none_or(|y| Functions.equal(&y, &curve.y));
    Ok(on_surface && display_ok)
}

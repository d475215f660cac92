use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ulas::curves::{three_point_map, two_point_map, CurveParams, DomainRule, Family};
use ulas::ff::{FieldCtx, FieldSpec};
use ulas::ring::{Functions, Rationals, Ring};
use ulas::symb::{q_frac, MPoly, Monomial, RatFun, Var, Q};

const VARS: [Var; 3] = [Var::A, Var::B, Var::T];

fn small_poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((-5i64..=5, 0u32..3, 0u32..3, 0u32..3), 0..5).prop_map(|terms| {
        MPoly::from_terms(terms.into_iter().map(|(c, i, j, k)| {
            let mono = Monomial::from_exponents(&[(VARS[0], i), (VARS[1], j), (VARS[2], k)]);
            (mono, q_frac(c, 1))
        }))
    })
}

fn nonzero_poly() -> impl Strategy<Value = MPoly> {
    small_poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn small_q() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| q_frac(n, d))
}

proptest! {
    #[test]
    fn polynomial_ring_axioms(x in small_poly(), y in small_poly(), z in small_poly()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x * &MPoly::one(), x.clone());
    }

    #[test]
    fn rational_function_field_axioms(
        n1 in small_poly(), d1 in nonzero_poly(),
        n2 in small_poly(), d2 in nonzero_poly(),
    ) {
        let f = RatFun::new(n1, d1).unwrap();
        let g = RatFun::new(n2, d2).unwrap();
        prop_assert!(f.add(&g).sub(&g).rf_eq(&f));
        prop_assert!(f.mul(&g).rf_eq(&g.mul(&f)));
        if !g.is_zero() {
            prop_assert!(f.div(&g).unwrap().mul(&g).rf_eq(&f));
        }
    }

    /// Substituting t -> s and then evaluating agrees with evaluating s first.
    #[test]
    fn substitution_is_a_homomorphism(
        n1 in small_poly(), d1 in nonzero_poly(),
        n2 in small_poly(), d2 in nonzero_poly(),
        a in small_q(), b in small_q(), t in small_q(),
    ) {
        let f = RatFun::new(n1, d1).unwrap();
        let g = RatFun::new(n2, d2).unwrap();
        let s = RatFun::var(Var::A).add(&RatFun::var(Var::T).pow(2));
        let bind = BTreeMap::from([(Var::T, s.clone())]);
        let (Ok(fs), Ok(gs)) = (f.subst(&bind), g.subst(&bind)) else {
            return Ok(());
        };
        prop_assert!(f.mul(&g).subst(&bind).unwrap().rf_eq(&fs.mul(&gs)));
        prop_assert!(f.add(&g).subst(&bind).unwrap().rf_eq(&fs.add(&gs)));

        let point = BTreeMap::from([(Var::A, a.clone()), (Var::B, b.clone()), (Var::T, t)]);
        let Ok(sv) = s.eval(&point) else { return Ok(()) };
        let inner = BTreeMap::from([(Var::A, a), (Var::B, b), (Var::T, sv)]);
        if let (Ok(lhs), Ok(rhs)) = (fs.eval(&point), f.eval(&inner)) {
            prop_assert_eq!(lhs, rhs);
        }
    }
}

fn field(p: u32) -> FieldCtx {
    FieldCtx::new(FieldSpec::prime(p)).unwrap()
}

fn extension(spec: &str) -> FieldCtx {
    FieldCtx::new(spec.parse().unwrap()).unwrap()
}

proptest! {
    #[test]
    fn sqrt_of_a_square(i in 0u64..1_000_000, p_index in 0usize..4) {
        let fields = [field(1_000_003), field(65_537), extension("3^3:1,2,0,1"), extension("5^2:2,0,1")];
        let ctx = &fields[p_index];
        let h = ctx.element_at(i % ctx.order_u64().unwrap());
        let x = ctx.square(&h);
        let r = ctx.sqrt(&x).unwrap();
        prop_assert_eq!(ctx.square(&r), x);
        prop_assert!(r == h || r == ctx.neg(&h));
        prop_assert!(r <= ctx.neg(&r));
    }

    #[test]
    fn legendre_is_multiplicative(i in 0u64..1_000_003, j in 0u64..1_000_003) {
        let ctx = field(1_000_003);
        let (x, y) = (ctx.from_u64(i), ctx.from_u64(j));
        prop_assert_eq!(ctx.legendre(&ctx.mul(&x, &y)), ctx.legendre(&x) * ctx.legendre(&y));
    }
}

fn reduce(ctx: &FieldCtx, v: &Q) -> Option<ulas::ff::FieldElem> {
    let num = ctx.from_bigint(v.numer());
    let den = ctx.from_bigint(v.denom());
    ctx.div(&num, &den).ok()
}

/// The symbolic maps specialized at (a, b, t, u) agree with the maps run
/// directly over F_p whenever no denominator vanishes mod p.
#[test]
fn symbolic_and_finite_field_maps_agree() {
    let ctx = field(101);
    let (t, u) = (RatFun::var(Var::T), RatFun::var(Var::U));
    let mut compared = 0;
    for family in [Family::G1, Family::G2] {
        for n in [3u32, 5] {
            let sym = CurveParams::symbolic(family, n).unwrap();
            let two = two_point_map(&Functions, &sym, &t).unwrap();
            let three = three_point_map(&Functions, &sym, &t, &u, DomainRule::Raw).unwrap();
            for (a, b, tv, uv) in [(2i64, 3i64, 5i64, 7i64), (-1, 4, 3, 2), (6, -5, 10, 1)] {
                let point: BTreeMap<Var, Q> = [(Var::A, a), (Var::B, b), (Var::T, tv), (Var::U, uv)]
                    .into_iter()
                    .map(|(v, c)| (v, Q::from_integer(BigInt::from(c))))
                    .collect();
                let params =
                    CurveParams::new(&ctx, family, n, ctx.from_i64(a), ctx.from_i64(b)).unwrap();
                let (ft, fu) = (ctx.from_i64(tv), ctx.from_i64(uv));
                let direct_two = two_point_map(&ctx, &params, &ft);
                let direct_three = three_point_map(&ctx, &params, &ft, &fu, DomainRule::Raw);
                for (sym_trip, direct) in [(&two, direct_two), (&three, direct_three)] {
                    let Ok(direct) = direct else { continue };
                    let specialized: Option<Vec<_>> = sym_trip
                        .xs
                        .iter()
                        .chain([&sym_trip.u])
                        .map(|f| f.eval(&point).ok().and_then(|v| reduce(&ctx, &v)))
                        .collect();
                    let Some(specialized) = specialized else { continue };
                    let expected: Vec<_> = direct.xs.iter().chain([&direct.u]).cloned().collect();
                    assert_eq!(specialized, expected, "{family} n={n} at {point:?}");
                    compared += 1;
                }
            }
        }
    }
    assert!(compared >= 16, "only {compared} specializations compared");
}

/// 100 random exact-rational (a, b, t, u): evaluating the symbolic triples
/// equals running the maps directly over Q.
#[test]
fn symbolic_and_rational_maps_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let rational = |rng: &mut ChaCha8Rng| {
        let num = rng.gen_range(1..=40) * if rng.gen_bool(0.5) { -1 } else { 1 };
        q_frac(num, rng.gen_range(1..=9))
    };
    let (t, u) = (RatFun::var(Var::T), RatFun::var(Var::U));
    let symbolic: Vec<_> = [(Family::G1, 3u32), (Family::G2, 3), (Family::G1, 5), (Family::G2, 5)]
        .into_iter()
        .map(|(family, n)| {
            let sym = CurveParams::symbolic(family, n).unwrap();
            let two = two_point_map(&Functions, &sym, &t).unwrap();
            let three = three_point_map(&Functions, &sym, &t, &u, DomainRule::Raw).unwrap();
            (family, n, two, three)
        })
        .collect();
    let mut compared = 0;
    while compared < 100 {
        let (a, b, tv, uv) = (rational(&mut rng), rational(&mut rng), rational(&mut rng), rational(&mut rng));
        let (family, n, two, three) = &symbolic[compared % symbolic.len()];
        let params = CurveParams::new(&Rationals, *family, *n, a.clone(), b.clone()).unwrap();
        let (Ok(d2), Ok(d3)) = (
            two_point_map(&Rationals, &params, &tv),
            three_point_map(&Rationals, &params, &tv, &uv, DomainRule::Raw),
        ) else {
            continue;
        };
        let point = BTreeMap::from([(Var::A, a), (Var::B, b), (Var::T, tv), (Var::U, uv)]);
        for (sym_trip, direct) in [(two, d2), (three, d3)] {
            let evaluated: Vec<Q> =
                sym_trip.xs.iter().chain([&sym_trip.u]).map(|f| f.eval(&point).unwrap()).collect();
            let expected: Vec<Q> = direct.xs.into_iter().chain([direct.u]).collect();
            assert_eq!(evaluated, expected, "{family} n={n} at {point:?}");
        }
        compared += 1;
    }
}

#[test]
fn functions_ring_matches_ratfun_operations() {
    let x = RatFun::var(Var::T).add(&RatFun::one());
    assert!(Functions.pow(&x, 3).rf_eq(&x.mul(&x).mul(&x)));
    assert!(Functions.div(&x, &RatFun::zero()).is_none());
}

//! Exhaustive experiments over small fields: point counts, the size of the
//! encoder domain T, and how much of the curve the encoder reaches.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::curves::{
    displayed_denominator_vanishes, encode_in, three_point_map, AffinePoint, CurveError,
    CurveParams, DomainRule, Family,
};
use crate::ff::{FieldCtx, FieldElem, FieldSpec, SmallPrimeField};
use crate::par::{self, Exec};
use crate::ring::{FiniteField, Functions, Ring};
use crate::symb::{RatFun, Var, Q};

pub const DEFAULT_MAX_Q: u64 = 10_000;
const MISSED_CAP: usize = 100;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurveyError {
    #[error("FieldTooLarge: q = {q} exceeds the exhaustive cap {cap}")]
    FieldTooLarge { q: String, cap: u64 },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("{0}")]
    Field(String),
}

fn checked_order(ctx: &FieldCtx, max_q: u64) -> Result<u64, SurveyError> {
    match ctx.order_u64() {
        Some(q) if q <= max_q => Ok(q),
        _ => Err(SurveyError::FieldTooLarge { q: ctx.q().to_string(), cap: max_q }),
    }
}

/// All affine points, sorted by x and then y.
pub fn enumerate_curve(
    ctx: &FieldCtx,
    params: &CurveParams<FieldElem>,
    max_q: u64,
) -> Result<Vec<AffinePoint>, SurveyError> {
    checked_order(ctx, max_q)?;
    let mut points = Vec::new();
    for x in ctx.elements() {
        let v = params.g(ctx, &x);
        let Some(r) = ctx.sqrt(&v) else { continue };
        let neg = ctx.neg(&r);
        points.push(AffinePoint::new(ctx, params, x.clone(), r.clone())?);
        if neg != r {
            points.push(AffinePoint::new(ctx, params, x, neg)?);
        }
    }
    points.sort();
    Ok(points)
}

fn admissible(ctx: &FieldCtx, params: &CurveParams<FieldElem>, t: &FieldElem, u: &FieldElem, rule: DomainRule) -> bool {
    three_point_map(ctx, params, t, u, rule).is_ok()
}

/// The pairs (t, u) accepted by the three-point map, t-major in canonical
/// order. Lazy; see [`domain_size`] for the count.
pub fn enumerate_t<'a>(
    ctx: &'a FieldCtx,
    params: &'a CurveParams<FieldElem>,
    rule: DomainRule,
    max_q: u64,
) -> Result<impl Iterator<Item = (FieldElem, FieldElem)> + 'a, SurveyError> {
    checked_order(ctx, max_q)?;
    Ok(ctx.elements().flat_map(move |t| {
        ctx.elements()
            .filter(|u| admissible(ctx, params, &t, u, rule))
            .map(|u| (t.clone(), u))
            .collect::<Vec<_>>()
    }))
}

pub fn domain_size(
    ctx: &FieldCtx,
    params: &CurveParams<FieldElem>,
    rule: DomainRule,
    max_q: u64,
    exec: Exec,
) -> Result<u64, SurveyError> {
    let q = checked_order(ctx, max_q)?;
    let counts = par::map(exec, (0..q).collect(), |i| {
        let t = ctx.element_at(i);
        ctx.elements().filter(|u| admissible(ctx, params, &t, u, rule)).count() as u64
    });
    Ok(counts.into_iter().sum())
}

/// (q - n)(q - 2(n - 1) + 1), and whether p > 2(n - 1) - 1 so that it applies.
pub fn domain_bound(ctx: &FieldCtx, n: u32) -> (BigInt, bool) {
    let q = BigInt::from(ctx.q().clone());
    let n_big = BigInt::from(n);
    let bound = (&q - &n_big) * (&q - BigInt::from(2 * (n - 1)) + 1);
    let applicable = *ctx.p() > num_bigint::BigUint::from(2 * (n - 1) - 1);
    (bound, applicable)
}

struct SliceStats<E> {
    size_t: u64,
    size_t_raw: u64,
    image: BTreeSet<(E, E)>,
    image_raw: BTreeSet<(E, E)>,
    index_counts: [u64; 3],
    character_violations: u64,
    off_curve: u64,
}

impl<E: Ord> SliceStats<E> {
    fn new() -> Self {
        SliceStats {
            size_t: 0,
            size_t_raw: 0,
            image: BTreeSet::new(),
            image_raw: BTreeSet::new(),
            index_counts: [0; 3],
            character_violations: 0,
            off_curve: 0,
        }
    }

    fn merge(&mut self, other: SliceStats<E>) {
        self.size_t += other.size_t;
        self.size_t_raw += other.size_t_raw;
        self.image.extend(other.image);
        self.image_raw.extend(other.image_raw);
        for (a, b) in self.index_counts.iter_mut().zip(other.index_counts) {
            *a += b;
        }
        self.character_violations += other.character_violations;
        self.off_curve += other.off_curve;
    }

    fn lift<G: Ord>(self, f: impl Fn(&E) -> G) -> SliceStats<G> {
        let lift_set = |set: BTreeSet<(E, E)>| set.iter().map(|(x, y)| (f(x), f(y))).collect();
        SliceStats {
            size_t: self.size_t,
            size_t_raw: self.size_t_raw,
            image: lift_set(self.image),
            image_raw: lift_set(self.image_raw),
            index_counts: self.index_counts,
            character_violations: self.character_violations,
            off_curve: self.off_curve,
        }
    }
}

fn slice<F: FiniteField>(field: &F, params: &CurveParams<F::Elem>, t: &F::Elem) -> SliceStats<F::Elem> {
    let mut stats = SliceStats::new();
    let q = field.order().expect("checked by the caller");
    for u in (0..q).map(|i| field.element_at(i)) {
        if field.is_zero(&params.g(field, &u)) {
            continue;
        }
        let Ok(enc) = encode_in(field, params, t, &u, DomainRule::Reduced) else { continue };
        stats.size_t += 1;
        stats.index_counts[enc.index - 1] += 1;
        if let Some([c1, c2, c3]) = enc.chars {
            if c1 * c2 * c3 == -1 {
                stats.character_violations += 1;
            }
        }
        if !field.equal(&field.mul(&enc.y, &enc.y), &params.g(field, &enc.x)) {
            stats.off_curve += 1;
        }
        let point = (enc.x, enc.y);
        if !displayed_denominator_vanishes(field, params, t, &u) {
            stats.size_t_raw += 1;
            stats.image_raw.insert(point.clone());
        }
        stats.image.insert(point);
    }
    stats
}

fn run_slices<F: FiniteField>(
    field: &F,
    params: &CurveParams<F::Elem>,
    q: u64,
    exec: Exec,
) -> SliceStats<F::Elem> {
    let slices = par::map(exec, (0..q).collect(), |i| slice(field, params, &field.element_at(i)));
    slices.into_iter().fold(SliceStats::new(), |mut acc, s| {
        acc.merge(s);
        acc
    })
}

/// Runs the slices on machine words when the field allows it.
fn survey_stats(
    ctx: &FieldCtx,
    params: &CurveParams<FieldElem>,
    q: u64,
    exec: Exec,
) -> Result<SliceStats<FieldElem>, SurveyError> {
    let Some(small) = SmallPrimeField::from_ctx(ctx) else {
        return Ok(run_slices(ctx, params, q, exec));
    };
    let lower = |x: &FieldElem| x.coeffs()[0].to_u64().expect("reduced below p");
    let words = CurveParams::new(&small, params.family(), params.n(), lower(params.a()), lower(params.b()))?;
    Ok(run_slices(&small, &words, q, exec).lift(|&x| ctx.from_u64(x)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamsJson {
    pub family: String,
    pub n: String,
    pub a: String,
    pub b: String,
}

impl ParamsJson {
    pub fn new(params: &CurveParams<FieldElem>) -> Self {
        ParamsJson {
            family: params.family().name().to_string(),
            n: params.n().to_string(),
            a: params.a().to_string(),
            b: params.b().to_string(),
        }
    }
}

/// Encoder coverage over one curve. Counts are decimal strings. Sizes refer
/// to affine points only: the encoder never outputs the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub field: String,
    pub q: String,
    pub params: ParamsJson,
    pub domain_rule: String,
    #[serde(rename = "size_T")]
    pub size_t: String,
    pub bound: String,
    /// "pass", "fail" or "not applicable" (p <= 2(n-1) - 1).
    pub bound_check: String,
    #[serde(rename = "size_T_raw")]
    pub size_t_raw: String,
    pub bound_check_raw: String,
    pub curve_size: String,
    pub curve_size_convention: String,
    pub roots_of_g: String,
    pub image_size: String,
    pub image_size_raw: String,
    pub coverage_ratio: String,
    pub index_counts: [String; 3],
    pub image_off_curve: String,
    pub character_product_violations: String,
    pub missed: Vec<Value>,
    pub missed_count: String,
    pub missed_truncated: bool,
}

impl CoverageReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }
}

fn bound_check(size: u64, bound: &BigInt, applicable: bool) -> String {
    match (applicable, BigInt::from(size) >= *bound) {
        (false, _) => "not applicable",
        (true, true) => "pass",
        (true, false) => "fail",
    }
    .to_string()
}

/// Runs the encoder on every pair of T and compares the image with the curve.
pub fn coverage(
    ctx: &FieldCtx,
    params: &CurveParams<FieldElem>,
    max_q: u64,
    exec: Exec,
) -> Result<CoverageReport, SurveyError> {
    let q = checked_order(ctx, max_q)?;
    if params.n().is_multiple_of(2) || params.n() < 3 {
        return Err(CurveError::UnsupportedParity(params.n()).into());
    }
    let curve = enumerate_curve(ctx, params, max_q)?;
    let stats = survey_stats(ctx, params, q, exec)?;
    let image: BTreeSet<AffinePoint> = stats
        .image
        .iter()
        .filter_map(|(x, y)| AffinePoint::new(ctx, params, x.clone(), y.clone()).ok())
        .collect();
    let image_raw_size = stats.image_raw.len();
    let (bound, applicable) = domain_bound(ctx, params.n());
    let roots = curve.iter().filter(|p| p.y().is_some_and(FieldElem::is_zero)).count();
    let curve_set: BTreeSet<&AffinePoint> = curve.iter().collect();
    let outside = (stats.image.len() - image.len()
        + image.iter().filter(|p| !curve_set.contains(p)).count()) as u64;
    let missed: Vec<&AffinePoint> = curve.iter().filter(|p| !image.contains(p)).collect();
    let ratio = if curve.is_empty() {
        "undefined".to_string()
    } else {
        BigRational::new(image.len().into(), curve.len().into()).to_string()
    };
    Ok(CoverageReport {
        field: ctx.spec().to_string(),
        q: q.to_string(),
        params: ParamsJson::new(params),
        domain_rule: DomainRule::Reduced.name().to_string(),
        size_t: stats.size_t.to_string(),
        bound: bound.to_string(),
        bound_check: bound_check(stats.size_t, &bound, applicable),
        size_t_raw: stats.size_t_raw.to_string(),
        bound_check_raw: bound_check(stats.size_t_raw, &bound, applicable),
        curve_size: curve.len().to_string(),
        curve_size_convention: "affine points only".to_string(),
        roots_of_g: roots.to_string(),
        image_size: image.len().to_string(),
        image_size_raw: image_raw_size.to_string(),
        coverage_ratio: ratio,
        index_counts: stats.index_counts.map(|c| c.to_string()),
        image_off_curve: (stats.off_curve + outside).to_string(),
        character_product_violations: stats.character_violations.to_string(),
        missed: missed.iter().take(MISSED_CAP).map(|p| p.to_json()).collect(),
        missed_count: missed.len().to_string(),
        missed_truncated: missed.len() > MISSED_CAP,
    })
}

/// Degrees of X_1 X_2 X_3 = N/D in t, with N and D coprime, for concrete
/// a, b, u.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeStats {
    pub deg_num: usize,
    pub deg_den: usize,
    /// X_1 = u = 0 makes the product vanish; then N = 0 and D = 1.
    pub product_is_zero: bool,
}

pub fn degree_stats(
    family: Family,
    n: u32,
    a: &Q,
    b: &Q,
    u: &Q,
) -> Result<DegreeStats, SurveyError> {
    let params = CurveParams::new(
        &Functions,
        family,
        n,
        RatFun::constant(a.clone()),
        RatFun::constant(b.clone()),
    )?;
    let trip = three_point_map(
        &Functions,
        &params,
        &RatFun::var(Var::T),
        &RatFun::constant(u.clone()),
        DomainRule::Reduced,
    )?;
    let product = trip.xs.iter().fold(Functions.one(), |acc, x| Functions.mul(&acc, x));
    if product.is_zero() {
        return Ok(DegreeStats { deg_num: 0, deg_den: 0, product_is_zero: true });
    }
    let univariate = |p: crate::symb::MPoly| p.to_univariate(Var::T).expect("only t remains");
    let (num, den) = (univariate(product.numerator()), univariate(product.denominator()));
    let g = num.gcd(&den);
    let (num, rem_n) = num.div_rem(&g);
    let (den, rem_d) = den.div_rem(&g);
    debug_assert!(rem_n.is_zero() && rem_d.is_zero());
    Ok(DegreeStats {
        deg_num: num.degree().expect("nonzero"),
        deg_den: den.degree().expect("nonzero"),
        product_is_zero: false,
    })
}

/// A batch of random curves over prime fields, each surveyed exhaustively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub primes: Vec<u64>,
    pub degrees: Vec<u32>,
    pub families: Vec<Family>,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            primes: odd_primes(5, 101),
            degrees: vec![3, 5, 7],
            families: vec![Family::G1, Family::G2],
            samples: 10,
            seed: 0,
        }
    }
}

pub fn odd_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&p| p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// One surveyed curve; the fields mirror [`CoverageReport`] without the
/// point lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub p: String,
    pub params: ParamsJson,
    #[serde(rename = "size_T")]
    pub size_t: String,
    #[serde(rename = "size_T_raw")]
    pub size_t_raw: String,
    pub bound: String,
    pub bound_check: String,
    pub bound_check_raw: String,
    pub curve_size: String,
    pub image_size: String,
    pub image_off_curve: String,
    pub character_product_violations: String,
}

impl SweepRow {
    /// Soundness holds: every image point is on the curve and no character
    /// product is -1.
    pub fn sound(&self) -> bool {
        self.image_off_curve == "0" && self.character_product_violations == "0"
    }
}

/// Curves are drawn from one ChaCha stream in a fixed order before any work
/// is scheduled, so rows depend only on the config.
pub fn sweep(config: &SweepConfig, exec: Exec) -> Result<Vec<SweepRow>, SurveyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut instances = Vec::new();
    for &p in &config.primes {
        for &n in &config.degrees {
            if u64::from(2 * (n - 1) - 1) >= p {
                continue;
            }
            for &family in &config.families {
                for _ in 0..config.samples {
                    let a = rng.gen_range(1..p);
                    let b = rng.gen_range(1..p);
                    instances.push((p, family, n, a, b));
                }
            }
        }
    }
    let fields: BTreeMap<u64, FieldCtx> = config
        .primes
        .iter()
        .map(|&p| {
            FieldCtx::new(FieldSpec::prime(p))
                .map(|f| (p, f))
                .map_err(|e| SurveyError::Field(e.to_string()))
        })
        .collect::<Result<_, _>>()?;
    // Parallelism lives inside each survey (over t); instances run in order.
    instances
        .into_iter()
        .map(|(p, family, n, a, b)| {
            let ctx = &fields[&p];
            let params = CurveParams::new(ctx, family, n, ctx.from_u64(a), ctx.from_u64(b))?;
            let report = coverage(ctx, &params, u64::MAX, exec)?;
            Ok(SweepRow {
                p: p.to_string(),
                params: report.params,
                size_t: report.size_t,
                size_t_raw: report.size_t_raw,
                bound: report.bound,
                bound_check: report.bound_check,
                bound_check_raw: report.bound_check_raw,
                curve_size: report.curve_size,
                image_size: report.image_size,
                image_off_curve: report.image_off_curve,
                character_product_violations: report.character_product_violations,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::CurveSpec;
    use crate::symb::q;

    fn setup(p: u32, curve: &str) -> (FieldCtx, CurveParams<FieldElem>) {
        let f = FieldCtx::new(FieldSpec::prime(p)).unwrap();
        let params = curve.parse::<CurveSpec>().unwrap().over_field(&f).unwrap();
        (f, params)
    }

    #[test]
    fn curve_enumeration_matches_double_loop() {
        for p in [3, 5, 7, 11] {
            let (f, params) = setup(p, "g1:n=3,a=1,b=1");
            let fast = enumerate_curve(&f, &params, DEFAULT_MAX_Q).unwrap();
            let mut slow = Vec::new();
            for x in f.elements() {
                for y in f.elements() {
                    if let Ok(pt) = AffinePoint::new(&f, &params, x.clone(), y) {
                        slow.push(pt);
                    }
                }
            }
            slow.sort();
            assert_eq!(fast, slow);
            assert!(fast.len() as u32 <= 2 * p);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let (f, params) = setup(101, "g1:n=3,a=1,b=1");
        assert!(matches!(
            enumerate_curve(&f, &params, 100),
            Err(SurveyError::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn domain_size_and_bound() {
        let (f, params) = setup(11, "g1:n=3,a=1,b=1");
        let size = domain_size(&f, &params, DomainRule::Reduced, DEFAULT_MAX_Q, Exec::Sequential).unwrap();
        let listed: Vec<_> = enumerate_t(&f, &params, DomainRule::Reduced, DEFAULT_MAX_Q).unwrap().collect();
        assert_eq!(listed.len() as u64, size);
        let (bound, applicable) = domain_bound(&f, 3);
        assert!(applicable);
        assert_eq!(bound, BigInt::from(64));
        assert!(BigInt::from(size) >= bound);
        let raw = domain_size(&f, &params, DomainRule::Raw, DEFAULT_MAX_Q, Exec::Parallel).unwrap();
        assert!(raw <= size);
    }

    #[test]
    fn coverage_report_is_deterministic() {
        let (f, params) = setup(11, "g1:n=3,a=1,b=1");
        let seq = coverage(&f, &params, DEFAULT_MAX_Q, Exec::Sequential).unwrap();
        let par = coverage(&f, &params, DEFAULT_MAX_Q, Exec::Parallel).unwrap();
        assert_eq!(seq.to_json().to_string(), par.to_json().to_string());
        assert_eq!(seq.image_off_curve, "0");
        assert_eq!(seq.character_product_violations, "0");
        assert_eq!(seq.bound_check, "pass");
    }

    #[test]
    fn word_and_bignum_paths_agree() {
        for curve in ["g1:n=3,a=1,b=1", "g2:n=5,a=3,b=7", "g1:n=7,a=12,b=2"] {
            let (f, params) = setup(13, curve);
            let big = run_slices(&f, &params, 13, Exec::Sequential);
            let small = survey_stats(&f, &params, 13, Exec::Sequential).unwrap();
            assert_eq!(big.image, small.image);
            assert_eq!(big.image_raw, small.image_raw);
            assert_eq!((big.size_t, big.size_t_raw), (small.size_t, small.size_t_raw));
            assert_eq!(big.index_counts, small.index_counts);
        }
    }

    #[test]
    fn tiny_field_bound_not_applicable() {
        let (f, params) = setup(3, "g1:n=3,a=1,b=1");
        let report = coverage(&f, &params, DEFAULT_MAX_Q, Exec::Sequential).unwrap();
        assert_eq!(report.bound_check, "not applicable");
    }

    #[test]
    fn degree_bounds_for_cubics() {
        for (a, b, u) in [(1, 1, 1), (2, 3, 1), (1, 1, 2), (-1, 5, 3)] {
            let stats = degree_stats(Family::G1, 3, &q(a), &q(b), &q(u)).unwrap();
            assert!(stats.deg_num <= 8 && stats.deg_den <= 6, "{stats:?}");
        }
        let zero = degree_stats(Family::G1, 3, &q(1), &q(1), &q(0)).unwrap();
        assert!(zero.product_is_zero);
    }

    #[test]
    fn prime_list() {
        assert_eq!(odd_primes(5, 30), [5, 7, 11, 13, 17, 19, 23, 29]);
    }
}

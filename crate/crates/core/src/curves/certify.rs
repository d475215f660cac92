//! Symbolic certification: every parametrization is checked as an identity
//! in Q(a, b, c, d, t, u) by cross-multiplying and expanding.

use serde::Serialize;

use crate::par::{self, Exec};
use crate::ring::{Functions, Ring};
use crate::symb::{MPoly, RatFun, UniPoly, Var};

use super::{
    even_n_pair, g_eval, quartic_curve, reciprocal_three, reciprocal_two, surface_curve_holds,
    three_point_map, three_point_x2_forms, two_point_map, CurveError, CurveParams, DomainRule,
    Family, Surface,
};

/// One line of the certification table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// An alternative formula checked on request; its failure is expected.
    pub expected_deviation: bool,
}

impl IdentityCheck {
    fn new(name: String, outcome: Result<bool, CurveError>) -> Self {
        let (passed, note) = match outcome {
            Ok(p) => (p, None),
            Err(e) => (false, Some(e.to_string())),
        };
        IdentityCheck { name, passed, note, expected_deviation: false }
    }

    /// Fails without being an expected deviation.
    pub fn is_failure(&self) -> bool {
        !self.passed && !self.expected_deviation
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub n_min: u32,
    pub n_max: u32,
    /// Also check U = t^n g_1(X_1) in place of t^n g_2(X_1) for the G2 two-point map.
    pub literal_g2_u: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { n_min: 3, n_max: 9, literal_g2_u: false }
    }
}

#[derive(Clone, Debug)]
enum Job {
    TwoPoint(Family, u32),
    ThreePoint(Family, u32),
    ReducedX2(Family, u32),
    EvenDegree(Family, u32),
    Surface(Surface, u32, u32),
    ReciprocalTwo(Vec<i64>),
    ReciprocalThree(Vec<i64>),
    Quartic,
    LiteralG2U(u32),
}

const RECIPROCAL_TWO: [&[i64]; 3] = [&[1, 0, 1], &[1, 0, 3, 0, 1], &[1, 0, 0, 1, 0, 0, 1]];
const RECIPROCAL_THREE: [&[i64]; 3] = [&[1, 1], &[1, 2, 2, 1], &[1, 1, 2, 2, 1, 1]];

fn jobs(opts: CertifyOptions) -> Vec<Job> {
    let range = opts.n_min.max(3)..=opts.n_max;
    let mut jobs = Vec::new();
    for family in [Family::G1, Family::G2] {
        jobs.extend(range.clone().map(|n| Job::TwoPoint(family, n)));
        for n in range.clone().filter(|n| n % 2 == 1) {
            jobs.push(Job::ThreePoint(family, n));
            jobs.push(Job::ReducedX2(family, n));
        }
        jobs.extend(range.clone().filter(|n| n % 2 == 0).map(|n| Job::EvenDegree(family, n)));
    }
    for surface in [Surface::S1, Surface::S2] {
        for m in 1..=3 {
            jobs.extend((1..=5).map(|n| Job::Surface(surface, m, n)));
        }
    }
    jobs.extend(RECIPROCAL_TWO.iter().map(|cs| Job::ReciprocalTwo(cs.to_vec())));
    jobs.extend(RECIPROCAL_THREE.iter().map(|cs| Job::ReciprocalThree(cs.to_vec())));
    jobs.push(Job::Quartic);
    if opts.literal_g2_u {
        jobs.extend(range.map(Job::LiteralG2U));
    }
    jobs
}

fn symbols() -> (RatFun, RatFun) {
    (RatFun::var(Var::T), RatFun::var(Var::U))
}

fn g_poly(cs: &[i64]) -> MPoly {
    MPoly::from_univariate(&UniPoly::from_ints(cs), Var::X)
}

fn substitute_x(g: &MPoly, x: &RatFun) -> RatFun {
    let bindings = std::collections::BTreeMap::from([(Var::X, x.clone())]);
    RatFun::from_poly(g.clone()).subst(&bindings).expect("polynomial substitution has no poles")
}

fn run(job: &Job) -> IdentityCheck {
    let (t, u) = symbols();
    match job {
        Job::TwoPoint(family, n) => {
            let outcome = CurveParams::symbolic(*family, *n)
                .and_then(|p| two_point_map(&Functions, &p, &t).map(|trip| trip.satisfies(&Functions, &p)));
            IdentityCheck::new(format!("two_point/{family}/n={n}"), outcome)
        }
        Job::ThreePoint(family, n) => {
            let outcome = CurveParams::symbolic(*family, *n).and_then(|p| {
                three_point_map(&Functions, &p, &t, &u, DomainRule::Raw)
                    .map(|trip| trip.satisfies(&Functions, &p))
            });
            IdentityCheck::new(format!("three_point/{family}/n={n}"), outcome)
        }
        Job::ReducedX2(family, n) => {
            let outcome = CurveParams::symbolic(*family, *n).map(|p| {
                match three_point_x2_forms(&Functions, &p, &t, &u) {
                    (Some(raw), Some(reduced)) => raw.rf_eq(&reduced),
                    _ => false,
                }
            });
            IdentityCheck::new(format!("three_point_reduced_x2/{family}/n={n}"), outcome)
        }
        Job::EvenDegree(family, n) => {
            let outcome = CurveParams::symbolic(*family, *n).and_then(|p| {
                let (x, y) = even_n_pair(&Functions, &p)?;
                Ok(y.pow(2).rf_eq(&p.g(&Functions, &x)))
            });
            IdentityCheck::new(format!("even_degree_point/{family}/n={n}"), outcome)
        }
        Job::Surface(surface, m, n) => IdentityCheck::new(
            format!("surface_curve/{}/m={m},n={n}", surface.name()),
            surface_curve_holds(*surface, *m, *n),
        ),
        Job::ReciprocalTwo(cs) => {
            let g = g_poly(cs);
            let n = cs.len() as u32 - 1;
            let outcome = reciprocal_two(&g, n)
                .map(|trip| trip.satisfies_with(&Functions, |x| substitute_x(&g, x)));
            IdentityCheck::new(format!("reciprocal_two/g={g}"), outcome)
        }
        Job::ReciprocalThree(cs) => {
            let g = g_poly(cs);
            let n = cs.len() as u32 - 1;
            let outcome = reciprocal_three(&g, n)
                .map(|trip| trip.satisfies_with(&Functions, |x| substitute_x(&g, x)));
            IdentityCheck::new(format!("reciprocal_three/g={g}"), outcome)
        }
        Job::Quartic => {
            let g = g_poly(&[1, 0, 0, 0, 1]);
            let outcome = quartic_curve()
                .map(|c| c.triple.satisfies_with(&Functions, |x| substitute_x(&g, x)));
            IdentityCheck::new("quartic_curve/g=x^4 + 1".to_string(), outcome)
        }
        Job::LiteralG2U(n) => {
            let outcome = CurveParams::symbolic(Family::G2, *n).and_then(|p| {
                let mut trip = two_point_map(&Functions, &p, &t)?;
                let g1 = g_eval(&Functions, Family::G1, *n, p.a(), p.b(), &trip.xs[0]);
                trip.u = Functions.mul(&t.pow(*n), &g1);
                Ok(trip.satisfies(&Functions, &p))
            });
            let mut check = IdentityCheck::new(format!("two_point_literal_g1_u/g2/n={n}"), outcome);
            check.expected_deviation = true;
            check.note = Some("suspected erratum: U = t^n g_1(X_1) does not satisfy the g2 identity".into());
            check
        }
    }
}

/// Runs the whole suite; the table order does not depend on `exec`.
pub fn certify_all(opts: CertifyOptions, exec: Exec) -> Vec<IdentityCheck> {
    par::map(exec, jobs(opts), |job| run(&job))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_range_passes() {
        let opts = CertifyOptions { n_min: 3, n_max: 4, literal_g2_u: false };
        let table = certify_all(opts, Exec::Sequential);
        for check in &table {
            assert!(check.passed, "{check:?}");
        }
        assert!(table.iter().any(|c| c.name == "three_point/g2/n=3"));
    }

    #[test]
    fn literal_g2_u_is_flagged() {
        let opts = CertifyOptions { n_min: 3, n_max: 3, literal_g2_u: true };
        let table = certify_all(opts, Exec::Sequential);
        let literal: Vec<_> = table.iter().filter(|c| c.expected_deviation).collect();
        assert_eq!(literal.len(), 1);
        assert!(!literal[0].passed);
        assert!(!literal[0].is_failure());
        assert!(table.iter().all(|c| !c.is_failure()));
    }
}

//! From branch derivatives or an augmentation polynomial to a normalized
//! Alexander polynomial.
//!
//! The exponential integral is never formed. With `S = R - mu/(1-mu)` the
//! target solves `mu * Delta' / Delta = S`, a linear system in the unknown
//! coefficients once the exponent range is read off from `S(0)` and `S(inf)`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    rat, AlgebraError, Assignment, Field, LaurentPoly, Matrix, MultiPoly, Poly, RatFunc, Rational, Ring, Symtab, UniPoly,
    RING_VARS,
};
use crate::augment::{
    find_generating_cycles, solve_augmentation_family, verify_augmentation, AugFamily, AugmentError, Branch, CycleReport,
    CycleStatus,
};
use crate::dga::{parse_expr, Dga, ParseError};
use crate::groebner::Budget;
use crate::par::Execution;

/// Message for augmentation polynomials whose branch derivatives both vanish.
pub const DEGENERATE_MESSAGE: &str = "branch formula inapplicable; a different branch of V_K is required";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("unusable cycle (0/0): the first branch derivative vanishes identically")]
    UnusableCycle,
    #[error("integrand is not a polynomial logarithmic derivative: {0}")]
    NotLogDerivative(String),
    #[error("no consistent Δ: solution space has dimension {0}")]
    NoConsistentDelta(usize),
    #[error("not an Alexander polynomial: value at 1 is {0}")]
    NotAlexander(Rational),
    #[error("recovered polynomial fails the logarithmic-derivative identity")]
    VerificationFailed,
    #[error("{DEGENERATE_MESSAGE}")]
    DegenerateBranch,
    #[error("augmentation polynomial is identically zero")]
    ZeroAugPoly,
    #[error("augmentation polynomial may only involve lambda, mu, Q; found `{0}`")]
    ChordVariable(String),
    #[error("augmentation `{0}` is not an augmentation of the DGA")]
    BadAugmentation(String),
    #[error("no usable cycle on branch M")]
    NoUsableCycle,
    #[error("cycles disagree: {first} vs {second}")]
    Disagreement { first: String, second: String },
    #[error("malformed augmentation polynomial document: {0}")]
    Malformed(String),
    #[error("augmentation polynomial: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Augment(#[from] AugmentError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Which computation produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Route {
    #[serde(rename = "F-route")]
    FRoute,
    #[serde(rename = "Aug-route")]
    AugRoute,
    Burau,
    Novikov,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::FRoute => "F-route",
            Route::AugRoute => "Aug-route",
            Route::Burau => "Burau",
            Route::Novikov => "Novikov",
        })
    }
}

/// A normalized Alexander polynomial together with how it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct AlexReport {
    pub route: Route,
    /// Canonical form: integer, primitive, `delta(0) != 0`, `delta(1) = 1`.
    pub delta: UniPoly,
    /// Before normalization. Equals `delta` up to a sign and a power of `mu`.
    pub raw: LaurentPoly,
    pub integrand: RatFunc,
    pub degree_at_infinity: i64,
}

impl AlexReport {
    /// Wrap an already computed polynomial, deriving the integrand from it.
    pub fn from_raw(route: Route, raw: LaurentPoly) -> Result<Self, ExtractError> {
        let delta = normalize_alexander(&raw.body)?;
        let integrand = integrand_of(&raw);
        let degree_at_infinity = raw.top_degree().expect("normalized polynomials are nonzero");
        Ok(AlexReport { route, delta, raw, integrand, degree_at_infinity })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "route": self.route.to_string(),
            "delta": self.delta.to_string(),
            "raw": self.raw.to_string(),
            "integrand": { "num": self.integrand.num().to_string(), "den": self.integrand.den().to_string() },
            "degree_at_infinity": self.degree_at_infinity,
        })
    }
}

fn mu() -> RatFunc {
    RatFunc::variable("mu")
}

/// `mu / (1 - mu)`, the unknot's contribution.
fn unknot_term() -> RatFunc {
    let m = mu();
    m.div_ref(&RatFunc::one().sub_ref(&m)).expect("1 - mu is nonzero")
}

/// `R = -f_t / f_x`.
pub fn integrand(f_x: &RatFunc, f_t: &RatFunc) -> Result<RatFunc, ExtractError> {
    f_t.neg_ref().div_ref(f_x).ok_or(ExtractError::UnusableCycle)
}

/// `mu * Delta' / Delta + mu / (1 - mu)` for a Laurent `Delta`.
pub fn integrand_of(delta: &LaurentPoly) -> RatFunc {
    let body = RatFunc::from_poly(delta.body.renamed("mu"));
    let log_der = mu().mul_ref(&body.derivative()).div_ref(&body).expect("nonzero polynomial");
    log_der.add_ref(&RatFunc::from_int(delta.low)).add_ref(&unknot_term())
}

/// Invert the logarithmic derivative.
pub fn recover_alexander(r: &RatFunc, route: Route) -> Result<AlexReport, ExtractError> {
    let s = r.sub_ref(&unknot_term());
    let integer = |v: Option<Rational>, at: &str| -> Result<i64, ExtractError> {
        let v = v.ok_or_else(|| ExtractError::NotLogDerivative(format!("pole at {at}")))?;
        if !v.is_integer() {
            return Err(ExtractError::NotLogDerivative(format!("value {v} at {at} is not an integer")));
        }
        i64::try_from(v.to_integer()).map_err(|_| ExtractError::NotLogDerivative(format!("value at {at} out of range")))
    };
    let top = integer(s.value_at_infinity(), "infinity")?;
    let low = integer(s.value_at_zero(), "0")?.min(0);
    if top < low {
        return Err(ExtractError::NotLogDerivative(format!("degree {top} below order {low}")));
    }
    // mu^-low * Delta is a polynomial P with mu P'/P = S - low
    let shifted = s.sub_ref(&RatFunc::from_int(low));
    let (u, v) = (shifted.num(), shifted.den());
    let n = (top - low) as usize + 1;
    let height = n + u.degree().unwrap_or(0).max(v.degree().unwrap_or(0));
    // column k: k * mu^k * v - mu^k * u
    let system = Matrix::from_fn(height, n, |row, k| {
        let at = |p: &UniPoly| if row >= k { p.coeff(row - k) } else { Rational::zero() };
        rat(k as i64) * at(v) - at(u)
    });
    let kernel = system.kernel();
    if kernel.len() != 1 {
        return Err(ExtractError::NoConsistentDelta(kernel.len()));
    }
    let body = UniPoly::new("mu", kernel.into_iter().next().expect("one vector")).primitive();
    let raw = LaurentPoly { low, body };
    if !verify_laurent(r, &raw) {
        return Err(ExtractError::VerificationFailed);
    }
    let delta = normalize_alexander(&raw.body)?;
    Ok(AlexReport { route, delta, degree_at_infinity: top, raw, integrand: r.clone() })
}

/// Strip powers of `mu`, clear content and fix the sign so the value at 1 is 1.
pub fn normalize_alexander(raw: &UniPoly) -> Result<UniPoly, ExtractError> {
    let Some(k) = raw.ord0() else {
        return Err(ExtractError::NotAlexander(Rational::zero()));
    };
    let p = raw.shift_down(k).primitive().renamed("mu");
    let at_one = p.eval(&Rational::one());
    if at_one == Rational::one() {
        Ok(p)
    } else if at_one == -Rational::one() {
        Ok(-&p)
    } else {
        Err(ExtractError::NotAlexander(at_one))
    }
}

/// Exact check of `R = mu * Delta'/Delta + mu/(1-mu)`.
pub fn verify_logderivative(r: &RatFunc, delta: &UniPoly) -> bool {
    !delta.is_zero() && verify_laurent(r, &LaurentPoly { low: 0, body: delta.clone() })
}

fn verify_laurent(r: &RatFunc, delta: &LaurentPoly) -> bool {
    !delta.is_zero() && integrand_of(delta) == *r
}

/// Normalized `Delta(1/mu)`; equals `delta` for every genuine Alexander polynomial.
pub fn mirror(delta: &UniPoly) -> Result<UniPoly, ExtractError> {
    normalize_alexander(&delta.reversed())
}

/// A polynomial in `lambda, mu, Q` only.
#[derive(Debug, Clone, PartialEq)]
pub struct AugPoly {
    pub name: String,
    poly: MultiPoly,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AugPolyDocument {
    name: String,
    polynomial: String,
}

const RH_TREFOIL_AUG: &str = include_str!("../data/rh_trefoil_aug.json");

/// Built-in augmentation polynomials: `rh_trefoil`, and `unknot` taken
/// from the unknot DGA's metadata.
pub fn builtin_augpoly(name: &str) -> Result<AugPoly, ExtractError> {
    match name {
        "rh_trefoil" => AugPoly::from_json(RH_TREFOIL_AUG),
        "unknot" => {
            let dga = crate::dga::builtin_dga("unknot").expect("built-in DGA parses");
            AugPoly::new("unknot", dga.augmentation_polynomial().expect("unknot carries its polynomial"))
        }
        _ => Err(ExtractError::Malformed(format!("no built-in augmentation polynomial `{name}`"))),
    }
}

fn ring_symtab() -> Arc<Symtab> {
    Symtab::knot::<&str>(&[])
}

impl AugPoly {
    /// Accepts polynomials over any knot symtab as long as no chord occurs.
    pub fn new(name: &str, poly: &MultiPoly) -> Result<Self, ExtractError> {
        let s = poly.symtab();
        if let Some(i) = (RING_VARS.len()..s.len()).find(|&i| poly.uses_var(i)) {
            return Err(ExtractError::ChordVariable(s.name(i).to_string()));
        }
        if poly.is_zero() {
            return Err(ExtractError::ZeroAugPoly);
        }
        Ok(AugPoly { name: name.to_string(), poly: poly.remap(&ring_symtab())? })
    }

    pub fn parse(name: &str, text: &str) -> Result<Self, ExtractError> {
        Self::new(name, &parse_expr(text, &ring_symtab())?)
    }

    pub fn from_json(text: &str) -> Result<Self, ExtractError> {
        let doc: AugPolyDocument = serde_json::from_str(text).map_err(|e| ExtractError::Malformed(e.to_string()))?;
        Self::parse(&doc.name, &doc.polynomial)
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    /// `(f_x, f_t)`: the lambda- and Q-partials on the line `lambda = Q = 1`.
    pub fn branch_derivatives(&self) -> Result<(RatFunc, RatFunc), ExtractError> {
        let lifted = self.poly.absorb_var("mu")?;
        let line = pin(lifted.symtab(), &["lambda", "Q"]);
        Ok((lifted.partial("lambda")?.value_at(&line)?, lifted.partial("Q")?.value_at(&line)?))
    }
}

fn pin(s: &Arc<Symtab>, vars: &[&str]) -> Assignment {
    vars.iter().map(|v| (v.to_string(), Poly::one(s))).collect()
}

/// Per-identity verdicts of [`validate_augpoly`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AugValidation {
    /// `aug(lambda, 1, 1) = 0`.
    pub lambda_line: bool,
    /// `aug(1, mu, 1) = 0`.
    pub mu_line: bool,
    /// `d aug / d mu` vanishes on `lambda = Q = 1`.
    pub mu_partial: bool,
}

impl AugValidation {
    pub fn passed(&self) -> bool {
        self.lambda_line && self.mu_line && self.mu_partial
    }
}

pub fn validate_augpoly(aug: &AugPoly) -> Result<AugValidation, ExtractError> {
    let vanishes_on = |param: &str, pinned: &[&str]| -> Result<bool, ExtractError> {
        let lifted = aug.poly.absorb_var(param)?;
        Ok(lifted.value_at(&pin(lifted.symtab(), pinned))?.is_zero())
    };
    let lifted = aug.poly.absorb_var("mu")?;
    let mu_partial = lifted.partial("mu")?.value_at(&pin(lifted.symtab(), &["lambda", "Q"]))?.is_zero();
    Ok(AugValidation {
        lambda_line: vanishes_on("lambda", &["mu", "Q"])?,
        mu_line: vanishes_on("mu", &["lambda", "Q"])?,
        mu_partial,
    })
}

/// Both branch derivatives vanish identically.
pub fn detect_degenerate_branch(aug: &AugPoly) -> Result<bool, ExtractError> {
    let (fx, ft) = aug.branch_derivatives()?;
    Ok(fx.is_zero() && ft.is_zero())
}

pub fn alexander_from_augpoly(aug: &AugPoly) -> Result<AlexReport, ExtractError> {
    let (fx, ft) = aug.branch_derivatives()?;
    if fx.is_zero() {
        return Err(if ft.is_zero() { ExtractError::DegenerateBranch } else { ExtractError::UnusableCycle });
    }
    recover_alexander(&integrand(&fx, &ft)?, Route::AugRoute)
}

fn ring_only(p: &MultiPoly) -> Result<(), ExtractError> {
    let s = p.symtab();
    match (RING_VARS.len()..s.len()).find(|&i| p.uses_var(i)) {
        Some(i) => Err(ExtractError::ChordVariable(s.name(i).to_string())),
        None => Ok(()),
    }
}

/// Change of framing `(lambda, mu, Q) -> (lambda, lambda^k mu, Q)`.
pub fn framing_transform(p: &MultiPoly, k: i32) -> Result<MultiPoly, ExtractError> {
    ring_only(p)?;
    Ok(p.map_exponents(|e| {
        let mut out = e.to_vec();
        out[0] += k * e[1];
        out
    })?)
}

/// `(lambda, mu, Q) -> (lambda Q^l, mu Q^m, Q)`.
pub fn splitting_transform(p: &MultiPoly, l: i32, m: i32) -> Result<MultiPoly, ExtractError> {
    ring_only(p)?;
    Ok(p.map_exponents(|e| {
        let mut out = e.to_vec();
        out[2] += l * e[0] + m * e[1];
        out
    })?)
}

/// Outcome of one `(k, l, m)` point of a transform sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub framing: i32,
    pub splitting: (i32, i32),
    pub delta: Result<UniPoly, ExtractError>,
}

/// Apply splitting `(l, m)` then framing `k` for every triple in `range^3`
/// and extract `delta` from each transformed polynomial.
pub fn transform_sweep(aug: &AugPoly, range: std::ops::RangeInclusive<i32>, exec: Execution) -> Vec<SweepPoint> {
    let values: Vec<i32> = range.collect();
    let mut triples = Vec::with_capacity(values.len().pow(3));
    for &k in &values {
        for &l in &values {
            triples.extend(values.iter().map(|&m| (k, l, m)));
        }
    }
    exec.map(&triples, |&(k, l, m)| {
        let delta = splitting_transform(aug.poly(), l, m)
            .and_then(|p| framing_transform(&p, k))
            .and_then(|p| AugPoly::new(&aug.name, &p))
            .and_then(|a| alexander_from_augpoly(&a))
            .map(|r| r.delta);
        SweepPoint { framing: k, splitting: (l, m), delta }
    })
}

/// `Delta` recovered from its own integrand, for a batch of polynomials.
pub fn roundtrip_suite(deltas: &[UniPoly], exec: Execution) -> Vec<Result<AlexReport, ExtractError>> {
    exec.map(deltas, |d| recover_alexander(&integrand_of(&LaurentPoly { low: 0, body: d.clone() }), Route::FRoute))
}

/// One usable cycle's contribution to the F-route.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleAlex {
    pub cycle: CycleReport,
    pub report: AlexReport,
}

/// Everything the F-route computes for a DGA.
#[derive(Debug, Clone, PartialEq)]
pub struct FRouteOutcome {
    pub family: AugFamily,
    pub cycles: Vec<CycleReport>,
    pub reports: Vec<CycleAlex>,
}

impl FRouteOutcome {
    /// The common `delta` of all usable cycles.
    pub fn delta(&self) -> &UniPoly {
        &self.reports[0].report.delta
    }
}

/// Branch-M augmentation (given or solved), generating cycles, one report
/// per usable cycle, all of which must agree.
pub fn alexander_from_dga(
    dga: &Dga,
    family: Option<AugFamily>,
    budget: &Budget,
    exec: Execution,
) -> Result<FRouteOutcome, ExtractError> {
    let family = match family {
        Some(f) => {
            let check = verify_augmentation(dga, &f)?;
            if let Some((g, r)) = check.failures().next() {
                return Err(ExtractError::BadAugmentation(format!("residual {r} on d{g}")));
            }
            f
        }
        None => solve_augmentation_family(dga, Branch::M, budget)?
            .into_iter()
            .next()
            .ok_or_else(|| ExtractError::BadAugmentation("no rational branch-M family".into()))?,
    };
    let cycles = find_generating_cycles(dga, &family, exec)?;
    let usable: Vec<&CycleReport> = cycles.iter().filter(|c| c.status == CycleStatus::Usable).collect();
    let reports = exec
        .map(&usable, |c| -> Result<CycleAlex, ExtractError> {
            let r = recover_alexander(&integrand(&c.f_first, &c.f_t)?, Route::FRoute)?;
            Ok(CycleAlex { cycle: (*c).clone(), report: r })
        })
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let first = reports.first().ok_or(ExtractError::NoUsableCycle)?;
    if let Some(other) = reports.iter().find(|r| r.report.delta != first.report.delta) {
        return Err(ExtractError::Disagreement {
            first: first.report.delta.to_string(),
            second: other.report.delta.to_string(),
        });
    }
    Ok(FRouteOutcome { family, cycles, reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints("mu", c)
    }

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(p(num), p(den)).unwrap()
    }

    const TREFOIL_AUG: &str =
        "lambda^2*(mu - 1) + lambda*(mu^4 - mu^3*Q + 2*mu^2*Q^2 - 2*mu^2*Q - mu*Q^2 + Q^2) + (mu^3*Q^4 - mu^4*Q^3)";

    fn trefoil_aug() -> AugPoly {
        AugPoly::parse("rh_trefoil", TREFOIL_AUG).unwrap()
    }

    fn unknot_aug() -> AugPoly {
        AugPoly::parse("unknot", "1 - lambda - mu + lambda*mu*Q").unwrap()
    }

    /// (3mu^3 - 6mu^2 + 4mu - 2) / ((mu - 1)(mu^2 - mu + 1))
    fn trefoil_r() -> RatFunc {
        rf(&[-2, 4, -6, 3], &[-1, 2, -2, 1])
    }

    #[test]
    fn integrand_from_y1_derivatives() {
        let fx = RatFunc::from_poly(p(&[0, -1, 2, -2, 1]));
        let ft = RatFunc::from_poly(p(&[0, 2, -4, 6, -3]));
        assert_eq!(integrand(&fx, &ft).unwrap(), trefoil_r());
        assert!(integrand(&fx, &RatFunc::zero()).unwrap().is_zero());
        assert_eq!(integrand(&RatFunc::zero(), &fx), Err(ExtractError::UnusableCycle));
    }

    #[test]
    fn recover_trefoil() {
        let r = recover_alexander(&trefoil_r(), Route::FRoute).unwrap();
        assert_eq!(r.delta, p(&[1, -1, 1]));
        assert_eq!(r.raw.to_string(), "mu^4 - mu^3 + mu^2");
        assert_eq!(r.degree_at_infinity, 4);
        let s = trefoil_r().sub_ref(&unknot_term());
        assert_eq!(s, rf(&[2, -3, 4], &[1, -1, 1]));
    }

    #[test]
    fn recover_unknot() {
        let r = recover_alexander(&unknot_term(), Route::FRoute).unwrap();
        assert_eq!(r.delta.to_string(), "1");
        assert_eq!(r.degree_at_infinity, 0);
    }

    #[test]
    fn recover_rejects_non_alexander() {
        let two = RatFunc::from_int(2).mul_ref(&unknot_term());
        assert!(recover_alexander(&two, Route::FRoute).is_err());
        // log derivative of mu - 1, which is not Alexander
        let r = integrand_of(&LaurentPoly::from_poly(p(&[-1, 1])));
        assert_eq!(recover_alexander(&r, Route::FRoute), Err(ExtractError::NotAlexander(Rational::zero())));
        let half = unknot_term().add_ref(&RatFunc::constant("mu", Rational::new(1.into(), 2.into())));
        assert!(matches!(recover_alexander(&half, Route::FRoute), Err(ExtractError::NotLogDerivative(_))));
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_alexander(&p(&[0, 0, 1, -1, 1])).unwrap(), p(&[1, -1, 1]));
        assert_eq!(normalize_alexander(&p(&[1])).unwrap(), p(&[1]));
        assert_eq!(normalize_alexander(&p(&[-2, 2, -2])).unwrap(), p(&[1, -1, 1]));
        assert_eq!(normalize_alexander(&p(&[-1, 1])), Err(ExtractError::NotAlexander(Rational::zero())));
    }

    #[test]
    fn logderivative_checks() {
        assert!(verify_logderivative(&trefoil_r(), &p(&[0, 0, 1, -1, 1])));
        assert!(verify_logderivative(&unknot_term(), &p(&[1])));
        assert!(!verify_logderivative(&trefoil_r(), &p(&[1, -3, 1])));
    }

    #[test]
    fn trefoil_aug_route() {
        let aug = trefoil_aug();
        let (fx, ft) = aug.branch_derivatives().unwrap();
        assert_eq!(fx, RatFunc::from_poly(p(&[-1, 1, 0, -1, 1])));
        assert_eq!(ft, RatFunc::from_poly(p(&[2, -2, 2, 3, -3])));
        assert_eq!(alexander_from_augpoly(&aug).unwrap().delta, p(&[1, -1, 1]));
        assert!(validate_augpoly(&aug).unwrap().passed());
        assert!(!detect_degenerate_branch(&aug).unwrap());
    }

    #[test]
    fn unknot_aug_route() {
        let aug = unknot_aug();
        assert_eq!(alexander_from_augpoly(&aug).unwrap().delta.to_string(), "1");
        assert!(validate_augpoly(&aug).unwrap().passed());
        assert!(!detect_degenerate_branch(&aug).unwrap());
    }

    #[test]
    fn validation_failure_and_degenerate() {
        let v = validate_augpoly(&AugPoly::parse("x", "lambda - mu").unwrap()).unwrap();
        assert!(!v.lambda_line);
        let degenerate = AugPoly::parse("d", "(lambda - 1)^2*(mu - 1) + (Q - 1)^2*mu").unwrap();
        assert!(detect_degenerate_branch(&degenerate).unwrap());
        assert_eq!(alexander_from_augpoly(&degenerate), Err(ExtractError::DegenerateBranch));
    }

    #[test]
    fn transforms() {
        let s = ring_symtab();
        let f = framing_transform(&parse_expr("lambda*mu", &s).unwrap(), 2).unwrap();
        assert_eq!(f.to_string(), "lambda^3*mu");
        let g = splitting_transform(&parse_expr("mu", &s).unwrap(), 0, 1).unwrap();
        assert_eq!(g.to_string(), "mu*Q");
        let framed = framing_transform(trefoil_aug().poly(), 1).unwrap();
        assert_eq!(alexander_from_augpoly(&AugPoly::new("f", &framed).unwrap()).unwrap().delta, p(&[1, -1, 1]));
        let chords = Symtab::knot(&["a"]);
        assert!(matches!(framing_transform(&parse_expr("a*mu", &chords).unwrap(), 1), Err(ExtractError::ChordVariable(_))));
    }

    #[test]
    fn sweep_is_invariant() {
        let points = transform_sweep(&trefoil_aug(), -1..=1, Execution::Parallel);
        assert_eq!(points.len(), 27);
        for pt in points {
            assert_eq!(pt.delta.as_ref().unwrap(), &p(&[1, -1, 1]), "{pt:?}");
        }
    }

    #[test]
    fn aug_document() {
        let a = AugPoly::from_json(r#"{"name":"u","polynomial":"1 - lambda - mu + lambda*mu*Q"}"#).unwrap();
        assert_eq!(a, unknot_aug().renamed("u"));
        assert!(AugPoly::from_json(r#"{"name":"u","polynomial":"a12"}"#).is_err());
        assert_eq!(AugPoly::parse("z", "0"), Err(ExtractError::ZeroAugPoly));
    }

    impl AugPoly {
        fn renamed(mut self, n: &str) -> Self {
            self.name = n.into();
            self
        }
    }

    #[test]
    fn builtins_match_literals() {
        assert_eq!(builtin_augpoly("rh_trefoil").unwrap().poly(), trefoil_aug().poly());
        assert_eq!(builtin_augpoly("unknot").unwrap().poly(), unknot_aug().poly());
        assert!(builtin_augpoly("8_20").is_err());
    }

    #[test]
    fn report_json_shape() {
        let r = alexander_from_augpoly(&trefoil_aug()).unwrap();
        let j = r.to_json();
        assert_eq!(j["route"], "Aug-route");
        assert_eq!(j["delta"], "mu^2 - mu + 1");
        assert_eq!(j["degree_at_infinity"], 4);
        assert!(j["integrand"]["den"].is_string());
    }

    #[test]
    fn trefoil_f_route_cycles_agree() {
        let dga = crate::dga::builtin_dga("rh_trefoil").unwrap();
        let out = alexander_from_dga(&dga, None, &Budget::unlimited(), Execution::Parallel).unwrap();
        assert_eq!(out.delta(), &p(&[1, -1, 1]));
        assert!(out.reports.len() >= 2);
    }

    fn alexander_like() -> impl Strategy<Value = UniPoly> {
        proptest::collection::vec(-5i64..=5, 1..=9).prop_filter_map("Delta(0) != 0, Delta(1) = ±1", |mut c| {
            if c[0] == 0 {
                return None;
            }
            // adjust the top coefficient so the value at 1 is +1 or -1
            let s: i64 = c.iter().sum();
            let last = c.len() - 1;
            if last == 0 {
                return (c[0].abs() == 1).then(|| p(&c));
            }
            c[last] += 1 - s;
            (c[last] != 0).then(|| p(&c))
        })
    }

    proptest! {
        #[test]
        fn roundtrip(d in alexander_like()) {
            let r = recover_alexander(&integrand_of(&LaurentPoly::from_poly(d.clone())), Route::FRoute).unwrap();
            prop_assert_eq!(&r.delta, &normalize_alexander(&d).unwrap());
            prop_assert_eq!(r.degree_at_infinity, r.raw.top_degree().unwrap());
        }

        #[test]
        fn shift_by_mu_power_is_invisible(d in alexander_like(), k in -4i64..=4) {
            let shifted = LaurentPoly { low: k, body: d.clone() };
            let r = recover_alexander(&integrand_of(&shifted), Route::FRoute).unwrap();
            prop_assert_eq!(r.delta, normalize_alexander(&d).unwrap());
        }
    }
}

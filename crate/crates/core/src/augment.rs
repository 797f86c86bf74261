//! Augmentations on the two canonical branches, linearized differentials,
//! generating cycles and branch functions.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Assignment, Field, Matrix, Poly, RatFunc, Rational, Ring, Symtab, UniPoly};
use crate::dga::{parse_ratfunc, Dga, ParseError};
use crate::groebner::{Budget, GroebnerError, Ideal, MonomialOrder};
use crate::par::Execution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AugmentError {
    #[error("no value supplied for degree-0 chord `{0}`")]
    MissingValue(String),
    #[error("value supplied for `{0}`, which is not a degree-0 chord")]
    UnknownChord(String),
    #[error("value of `{chord}`: {source}")]
    BadValue {
        chord: String,
        #[source]
        source: ParseError,
    },
    #[error("malformed augmentation document: {0}")]
    Malformed(String),
    #[error("unsolvable at desk scale: {0}")]
    Unsolvable(String),
    #[error("degree-{0} differentials are absent")]
    MissingDifferentials(u8),
    #[error("linearized differential has an empty kernel; the input is inconsistent")]
    EmptyKernel,
    #[error("branch function does not vanish on the pinned line: {0}")]
    NotVanishing(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// The two canonical one-parameter branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// `lambda = Q = 1`, parameter `mu`.
    M,
    /// `mu = Q = 1`, parameter `lambda`.
    L,
}

impl Branch {
    pub fn parameter(self) -> &'static str {
        match self {
            Branch::M => "mu",
            Branch::L => "lambda",
        }
    }

    /// The ring variable pinned to one besides `Q`.
    pub fn pinned(self) -> &'static str {
        match self {
            Branch::M => "lambda",
            Branch::L => "mu",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::M => "M",
            Branch::L => "L",
        })
    }
}

/// Values of an augmentation on every degree-0 chord, as rational functions
/// of the branch parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct AugFamily {
    pub branch: Branch,
    pub values: BTreeMap<String, RatFunc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AugFamilyDocument {
    branch: Branch,
    values: BTreeMap<String, String>,
}

impl AugFamily {
    /// The augmentation sending every degree-0 chord to zero.
    pub fn trivial(dga: &Dga, branch: Branch) -> Self {
        let zero = RatFunc::from_poly(UniPoly::zero_in(branch.parameter()));
        AugFamily { branch, values: dga.chords(0).into_iter().map(|c| (c.to_string(), zero.clone())).collect() }
    }

    pub fn from_json(text: &str) -> Result<Self, AugmentError> {
        let doc: AugFamilyDocument = serde_json::from_str(text).map_err(|e| AugmentError::Malformed(e.to_string()))?;
        let mut values = BTreeMap::new();
        for (chord, v) in doc.values {
            let r = parse_ratfunc(&v, doc.branch.parameter()).map_err(|source| AugmentError::BadValue { chord: chord.clone(), source })?;
            values.insert(chord, r);
        }
        Ok(AugFamily { branch: doc.branch, values })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let values: BTreeMap<&str, String> = self.values.iter().map(|(k, v)| (k.as_str(), v.to_string())).collect();
        serde_json::json!({ "branch": self.branch.to_string(), "values": values })
    }

    fn check_against(&self, dga: &Dga) -> Result<(), AugmentError> {
        let chords = dga.chords(0);
        if let Some(c) = chords.iter().find(|c| !self.values.contains_key(**c)) {
            return Err(AugmentError::MissingValue(c.to_string()));
        }
        if let Some(c) = self.values.keys().find(|k| !chords.contains(&k.as_str())) {
            return Err(AugmentError::UnknownChord(c.clone()));
        }
        Ok(())
    }

    /// Degree-0 chords to their values, the parameter into the coefficient
    /// field and, with `pin`, the pinned ring variables to one. Degree-1
    /// chords go to zero.
    fn assignment(&self, dga: &Dga, pin: bool) -> Assignment {
        let s = dga.symtab();
        let mut a = Assignment::new();
        let param = self.branch.parameter();
        a.insert(param.to_string(), Poly::constant(s, RatFunc::variable(param)));
        for (c, v) in &self.values {
            a.insert(c.clone(), Poly::constant(s, v.clone()));
        }
        for c in dga.chords(1) {
            a.insert(c.to_string(), Poly::zero(s));
        }
        if pin {
            a.insert(self.branch.pinned().to_string(), Poly::one(s));
            a.insert("Q".to_string(), Poly::one(s));
        }
        a
    }
}

/// Outcome of [`verify_augmentation`].
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentationCheck {
    /// `(generator, residual)` for each degree-1 generator in declaration order.
    pub residuals: Vec<(String, RatFunc)>,
}

impl AugmentationCheck {
    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }

    pub fn failures(&self) -> impl Iterator<Item = &(String, RatFunc)> {
        self.residuals.iter().filter(|(_, r)| !r.is_zero())
    }
}

/// Substitute the family into every degree-1 differential.
pub fn verify_augmentation(dga: &Dga, fam: &AugFamily) -> Result<AugmentationCheck, AugmentError> {
    fam.check_against(dga)?;
    let a = fam.assignment(dga, true);
    let residuals = dga
        .chords(1)
        .into_iter()
        .map(|g| {
            let d = dga.differential(g).expect("validated");
            Ok((g.to_string(), d.substitute(&a)?.value_at(&Assignment::new())?))
        })
        .collect::<Result<_, AlgebraError>>()?;
    Ok(AugmentationCheck { residuals })
}

/// All fully rational one-parameter augmentations on `branch`.
///
/// Builds the system of degree-1 differentials in the degree-0 chords over
/// the field of rational functions in the parameter, takes a lex Groebner
/// basis and back-substitutes from the last chord, accepting linear factors
/// and quadratics with square discriminant.
pub fn solve_augmentation_family(dga: &Dga, branch: Branch, budget: &Budget) -> Result<Vec<AugFamily>, AugmentError> {
    let chords: Vec<String> = dga.chords(0).into_iter().map(String::from).collect();
    let chord_tab = Symtab::plain(&chords);
    let mut pin = Assignment::new();
    let s = dga.symtab();
    let param = branch.parameter();
    pin.insert(param.to_string(), Poly::constant(s, RatFunc::variable(param)));
    pin.insert(branch.pinned().to_string(), Poly::one(s));
    pin.insert("Q".to_string(), Poly::one(s));
    let mut system = Vec::new();
    for g in dga.chords(1) {
        let p = dga.differential(g).expect("validated").substitute(&pin)?;
        system.push(p.remap(&chord_tab)?);
    }
    let basis = Ideal::new(&chord_tab, system)?.groebner_basis(&MonomialOrder::Lex, budget)?;

    let mut partials = vec![BTreeMap::new()];
    for k in (0..chords.len()).rev() {
        let mut next = Vec::new();
        for known in partials {
            for root in roots_for(&basis, &chord_tab, k, &known, param)? {
                let mut m = known.clone();
                m.insert(chords[k].clone(), root);
                next.push(m);
            }
        }
        partials = next;
    }
    let mut out = Vec::new();
    for values in partials {
        // every basis element must vanish, including those never used as pivots
        let fam = AugFamily { branch, values };
        if verify_augmentation(dga, &fam)?.passed() {
            out.push(fam);
        }
    }
    Ok(out)
}

/// Candidate values of chord `k` given values for the chords after it.
fn roots_for(
    basis: &[Poly<RatFunc>],
    tab: &Arc<Symtab>,
    k: usize,
    known: &BTreeMap<String, RatFunc>,
    param: &str,
) -> Result<Vec<RatFunc>, AugmentError> {
    let mut asg = Assignment::new();
    for (c, v) in known {
        asg.insert(c.clone(), Poly::constant(tab, v.clone()));
    }
    let relevant = basis.iter().filter(|g| (0..k).all(|i| !g.uses_var(i)));
    // univariate polynomials in chord k, coefficient lists ascending
    let mut univariate: Vec<Vec<RatFunc>> = Vec::new();
    for g in relevant {
        let p = g.substitute(&asg)?;
        if p.is_zero() {
            continue;
        }
        let deg = p.terms().map(|(e, _)| e[k]).max().expect("nonzero") as usize;
        let mut coeffs = vec![RatFunc::zero(); deg + 1];
        for (e, c) in p.terms() {
            coeffs[e[k] as usize] = c.clone();
        }
        if deg == 0 {
            return Ok(Vec::new());
        }
        univariate.push(coeffs);
    }
    let name = tab.name(k);
    let Some(pivot) = univariate.iter().min_by_key(|c| c.len()) else {
        return Err(AugmentError::Unsolvable(format!("`{name}` is not determined (positive-dimensional family)")));
    };
    let candidates = match pivot.len() - 1 {
        1 => vec![pivot[0].neg_ref().div_ref(&pivot[1]).expect("nonzero leading coefficient")],
        2 => {
            let (c, b, a) = (&pivot[0], &pivot[1], &pivot[2]);
            let disc = b.mul_ref(b).sub_ref(&RatFunc::from_int(4).mul_ref(a).mul_ref(c));
            let root = disc.sqrt().ok_or_else(|| {
                AugmentError::Unsolvable(format!("discriminant {disc} for `{name}` is not a square in Q({param})"))
            })?;
            let two_a = RatFunc::from_int(2).mul_ref(a);
            let mut rs = vec![
                b.neg_ref().add_ref(&root).div_ref(&two_a).expect("nonzero"),
                b.neg_ref().sub_ref(&root).div_ref(&two_a).expect("nonzero"),
            ];
            rs.dedup();
            rs
        }
        d => return Err(AugmentError::Unsolvable(format!("`{name}` satisfies a degree-{d} equation"))),
    };
    let eval = |coeffs: &[RatFunc], x: &RatFunc| coeffs.iter().rev().fold(RatFunc::zero(), |acc, c| acc.mul_ref(x).add_ref(c));
    Ok(candidates.into_iter().filter(|x| univariate.iter().all(|u| eval(u, x).is_zero())).collect())
}

/// Linearized differential from degree `from_degree` to `from_degree - 1`.
///
/// Entry `(target, source)` is the partial derivative of `∂source` in the
/// target chord with the augmentation and pinned values substituted.
pub fn linearized_matrix(dga: &Dga, fam: &AugFamily, from_degree: u8) -> Result<Matrix<RatFunc>, AugmentError> {
    fam.check_against(dga)?;
    if from_degree == 2 && !dga.has_degree2_differentials() {
        return Err(AugmentError::MissingDifferentials(2));
    }
    if from_degree != 1 && from_degree != 2 {
        return Err(AugmentError::MissingDifferentials(from_degree));
    }
    let rows = dga.chords(from_degree - 1);
    let cols = dga.chords(from_degree);
    let a = fam.assignment(dga, true);
    let mut data = Vec::with_capacity(rows.len() * cols.len());
    for r in &rows {
        for c in &cols {
            let d = dga.differential(c).expect("checked above").partial(r)?;
            data.push(d.substitute(&a)?.value_at(&Assignment::new())?);
        }
    }
    Ok(Matrix::with_shape(rows.len(), cols.len(), data)?)
}

/// A cycle of the linearized complex in degree one.
#[derive(Debug, Clone, PartialEq)]
pub struct Cycle {
    /// Coordinates on the degree-1 chords, in declaration order.
    pub chords: Vec<String>,
    pub coordinates: Vec<RatFunc>,
}

impl Cycle {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(|c| c.is_zero())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let m: BTreeMap<&str, String> =
            self.chords.iter().zip(&self.coordinates).map(|(k, v)| (k.as_str(), v.to_string())).collect();
        serde_json::json!(m)
    }
}

/// `F` (branch M) or `G` (branch L): the differential of a cycle with the
/// augmentation substituted, symbolic in the non-parameter ring variables.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchFunction {
    pub branch: Branch,
    pub function: Poly<RatFunc>,
}

pub fn compute_branch_function(dga: &Dga, fam: &AugFamily, y: &Cycle) -> Result<BranchFunction, AugmentError> {
    fam.check_against(dga)?;
    let a = fam.assignment(dga, false);
    let s = dga.symtab();
    let mut f = Poly::zero(s);
    for (chord, coef) in y.chords.iter().zip(&y.coordinates) {
        if coef.is_zero() {
            continue;
        }
        let d = dga.differential(chord).ok_or_else(|| AugmentError::UnknownChord(chord.clone()))?;
        f = &f + &d.substitute(&a)?.scale(coef);
    }
    let mut pin = Assignment::new();
    pin.insert(fam.branch.pinned().to_string(), Poly::one(s));
    pin.insert("Q".to_string(), Poly::one(s));
    let on_line = f.substitute(&pin)?;
    if !on_line.is_zero() {
        return Err(AugmentError::NotVanishing(on_line.to_string()));
    }
    Ok(BranchFunction { branch: fam.branch, function: f })
}

/// `(∂F/∂lambda, ∂F/∂Q)` on branch M, `(∂G/∂mu, ∂G/∂Q)` on branch L, both
/// restricted to the pinned line.
pub fn branch_derivatives(bf: &BranchFunction) -> Result<(RatFunc, RatFunc), AugmentError> {
    let s = bf.function.symtab();
    let mut pin = Assignment::new();
    pin.insert(bf.branch.pinned().to_string(), Poly::one(s));
    pin.insert("Q".to_string(), Poly::one(s));
    let restrict = |var: &str| -> Result<RatFunc, AugmentError> {
        Ok(bf.function.partial(var)?.value_at(&pin)?)
    };
    Ok((restrict(bf.branch.pinned())?, restrict("Q")?))
}

/// Whether a cycle can feed the integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleStatus {
    /// The first derivative is not identically zero.
    Usable,
    /// Both derivatives vanish or the first does: the integrand is `0/0` or undefined.
    Degenerate,
    /// Branch L only: `lambda * f_p != (lambda - 1) * f_t`.
    IdentityViolation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycleReport {
    pub index: usize,
    pub cycle: Cycle,
    pub branch_function: BranchFunction,
    pub f_first: RatFunc,
    pub f_t: RatFunc,
    pub status: CycleStatus,
}

/// `lambda * f_p == (lambda - 1) * f_t` as rational functions in `lambda`.
pub fn branch_l_identity_holds(f_p: &RatFunc, f_t: &RatFunc) -> bool {
    let lam = RatFunc::variable("lambda");
    let lhs = lam.mul_ref(f_p);
    let rhs = lam.sub_ref(&RatFunc::one()).mul_ref(f_t);
    lhs == rhs
}

/// Kernel cycles of the linearized differential with their branch data.
///
/// With degree-2 differentials present, kernel vectors already spanned by
/// the image (together with earlier picks) are dropped.
pub fn find_generating_cycles(dga: &Dga, fam: &AugFamily, exec: Execution) -> Result<Vec<CycleReport>, AugmentError> {
    let m1 = linearized_matrix(dga, fam, 1)?;
    let mut kernel = m1.kernel();
    if kernel.is_empty() {
        return Err(AugmentError::EmptyKernel);
    }
    if dga.has_degree2_differentials() {
        let m2 = linearized_matrix(dga, fam, 2)?;
        let mut span: Vec<Vec<RatFunc>> = (0..m2.cols()).map(|j| m2.column(j)).collect();
        let mut rank = rank_of(&span, m1.cols());
        let mut reps = Vec::new();
        for v in kernel {
            span.push(v.clone());
            let r = rank_of(&span, m1.cols());
            if r > rank {
                rank = r;
                reps.push(v);
            } else {
                span.pop();
            }
        }
        kernel = reps;
    }
    let chords: Vec<String> = dga.chords(1).into_iter().map(String::from).collect();
    let indexed: Vec<(usize, Vec<RatFunc>)> = kernel.into_iter().map(primitive_vector).enumerate().collect();
    let reports = exec.map(&indexed, |(index, v)| -> Result<CycleReport, AugmentError> {
        let cycle = Cycle { chords: chords.clone(), coordinates: v.clone() };
        let bf = compute_branch_function(dga, fam, &cycle)?;
        let (f_first, f_t) = branch_derivatives(&bf)?;
        let status = if f_first.is_zero() {
            CycleStatus::Degenerate
        } else if fam.branch == Branch::L && !branch_l_identity_holds(&f_first, &f_t) {
            CycleStatus::IdentityViolation
        } else {
            CycleStatus::Usable
        };
        Ok(CycleReport { index: *index, cycle, branch_function: bf, f_first, f_t, status })
    });
    reports.into_iter().collect()
}

/// Rescale a nonzero vector to coprime polynomial entries with integer
/// coefficients, the first nonzero entry having positive leading coefficient.
fn primitive_vector(v: Vec<RatFunc>) -> Vec<RatFunc> {
    let nonzero: Vec<&RatFunc> = v.iter().filter(|x| !x.is_zero()).collect();
    if nonzero.is_empty() {
        return v;
    }
    let lcm = nonzero.iter().fold(UniPoly::one(), |acc, x| {
        let g = acc.gcd(x.den()).expect("denominators are nonzero");
        (&acc * x.den()).div_rem(&g).0
    });
    let nums: Vec<UniPoly> = v.iter().map(|x| (&lcm * x.num()).div_rem(x.den()).0).collect();
    let g = nums.iter().filter(|p| !p.is_zero()).try_fold(UniPoly::zero(), |acc, p| acc.gcd(p)).expect("some entry is nonzero");
    let nums: Vec<UniPoly> = nums.iter().map(|p| p.div_rem(&g).0).collect();
    let content = nums.iter().filter(|p| !p.is_zero()).map(UniPoly::content).reduce(|a, b| rational_gcd(&a, &b)).expect("nonzero");
    let lead = nums.iter().find(|p| !p.is_zero()).expect("nonzero").lead();
    let scale = if lead < Rational::zero() { -content.recip() } else { content.recip() };
    nums.iter().map(|p| RatFunc::from_poly(p.scale(&scale))).collect()
}

fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    use num_integer::Integer;
    Rational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

fn rank_of(vectors: &[Vec<RatFunc>], len: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let data = vectors.iter().flat_map(|v| v.iter().cloned()).collect();
    Matrix::with_shape(vectors.len(), len, data).expect("uniform length").rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::{builtin_dga, parse_dga};

    fn mu(c: &[i64]) -> UniPoly {
        UniPoly::from_ints("mu", c)
    }

    fn known_family() -> AugFamily {
        AugFamily::from_json(r#"{"branch":"M","values":{"a12":"(mu-1)/mu^2","a21":"mu*(mu-1)"}}"#).unwrap()
    }

    fn trefoil() -> Dga {
        builtin_dga("rh_trefoil").unwrap()
    }

    #[test]
    fn trefoil_family_verifies() {
        let c = verify_augmentation(&trefoil(), &known_family()).unwrap();
        assert_eq!(c.residuals.len(), 6);
        assert!(c.passed());
    }

    #[test]
    fn trivial_family_on_branch_l() {
        let d = trefoil();
        assert!(verify_augmentation(&d, &AugFamily::trivial(&d, Branch::L)).unwrap().passed());
    }

    #[test]
    fn wrong_value_fails_on_b21() {
        let fam = AugFamily::from_json(r#"{"branch":"M","values":{"a12":"(mu-1)/mu^2","a21":"mu"}}"#).unwrap();
        let c = verify_augmentation(&trefoil(), &fam).unwrap();
        assert!(!c.passed());
        assert!(c.failures().any(|(g, _)| g == "b21"));
    }

    #[test]
    fn missing_value_rejected() {
        let fam = AugFamily::from_json(r#"{"branch":"M","values":{"a12":"1"}}"#).unwrap();
        assert_eq!(verify_augmentation(&trefoil(), &fam), Err(AugmentError::MissingValue("a21".into())));
    }

    #[test]
    fn solver_recovers_trefoil_family() {
        let fams = solve_augmentation_family(&trefoil(), Branch::M, &Budget::unlimited()).unwrap();
        assert_eq!(fams, vec![known_family()]);
    }

    #[test]
    fn solver_on_unknot_gives_empty_assignment() {
        let d = builtin_dga("unknot").unwrap();
        for b in [Branch::M, Branch::L] {
            let fams = solve_augmentation_family(&d, b, &Budget::unlimited()).unwrap();
            assert_eq!(fams.len(), 1);
            assert!(fams[0].values.is_empty());
        }
    }

    fn toy(diff: &str) -> Dga {
        parse_dga(&format!(
            r#"{{"name":"toy","generators":[{{"name":"a","degree":0}},{{"name":"c","degree":1}}],"differentials":{{"c":"{diff}"}}}}"#
        ))
        .unwrap()
    }

    #[test]
    fn solver_quadratic_paths() {
        let fams = solve_augmentation_family(&toy("a^2 - (mu - 1)^2"), Branch::M, &Budget::unlimited()).unwrap();
        let vals: Vec<String> = fams.iter().map(|f| f.values["a"].to_string()).collect();
        assert_eq!(vals, ["mu - 1", "-mu + 1"]);
        let e = solve_augmentation_family(&toy("a^2 - mu"), Branch::M, &Budget::unlimited()).unwrap_err();
        assert!(matches!(e, AugmentError::Unsolvable(_)), "{e}");
        let e = solve_augmentation_family(&toy("a^3 - 2"), Branch::M, &Budget::unlimited()).unwrap_err();
        assert!(e.to_string().starts_with("unsolvable at desk scale"));
    }

    #[test]
    fn linearized_trefoil_b21_column() {
        let d = trefoil();
        let m = linearized_matrix(&d, &known_family(), 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 6));
        let b21 = d.chords(1).iter().position(|c| *c == "b21").unwrap();
        assert_eq!(m.get(0, b21), &RatFunc::from_int(-1));
        assert_eq!(m.get(1, b21), &RatFunc::new(mu(&[1]), mu(&[0, 0, 0, 1])).unwrap());
        assert_eq!(linearized_matrix(&d, &known_family(), 2), Err(AugmentError::MissingDifferentials(2)));
    }

    #[test]
    fn unknot_linearization_is_empty() {
        let d = builtin_dga("unknot").unwrap();
        let m = linearized_matrix(&d, &AugFamily::trivial(&d, Branch::M), 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 1));
    }

    /// Reference cycle y1 = mu^2(2-mu) c21 + mu(2mu-1) c22 + (1-mu^2) b12.
    fn y1(d: &Dga) -> Cycle {
        let chords: Vec<String> = d.chords(1).into_iter().map(String::from).collect();
        let coordinates = chords
            .iter()
            .map(|c| match c.as_str() {
                "c21" => RatFunc::from_poly(mu(&[0, 0, 2, -1])),
                "c22" => RatFunc::from_poly(mu(&[0, -1, 2])),
                "b12" => RatFunc::from_poly(mu(&[1, 0, -1])),
                _ => RatFunc::zero(),
            })
            .collect();
        Cycle { chords, coordinates }
    }

    #[test]
    fn y1_derivatives_match() {
        let d = trefoil();
        let bf = compute_branch_function(&d, &known_family(), &y1(&d)).unwrap();
        let (fx, ft) = branch_derivatives(&bf).unwrap();
        // mu(mu-1)(mu^2-mu+1) and mu(2-4mu+6mu^2-3mu^3)
        assert_eq!(fx, RatFunc::from_poly(&(&mu(&[0, 1]) * &mu(&[-1, 1])) * &mu(&[1, -1, 1])));
        assert_eq!(ft, RatFunc::from_poly(mu(&[0, 2, -4, 6, -3])));
    }

    #[test]
    fn y1_is_in_the_kernel() {
        let d = trefoil();
        let m = linearized_matrix(&d, &known_family(), 1).unwrap();
        assert!(m.mul_vec(&y1(&d).coordinates).unwrap().iter().all(RatFunc::is_zero));
    }

    #[test]
    fn trefoil_kernel_splits_into_two_usable() {
        let d = trefoil();
        let reports = find_generating_cycles(&d, &known_family(), Execution::Sequential).unwrap();
        assert_eq!(reports.len(), 4);
        let m = linearized_matrix(&d, &known_family(), 1).unwrap();
        // usable cycles span a 2-dimensional space together with y1
        let usable: Vec<Vec<RatFunc>> =
            reports.iter().filter(|r| r.status == CycleStatus::Usable).map(|r| r.cycle.coordinates.clone()).collect();
        assert!(usable.len() >= 2);
        for r in &reports {
            assert!(m.mul_vec(&r.cycle.coordinates).unwrap().iter().all(RatFunc::is_zero));
        }
        let degenerate: Vec<Vec<RatFunc>> =
            reports.iter().filter(|r| r.status == CycleStatus::Degenerate).map(|r| r.cycle.coordinates.clone()).collect();
        // the degenerate subspace is exactly the span of y3, y4 (2-dimensional)
        assert_eq!(rank_of(&degenerate, 6), degenerate.len());
        let all: Vec<Vec<RatFunc>> = reports.iter().map(|r| r.cycle.coordinates.clone()).collect();
        assert_eq!(rank_of(&all, 6), 4);
    }

    #[test]
    fn primitive_vectors() {
        let v = vec![RatFunc::new(mu(&[1]), mu(&[0, 2])).unwrap(), RatFunc::zero(), RatFunc::new(mu(&[-3]), mu(&[0, 0, 4])).unwrap()];
        // (1/(2mu), 0, -3/(4mu^2)) ~ (2mu, 0, -3)
        let w = primitive_vector(v);
        assert_eq!(w, vec![RatFunc::from_poly(mu(&[0, 2])), RatFunc::zero(), RatFunc::from_int(-3)]);
    }

    #[test]
    fn zero_cycle_has_zero_derivatives() {
        let d = trefoil();
        let chords: Vec<String> = d.chords(1).into_iter().map(String::from).collect();
        let zero = Cycle { coordinates: vec![RatFunc::zero(); chords.len()], chords };
        let bf = compute_branch_function(&d, &known_family(), &zero).unwrap();
        assert_eq!(branch_derivatives(&bf).unwrap(), (RatFunc::zero(), RatFunc::zero()));
    }

    #[test]
    fn cycle_search_ignores_row_scaling() {
        let d = trefoil();
        let mut doc: serde_json::Value = serde_json::from_str(&d.to_json()).unwrap();
        for (_, v) in doc["differentials"].as_object_mut().unwrap() {
            *v = serde_json::Value::String(format!("-3/2*({})", v.as_str().unwrap()));
        }
        let scaled = parse_dga(&doc.to_string()).unwrap();
        let a = find_generating_cycles(&d, &known_family(), Execution::Sequential).unwrap();
        let b = find_generating_cycles(&scaled, &known_family(), Execution::Parallel).unwrap();
        assert_eq!(a.iter().map(|r| r.status).collect::<Vec<_>>(), b.iter().map(|r| r.status).collect::<Vec<_>>());
        assert_eq!(a.iter().map(|r| &r.cycle).collect::<Vec<_>>(), b.iter().map(|r| &r.cycle).collect::<Vec<_>>());
    }
}

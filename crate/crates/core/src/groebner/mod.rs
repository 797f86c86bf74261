//! Groebner bases over a coefficient field, with elimination, saturation
//! and the augmentation-polynomial pipeline.

mod basis;
mod order;

use std::sync::Arc;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::algebra::{AlgebraError, Field, MultiPoly, Poly, Rational, Symtab, RING_VARS};
use crate::dga::Dga;
use basis::GPoly;
pub use order::MonomialOrder;

/// Default wall-clock budget for one elimination.
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(120);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("variable `{0}` carries a negative exponent; clear denominators or saturate first")]
    Laurent(String),
    #[error("Groebner computation exceeded its {0:?} budget")]
    Timeout(Duration),
    #[error("elimination ideal is zero: no relation among the remaining variables (the augmentation polynomial may be 0)")]
    ZeroIdeal,
    #[error("DGA has no degree-1 differentials")]
    NoDifferentials,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Wall-clock deadline shared by every step of one computation.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    limit: Option<Duration>,
    deadline: Option<Instant>,
}

impl Budget {
    pub fn new(limit: Duration) -> Self {
        Budget { limit: Some(limit), deadline: Some(Instant::now() + limit) }
    }

    pub fn unlimited() -> Self {
        Budget { limit: None, deadline: None }
    }

    pub fn check(&self) -> Result<(), GroebnerError> {
        match (self.deadline, self.limit) {
            (Some(d), Some(l)) if Instant::now() > d => Err(GroebnerError::Timeout(l)),
            _ => Ok(()),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_TIMEOUT)
    }
}

/// An ideal given by generators sharing one symtab.
#[derive(Debug, Clone, PartialEq)]
pub struct Ideal<K> {
    symtab: Arc<Symtab>,
    generators: Vec<Poly<K>>,
}

impl<K: Field> Ideal<K> {
    /// Zero generators are dropped; the rest must share `symtab`.
    pub fn new(symtab: &Arc<Symtab>, generators: Vec<Poly<K>>) -> Result<Self, GroebnerError> {
        for g in &generators {
            if g.symtab() != symtab {
                return Err(AlgebraError::SymtabMismatch.into());
            }
        }
        Ok(Ideal { symtab: symtab.clone(), generators: generators.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn symtab(&self) -> &Arc<Symtab> {
        &self.symtab
    }

    pub fn generators(&self) -> &[Poly<K>] {
        &self.generators
    }

    fn gpolys(&self, order: &MonomialOrder) -> Result<Vec<GPoly<K>>, GroebnerError> {
        self.generators.iter().map(|g| GPoly::from_poly(g, order)).collect()
    }

    /// Reduced Groebner basis: monic, sorted by decreasing leading monomial.
    pub fn groebner_basis(&self, order: &MonomialOrder, budget: &Budget) -> Result<Vec<Poly<K>>, GroebnerError> {
        let gb = basis::buchberger(self.gpolys(order)?, order, budget)?;
        Ok(gb.iter().map(|g| g.to_poly(&self.symtab)).collect())
    }

    /// Groebner basis of the intersection with the ring in the kept variables.
    pub fn eliminate(&self, drop: &[&str], budget: &Budget) -> Result<Ideal<K>, GroebnerError> {
        let idx = drop.iter().map(|n| self.symtab.require(n)).collect::<Result<Vec<_>, _>>()?;
        let order = MonomialOrder::eliminating(self.symtab.len(), &idx);
        let gb = self.groebner_basis(&order, budget)?;
        let kept = gb.into_iter().filter(|g| idx.iter().all(|&i| !g.uses_var(i))).collect();
        Ideal::new(&self.symtab, kept)
    }

    /// `(I : f^inf)` through an auxiliary variable `w` and the relation `w f - 1`.
    pub fn saturate(&self, f: &Poly<K>, budget: &Budget) -> Result<Ideal<K>, GroebnerError> {
        let mut w = String::from("w");
        while self.symtab.index(&w).is_some() {
            w.push('_');
        }
        let big = self.symtab.extended(&[(w.as_str(), false)]);
        let lift = |p: &Poly<K>| p.remap(&big);
        let mut gens = self.generators.iter().map(lift).collect::<Result<Vec<_>, _>>()?;
        let wf = &Poly::var(&big, &w)? * &lift(f)?;
        gens.push(&wf - &Poly::one(&big));
        let sat = Ideal::new(&big, gens)?.eliminate(&[&w], budget)?;
        let back = sat.generators.iter().map(|g| g.remap(&self.symtab)).collect::<Result<Vec<_>, _>>()?;
        Ideal::new(&self.symtab, back)
    }
}

/// Remainder of `p` on division by `basis` (tried in the given order).
pub fn normal_form<K: Field>(p: &Poly<K>, basis: &[Poly<K>], order: &MonomialOrder) -> Result<Poly<K>, GroebnerError> {
    let gp = GPoly::from_poly(p, order)?;
    let gb = basis.iter().map(|g| GPoly::from_poly(g, order)).collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<&GPoly<K>> = gb.iter().filter(|g| !g.is_zero()).collect();
    Ok(gp.reduce(&refs, order, &Budget::unlimited())?.to_poly(p.symtab()))
}

/// Multivariate division by one polynomial: `(quotient, remainder)`.
pub fn divide<K: Field>(p: &Poly<K>, d: &Poly<K>) -> Result<(Poly<K>, Poly<K>), GroebnerError> {
    if d.is_zero() {
        return Err(AlgebraError::ZeroDenominator.into());
    }
    let order = MonomialOrder::GrevLex;
    let (q, r) = GPoly::from_poly(p, &order)?.divide(&GPoly::from_poly(d, &order)?, &order, &Budget::unlimited())?;
    Ok((q.to_poly(p.symtab()), r.to_poly(p.symtab())))
}

/// Exact quotient when `d` divides `p`.
pub fn exact_quotient<K: Field>(p: &Poly<K>, d: &Poly<K>) -> Result<Option<Poly<K>>, GroebnerError> {
    let (q, r) = divide(p, d)?;
    Ok(r.is_zero().then_some(q))
}

/// Least common multiple as the generator of `(f) ∩ (g)`.
pub fn lcm<K: Field>(f: &Poly<K>, g: &Poly<K>, budget: &Budget) -> Result<Poly<K>, GroebnerError> {
    let s = f.symtab();
    let mut t = String::from("t");
    while s.index(&t).is_some() {
        t.push('_');
    }
    let big = s.extended(&[(t.as_str(), false)]);
    let tv = Poly::var(&big, &t)?;
    let one = Poly::one(&big);
    let gens = vec![&tv * &f.remap(&big)?, &(&one - &tv) * &g.remap(&big)?];
    let inter = Ideal::new(&big, gens)?.eliminate(&[&t], budget)?;
    let l = inter.generators.into_iter().next().expect("intersection of nonzero principal ideals is nonzero");
    Ok(l.remap(s)?)
}

/// Monic (under grevlex) greatest common divisor.
pub fn gcd<K: Field>(f: &Poly<K>, g: &Poly<K>, budget: &Budget) -> Result<Poly<K>, GroebnerError> {
    if f.is_zero() {
        return Ok(monic(g));
    }
    if g.is_zero() {
        return Ok(monic(f));
    }
    let l = lcm(f, g, budget)?;
    let q = exact_quotient(&(f * g), &l)?.expect("lcm divides the product");
    Ok(monic(&q))
}

fn monic<K: Field>(p: &Poly<K>) -> Poly<K> {
    match GPoly::from_poly(p, &MonomialOrder::GrevLex) {
        Ok(gp) if !gp.is_zero() => p.scale(&gp.lc().inv().expect("nonzero")),
        _ => p.clone(),
    }
}

/// `p / gcd(p, all partial derivatives)`: the product of the distinct
/// irreducible factors of `p`, up to a unit.
pub fn squarefree_part<K: Field>(p: &Poly<K>, budget: &Budget) -> Result<Poly<K>, GroebnerError> {
    let mut g = p.clone();
    for i in 0..p.symtab().len() {
        if p.uses_var(i) {
            g = gcd(&g, &p.partial(p.symtab().name(i))?, budget)?;
        }
    }
    Ok(exact_quotient(p, &g)?.expect("gcd divides"))
}

/// Result of [`augpoly_from_dga`].
#[derive(Debug, Clone, PartialEq)]
pub struct AugPolyCandidate {
    /// Primitive integer polynomial in `lambda, mu, Q`.
    pub poly: MultiPoly,
    /// Whether the elimination ideal was principal.
    pub principal: bool,
    /// Size of the reduced basis of the elimination ideal.
    pub basis_size: usize,
    pub warning: Option<String>,
}

/// Primitive integer form with positive leading coefficient.
fn integral(p: &MultiPoly) -> MultiPoly {
    p.primitive().1
}

/// Eliminate every chord from the degree-1 differentials of `dga`.
pub fn augpoly_from_dga(dga: &Dga, budget: &Budget) -> Result<AugPolyCandidate, GroebnerError> {
    let s = dga.symtab();
    let degree1 = dga.chords(1);
    if degree1.is_empty() {
        return Err(GroebnerError::NoDifferentials);
    }
    let mut gens = Vec::new();
    for c in &degree1 {
        let d = dga.differential(c).expect("validated DGA has every degree-1 differential");
        let shift: Vec<i32> = d.min_exponents().iter().map(|&e| -e).collect();
        gens.push(d.mul_monomial(&shift)?);
    }
    let ideal = Ideal::new(s, gens)?;
    let ring_prod = RING_VARS.iter().try_fold(MultiPoly::one(s), |acc, v| MultiPoly::var(s, v).map(|x| &acc * &x))?;
    // saturate and eliminate in one pass: w*lambda*mu*Q - 1 with w and chords in front
    let mut w = String::from("w");
    while s.index(&w).is_some() {
        w.push('_');
    }
    let big = s.extended(&[(w.as_str(), false)]);
    let mut lifted = ideal.generators.iter().map(|g| g.remap(&big)).collect::<Result<Vec<_>, _>>()?;
    lifted.push(&(&MultiPoly::var(&big, &w)? * &ring_prod.remap(&big)?) - &MultiPoly::one(&big));
    let chords: Vec<&str> = s.names()[RING_VARS.len()..].iter().map(String::as_str).chain([w.as_str()]).collect();
    let elim = Ideal::new(&big, lifted)?.eliminate(&chords, budget)?;

    let ring_tab = Symtab::knot::<&str>(&[]);
    let members = elim.generators.iter().map(|g| g.remap(&ring_tab)).collect::<Result<Vec<_>, _>>()?;
    match members.len() {
        0 => Err(GroebnerError::ZeroIdeal),
        1 => {
            let sf = squarefree_part(&members[0].map_coeffs(Rational::clone), budget)?;
            Ok(AugPolyCandidate { poly: integral(&sf), principal: true, basis_size: 1, warning: None })
        }
        n => {
            let lowest = members
                .iter()
                .min_by_key(|g| g.total_degree().unwrap_or(0))
                .expect("nonempty");
            Ok(AugPolyCandidate {
                poly: integral(lowest),
                principal: false,
                basis_size: n,
                warning: Some(format!("non-principal elimination ideal ({n} generators); returning a lowest-degree member")),
            })
        }
    }
}

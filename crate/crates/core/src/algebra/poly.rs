use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::render::{render_power, render_terms, TermText};
use super::ring::{CoeffFormat, Field, Ring};
use super::{AlgebraError, RatFunc, Rational};

/// The three Laurent ring variables, always first in a knot symtab.
pub const RING_VARS: [&str; 3] = ["lambda", "mu", "Q"];

/// Ordered variable table. Laurent variables may carry negative exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symtab {
    names: Vec<String>,
    laurent: Vec<bool>,
}

impl Symtab {
    pub fn new<S: AsRef<str>>(vars: &[(S, bool)]) -> Arc<Self> {
        Arc::new(Symtab {
            names: vars.iter().map(|(n, _)| n.as_ref().to_string()).collect(),
            laurent: vars.iter().map(|(_, l)| *l).collect(),
        })
    }

    /// Plain polynomial variables, no Laurent exponents.
    pub fn plain<S: AsRef<str>>(vars: &[S]) -> Arc<Self> {
        Arc::new(Symtab { names: vars.iter().map(|v| v.as_ref().to_string()).collect(), laurent: vec![false; vars.len()] })
    }

    /// `lambda, mu, Q` followed by the given chord variables.
    pub fn knot<S: AsRef<str>>(chords: &[S]) -> Arc<Self> {
        let mut names: Vec<String> = RING_VARS.iter().map(|s| s.to_string()).collect();
        let mut laurent = vec![true; 3];
        for c in chords {
            names.push(c.as_ref().to_string());
            laurent.push(false);
        }
        Arc::new(Symtab { names, laurent })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn is_laurent(&self, i: usize) -> bool {
        self.laurent[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, AlgebraError> {
        self.index(name).ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    /// Append variables at the end of the table.
    pub fn extended<S: AsRef<str>>(&self, extra: &[(S, bool)]) -> Arc<Self> {
        let mut t = self.clone();
        for (n, l) in extra {
            t.names.push(n.as_ref().to_string());
            t.laurent.push(*l);
        }
        Arc::new(t)
    }

    fn check_exponents(&self, exps: &[i32]) -> Result<(), AlgebraError> {
        for (i, &e) in exps.iter().enumerate() {
            if e < 0 && !self.laurent[i] {
                return Err(AlgebraError::NegativeChordExponent(self.names[i].clone()));
            }
        }
        Ok(())
    }
}

/// Sparse multivariate Laurent polynomial over a coefficient ring `K`.
///
/// Terms are keyed by exponent vectors; the `BTreeMap` order is ascending
/// lex, so canonical (descending) order is reverse iteration.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<K> {
    symtab: Arc<Symtab>,
    terms: BTreeMap<Vec<i32>, K>,
}

/// Polynomial with rational coefficients.
pub type MultiPoly = Poly<Rational>;

/// Values for a substitution, each living over the same symtab as the input.
pub type Assignment = BTreeMap<String, Poly<RatFunc>>;

impl<K: Ring> Poly<K> {
    pub fn zero(symtab: &Arc<Symtab>) -> Self {
        Poly { symtab: symtab.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(symtab: &Arc<Symtab>, c: K) -> Self {
        let mut p = Self::zero(symtab);
        if !c.is_zero() {
            p.terms.insert(vec![0; symtab.len()], c);
        }
        p
    }

    pub fn one(symtab: &Arc<Symtab>) -> Self {
        Self::constant(symtab, K::one())
    }

    pub fn var(symtab: &Arc<Symtab>, name: &str) -> Result<Self, AlgebraError> {
        let i = symtab.require(name)?;
        let mut e = vec![0; symtab.len()];
        e[i] = 1;
        Ok(Self::monomial_unchecked(symtab, e, K::one()))
    }

    pub fn monomial(symtab: &Arc<Symtab>, exps: Vec<i32>, c: K) -> Result<Self, AlgebraError> {
        if exps.len() != symtab.len() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "exponent vector of length {} for {} variables",
                exps.len(),
                symtab.len()
            )));
        }
        symtab.check_exponents(&exps)?;
        Ok(Self::monomial_unchecked(symtab, exps, c))
    }

    fn monomial_unchecked(symtab: &Arc<Symtab>, exps: Vec<i32>, c: K) -> Self {
        let mut p = Self::zero(symtab);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Build from raw terms, summing duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Vec<i32>, K)>>(symtab: &Arc<Symtab>, terms: I) -> Result<Self, AlgebraError> {
        let mut p = Self::zero(symtab);
        for (e, c) in terms {
            if e.len() != symtab.len() {
                return Err(AlgebraError::DimensionMismatch("exponent vector length".into()));
            }
            symtab.check_exponents(&e)?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<i32>, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = old.add_ref(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn symtab(&self) -> &Arc<Symtab> {
        &self.symtab
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (descending lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i32>, &K)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exps: &[i32]) -> K {
        self.terms.get(exps).cloned().unwrap_or_else(K::zero)
    }

    /// The constant coefficient when the polynomial is a constant.
    pub fn as_constant(&self) -> Option<K> {
        match self.terms.len() {
            0 => Some(K::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Whether the variable at `i` occurs in some term.
    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] != 0)
    }

    /// Componentwise minimum exponent over all terms (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut m = vec![0; self.symtab.len()];
        for e in self.terms.keys() {
            for (a, &b) in m.iter_mut().zip(e) {
                *a = (*a).min(b);
            }
        }
        m
    }

    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn same_symtab(&self, other: &Self) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.symtab, &other.symtab) || self.symtab == other.symtab {
            Ok(())
        } else {
            Err(AlgebraError::SymtabMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_symtab(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_symtab(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.neg_ref());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_symtab(other)?;
        let mut out = Self::zero(&self.symtab);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.mul_ref(cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &K) -> Self {
        let mut out = Self::zero(&self.symtab);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.mul_ref(k));
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly { symtab: self.symtab.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg_ref())).collect() }
    }

    /// Multiply by the monomial with exponent vector `shift`.
    pub fn mul_monomial(&self, shift: &[i32]) -> Result<Self, AlgebraError> {
        self.map_exponents(|e| e.iter().zip(shift).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.symtab);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative; `d(x^n) = n x^(n-1)` for every integer `n`.
    pub fn partial(&self, name: &str) -> Result<Self, AlgebraError> {
        let i = self.symtab.require(name)?;
        let mut out = Self::zero(&self.symtab);
        for (e, c) in &self.terms {
            let n = e[i];
            if n == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c.mul_ref(&K::from_int(n as i64)));
        }
        Ok(out)
    }

    /// Apply a map on exponent vectors (e.g. a monomial change of variables),
    /// merging colliding terms.
    pub fn map_exponents<F: Fn(&[i32]) -> Vec<i32>>(&self, f: F) -> Result<Self, AlgebraError> {
        Self::from_terms(&self.symtab, self.terms.iter().map(|(e, c)| (f(e), c.clone())))
    }

    /// Move to another symtab by variable name. Variables absent from the
    /// target must not occur.
    pub fn remap(&self, target: &Arc<Symtab>) -> Result<Self, AlgebraError> {
        let mut idx = Vec::with_capacity(self.symtab.len());
        for (i, n) in self.symtab.names.iter().enumerate() {
            match target.index(n) {
                Some(j) => idx.push(Some(j)),
                None if self.uses_var(i) => return Err(AlgebraError::UnknownVariable(n.clone())),
                None => idx.push(None),
            }
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e2 = vec![0; target.len()];
            for (i, &x) in e.iter().enumerate() {
                if let Some(j) = idx[i] {
                    e2[j] = x;
                }
            }
            (e2, c.clone())
        });
        Poly::from_terms(target, terms)
    }

    pub fn map_coeffs<L: Ring, F: Fn(&K) -> L>(&self, f: F) -> Poly<L> {
        let mut out = Poly::zero(&self.symtab);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }
}

impl<K: Field> Poly<K> {
    /// Evaluate at a point given for every variable, in symtab order.
    pub fn eval(&self, point: &[K]) -> Result<K, AlgebraError> {
        if point.len() != self.symtab.len() {
            return Err(AlgebraError::DimensionMismatch("evaluation point length".into()));
        }
        let mut acc = K::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k != 0 {
                    t = t.mul_ref(&x.pow_i(k).ok_or(AlgebraError::Pole)?);
                }
            }
            acc = acc.add_ref(&t);
        }
        Ok(acc)
    }

    /// Multiplicative inverse, which exists only for nonzero monomials.
    fn inverse_monomial(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        let inv = c.inv()?;
        let neg: Vec<i32> = e.iter().map(|x| -x).collect();
        self.symtab.check_exponents(&neg).ok()?;
        Some(Self::monomial_unchecked(&self.symtab, neg, inv))
    }
}

impl MultiPoly {
    /// Substitute values for some variables; the rest stay symbolic. The
    /// result has rational-function coefficients over the same symtab.
    pub fn substitute(&self, assignment: &Assignment) -> Result<Poly<RatFunc>, AlgebraError> {
        self.map_coeffs(RatFunc::from_rational).substitute(assignment)
    }

    /// Lift to rational-function coefficients, moving `var` into the
    /// coefficient field as its indeterminate.
    pub fn absorb_var(&self, var: &str) -> Result<Poly<RatFunc>, AlgebraError> {
        let mut a = Assignment::new();
        a.insert(var.to_string(), Poly::constant(&self.symtab, RatFunc::variable(var)));
        self.substitute(&a)
    }

    /// Rational content times a primitive integer polynomial whose leading
    /// (canonical first) coefficient is positive.
    pub fn primitive(&self) -> (Rational, MultiPoly) {
        use num_integer::Integer;
        use num_traits::Signed;
        let Some((_, lead)) = self.terms().next() else {
            return (Rational::one(), self.clone());
        };
        let mut num = num_bigint::BigInt::from(0);
        let mut den = num_bigint::BigInt::from(1);
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let mut content = Rational::new(num, den);
        if lead.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }
}

impl Poly<RatFunc> {
    pub fn substitute(&self, assignment: &Assignment) -> Result<Poly<RatFunc>, AlgebraError> {
        let mut slots: Vec<Option<&Poly<RatFunc>>> = vec![None; self.symtab.len()];
        for (name, value) in assignment {
            let i = self.symtab.require(name)?;
            self.same_symtab(value)?;
            slots[i] = Some(value);
        }
        let mut inverses: Vec<Option<Poly<RatFunc>>> = vec![None; self.symtab.len()];
        let mut out = Poly::zero(&self.symtab);
        for (e, c) in &self.terms {
            let mut kept = e.clone();
            let mut term = Poly::constant(&self.symtab, c.clone());
            for (i, slot) in slots.iter().enumerate() {
                let Some(v) = slot else { continue };
                let k = e[i];
                kept[i] = 0;
                if k > 0 {
                    term = &term * &v.pow(k as u32);
                } else if k < 0 {
                    if inverses[i].is_none() {
                        if v.is_zero() {
                            return Err(AlgebraError::Pole);
                        }
                        let inv = v
                            .inverse_monomial()
                            .ok_or_else(|| AlgebraError::NotInvertible(self.symtab.names[i].clone()))?;
                        inverses[i] = Some(inv);
                    }
                    term = &term * &inverses[i].as_ref().expect("filled above").pow(k.unsigned_abs());
                }
            }
            let shifted = term.mul_monomial(&kept)?;
            out = &out + &shifted;
        }
        Ok(out)
    }

    /// Assign constants to every variable and return the resulting value.
    pub fn value_at(&self, assignment: &Assignment) -> Result<RatFunc, AlgebraError> {
        let p = self.substitute(assignment)?;
        p.as_constant().ok_or_else(|| {
            let free = (0..self.symtab.len()).find(|&i| p.uses_var(i)).expect("nonconstant has a variable");
            AlgebraError::UnknownVariable(format!("{} left unassigned", self.symtab.names[free]))
        })
    }
}

impl<K: Ring> Add for &Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: &Poly<K>) -> Poly<K> {
        self.try_add(rhs).expect("symtab mismatch in polynomial addition")
    }
}

impl<K: Ring> Sub for &Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: &Poly<K>) -> Poly<K> {
        self.try_sub(rhs).expect("symtab mismatch in polynomial subtraction")
    }
}

impl<K: Ring> Mul for &Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: &Poly<K>) -> Poly<K> {
        self.try_mul(rhs).expect("symtab mismatch in polynomial multiplication")
    }
}

impl<K: Ring> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly::neg(self)
    }
}

impl<K: Ring + CoeffFormat> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let texts = self.terms().map(|(e, c)| {
            let (negative, magnitude) = c.split_sign();
            let monomial = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| render_power(&self.symtab.names[i], k as i64))
                .collect::<Vec<_>>()
                .join("*");
            TermText { negative, magnitude, monomial }
        });
        f.write_str(&render_terms(texts))
    }
}

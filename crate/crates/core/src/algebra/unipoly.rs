use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::render::{render_power, render_terms, TermText};
use super::ring::{CoeffFormat, IntegralDomain, Ring};
use super::{AlgebraError, Rational};

/// Dense univariate polynomial over the rationals, ascending coefficients.
///
/// The variable name only matters for display; arithmetic between two
/// polynomials keeps whichever name is non-empty. Equality ignores names.
#[derive(Clone, Debug)]
pub struct UniPoly {
    var: Arc<str>,
    coeffs: Vec<Rational>,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for UniPoly {}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

impl UniPoly {
    pub fn new(var: &str, coeffs: Vec<Rational>) -> Self {
        let mut p = UniPoly { var: Arc::from(var), coeffs };
        p.trim();
        p
    }

    pub fn from_ints(var: &str, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero_in(var: &str) -> Self {
        Self::new(var, Vec::new())
    }

    pub fn constant(var: &str, c: Rational) -> Self {
        Self::new(var, vec![c])
    }

    /// The polynomial `var` itself.
    pub fn variable(var: &str) -> Self {
        Self::from_ints(var, &[0, 1])
    }

    pub fn monomial(var: &str, c: Rational, deg: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(var, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn with_coeffs(&self, other: &Self, coeffs: Vec<Rational>) -> Self {
        let var = if self.var.is_empty() { other.var.clone() } else { self.var.clone() };
        let mut p = UniPoly { var, coeffs };
        p.trim();
        p
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn renamed(&self, var: &str) -> Self {
        UniPoly { var: Arc::from(var), coeffs: self.coeffs.clone() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Multiplicity of the root at zero; `None` for the zero polynomial.
    pub fn ord0(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat(i as i64))
            .collect();
        Self::new(&self.var, coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(&self.var, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiply by `var^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(&self.var, coeffs)
    }

    /// Divide by `var^k`, dropping anything below degree `k`.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(&self.var, self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Coefficient reversal `x^deg p(1/x)`.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(&self.var, coeffs)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().recip();
        self.scale(&inv)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lead_inv = d.lead().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (self.with_coeffs(d, Vec::new()), self.with_coeffs(d, rem));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (self.with_coeffs(d, quot), self.with_coeffs(d, rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.is_zero() && other.is_zero() {
            return Err(AlgebraError::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    /// Positive rational `c` with `self = c * primitive` where the primitive
    /// part has coprime integer coefficients and positive leading coefficient.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::one();
        }
        let mut num = BigInt::from(0);
        let mut den = BigInt::from(1);
        for c in &self.coeffs {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let c = Rational::new(num, den);
        if self.lead().is_negative() {
            -c
        } else {
            c
        }
    }

    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.content().recip())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Exact square root, if `self` is the square of a rational polynomial.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let n = self.coeffs.len() - 1;
        if n % 2 == 1 {
            return None;
        }
        let lead_root = rational_sqrt(&self.lead())?;
        let m = n / 2;
        // Solve top-down for the coefficients of the root.
        let mut root = vec![Rational::zero(); m + 1];
        root[m] = lead_root;
        let two_lead = &root[m] * rat(2);
        // p[m + k] = 2 r[m] r[k] + sum over k < i < m of r[i] r[m + k - i]
        for k in (0..m).rev() {
            let mut acc = self.coeffs[m + k].clone();
            for i in (k + 1)..m {
                acc -= &root[i] * &root[m + k - i];
            }
            root[k] = acc / &two_lead;
        }
        let cand = Self::new(&self.var, root);
        if &cand * &cand == *self {
            Some(cand)
        } else {
            None
        }
    }
}

pub(crate) fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &n * &n == *q.numer() && &d * &d == *q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

impl Ring for UniPoly {
    fn zero() -> Self {
        UniPoly { var: Arc::from(""), coeffs: Vec::new() }
    }
    fn one() -> Self {
        UniPoly { var: Arc::from(""), coeffs: vec![Rational::one()] }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        self.with_coeffs(other, coeffs)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        self.with_coeffs(other, coeffs)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return self.with_coeffs(other, Vec::new());
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        self.with_coeffs(other, coeffs)
    }
    fn neg_ref(&self) -> Self {
        UniPoly { var: self.var.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant("", q.clone())
    }
}

impl IntegralDomain for UniPoly {
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        self.add_ref(rhs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self.sub_ref(rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        self.neg_ref()
    }
}

impl UniPoly {
    pub(crate) fn term_texts(&self) -> Vec<TermText> {
        let name = if self.var.is_empty() { "x" } else { &self.var };
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let (negative, magnitude) = c.split_sign();
                let monomial = if i == 0 { String::new() } else { render_power(name, i as i64) };
                let magnitude = if i == 0 && magnitude.is_none() { Some("1".into()) } else { magnitude };
                TermText { negative, magnitude, monomial }
            })
            .collect()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(self.term_texts()))
    }
}

/// A Laurent polynomial `var^low * body`, used for Alexander polynomials
/// before the power-of-`var` ambiguity is removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    pub low: i64,
    pub body: UniPoly,
}

impl LaurentPoly {
    pub fn from_poly(p: UniPoly) -> Self {
        LaurentPoly { low: 0, body: p }.canonical()
    }

    /// Pull every factor of `var` out of the body.
    pub fn canonical(self) -> Self {
        match self.body.ord0() {
            Some(k) if k > 0 => LaurentPoly { low: self.low + k as i64, body: self.body.shift_down(k) },
            _ => self,
        }
    }

    /// Highest exponent present; `None` for zero.
    pub fn top_degree(&self) -> Option<i64> {
        self.body.degree().map(|d| d as i64 + self.low)
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.body.var().is_empty() { "x" } else { self.body.var() };
        let texts = self
            .body
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let e = i as i64 + self.low;
                let (negative, magnitude) = c.split_sign();
                let monomial = if e == 0 { String::new() } else { render_power(name, e) };
                let magnitude = if e == 0 && magnitude.is_none() { Some("1".into()) } else { magnitude };
                TermText { negative, magnitude, monomial }
            });
        f.write_str(&render_terms(texts))
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints("mu", c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(p(&[1, -1, 1]).gcd(&p(&[-1, 1])).unwrap(), p(&[1]));
        assert_eq!(p(&[2, 0, 4]).gcd(&UniPoly::zero_in("mu")).unwrap(), p(&[2, 0, 4]).monic());
        assert_eq!(UniPoly::zero_in("mu").gcd(&UniPoly::zero_in("mu")), Err(AlgebraError::GcdOfZeros));
    }

    #[test]
    fn content_and_primitive() {
        let q = p(&[-4, 6, -2]).scale(&Rational::new(1.into(), 3.into()));
        assert_eq!(q.content(), Rational::new((-2).into(), 3.into()));
        assert_eq!(q.primitive(), p(&[2, -3, 1]));
    }

    #[test]
    fn square_roots() {
        let r = p(&[1, -2, 3]);
        assert_eq!((&r * &r).sqrt().unwrap(), r);
        assert!(p(&[1, 0, 2]).sqrt().is_none());
        assert!(p(&[0, 1]).sqrt().is_none());
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[2, -3, 4]).to_string(), "4*mu^2 - 3*mu + 2");
        assert_eq!(p(&[-1]).to_string(), "-1");
        assert_eq!(p(&[]).to_string(), "0");
        let l = LaurentPoly { low: -1, body: p(&[1, 0, -1]) };
        assert_eq!(l.to_string(), "-mu + mu^-1");
    }

    #[test]
    fn division_identity() {
        let a = p(&[3, 0, -2, 5, 1]);
        let b = p(&[1, -1, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::ring::{CoeffFormat, Field, IntegralDomain, Ring};
use super::unipoly::{LaurentPoly, UniPoly};
use super::{AlgebraError, Rational};

/// Reduced univariate rational function `num / den` with monic `den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    /// Build and reduce `num / den`.
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: UniPoly, den: UniPoly) -> Self {
        let var = if num.var().is_empty() { den.var().to_string() } else { num.var().to_string() };
        if num.is_zero() {
            return RatFunc { num: UniPoly::zero_in(&var), den: UniPoly::constant(&var, Rational::one()) };
        }
        let g = num.gcd(&den).expect("denominator is nonzero");
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        let lead_inv = den.lead().recip();
        if !lead_inv.is_one() {
            num = num.scale(&lead_inv);
            den = den.scale(&lead_inv);
        }
        RatFunc { num: num.renamed(&var), den: den.renamed(&var) }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        let var = p.var().to_string();
        RatFunc { num: p, den: UniPoly::constant(&var, Rational::one()) }
    }

    pub fn constant(var: &str, c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(var, c))
    }

    /// The identity function `var`.
    pub fn variable(var: &str) -> Self {
        Self::from_poly(UniPoly::variable(var))
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn var(&self) -> &str {
        self.num.var()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial itself when the denominator is one.
    pub fn as_poly(&self) -> Option<&UniPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    /// The value as a constant, when it is one.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.is_polynomial() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    /// Laurent polynomial when the denominator is a power of the variable.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        let k = self.den.degree()?;
        if self.den != UniPoly::monomial(self.den.var(), Rational::one(), k) {
            return None;
        }
        Some(LaurentPoly { low: -(k as i64), body: self.num.clone() }.canonical())
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, AlgebraError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(AlgebraError::Pole);
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduce(n, &self.den * &self.den)
    }

    /// Value at infinity: `Some(0)` when `deg num < deg den`, the ratio of
    /// leading coefficients when degrees agree, `None` on a pole.
    pub fn value_at_infinity(&self) -> Option<Rational> {
        let dn = self.num.degree();
        let dd = self.den.degree().unwrap_or(0);
        match dn {
            None => Some(Rational::zero()),
            Some(n) if n < dd => Some(Rational::zero()),
            Some(n) if n == dd => Some(self.num.lead() / self.den.lead()),
            _ => None,
        }
    }

    /// Value at zero, `None` on a pole.
    pub fn value_at_zero(&self) -> Option<Rational> {
        self.eval(&Rational::zero()).ok()
    }

    /// Exact square root in the field of rational functions.
    pub fn sqrt(&self) -> Option<Self> {
        Some(Self::reduce(self.num.sqrt()?, self.den.sqrt()?))
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::reduce(&self.num + &other.num, self.den.clone());
        }
        let n = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::reduce(n, &self.den * &other.den)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }
    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::reduce(UniPoly::zero_in(self.var()), UniPoly::one());
        }
        Self::reduce(&self.num * &other.num, &self.den * &other.den)
    }
    fn neg_ref(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant("", q.clone())
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::reduce(self.den.clone(), self.num.clone()))
        }
    }
}

impl IntegralDomain for RatFunc {
    fn exact_div(&self, other: &Self) -> Option<Self> {
        self.div_ref(other)
    }
}

impl From<UniPoly> for RatFunc {
    fn from(p: UniPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        self.add_ref(rhs)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self.sub_ref(rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        self.mul_ref(rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

fn needs_parens(p: &UniPoly) -> bool {
    let terms = p.coeffs().iter().filter(|c| !c.is_zero()).count();
    if terms > 1 {
        return true;
    }
    // a single term prints bare only as `var^k` or a nonnegative integer
    let c = p.lead();
    if p.is_constant() {
        !(c.is_integer() && c >= Rational::zero())
    } else {
        !c.is_one()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        if needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if needs_parens(&self.den) {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl CoeffFormat for RatFunc {
    fn split_sign(&self) -> (bool, Option<String>) {
        if let Some(c) = self.as_constant() {
            return c.split_sign();
        }
        (false, Some(format!("({self})")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints("mu", c)
    }

    #[test]
    fn trefoil_logderivative_reduces() {
        // (4mu^3 - 7mu^2 + 5mu - 2) / ((mu - 1)(mu^2 - mu + 1))
        let num = p(&[-2, 5, -7, 4]);
        let den = &p(&[-1, 1]) * &p(&[1, -1, 1]);
        let r = RatFunc::new(num, den).unwrap();
        assert_eq!(r.num(), &p(&[2, -3, 4]));
        assert_eq!(r.den(), &p(&[1, -1, 1]));
        assert_eq!(r.to_string(), "(4*mu^2 - 3*mu + 2)/(mu^2 - mu + 1)");
    }

    #[test]
    fn zero_numerator_normalizes() {
        let r = RatFunc::new(UniPoly::zero_in("mu"), p(&[3, 1, 7])).unwrap();
        assert_eq!(r.den(), &p(&[1]));
        assert!(r.is_zero());
    }

    #[test]
    fn common_factor_cancels() {
        let r = RatFunc::new(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(r, RatFunc::from_poly(p(&[1, 1])));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RatFunc::new(p(&[1]), UniPoly::zero_in("mu")), Err(AlgebraError::ZeroDenominator));
    }

    #[test]
    fn negative_denominator_sign_moves_up() {
        let r = RatFunc::new(p(&[1]), p(&[0, -2])).unwrap();
        assert_eq!(r.den(), &p(&[0, 1]));
        assert_eq!(r.num().coeff(0), Rational::new((-1).into(), 2.into()));
    }

    #[test]
    fn rendering_matches_wire_format() {
        let r = RatFunc::new(p(&[-1, 1]), p(&[0, 0, 1])).unwrap();
        assert_eq!(r.to_string(), "(mu - 1)/mu^2");
        let r = RatFunc::new(p(&[1]), p(&[0, 0, 1])).unwrap();
        assert_eq!(r.to_string(), "1/mu^2");
    }

    #[test]
    fn square_root_of_discriminant() {
        // ((mu - 2)/mu)^2
        let d = RatFunc::new(p(&[4, -4, 1]), p(&[0, 0, 1])).unwrap();
        let s = d.sqrt().unwrap();
        assert_eq!(&s * &s, d);
        assert!(RatFunc::variable("mu").sqrt().is_none());
    }
}

use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use super::Rational;

/// A commutative ring containing the rationals.
///
/// Arithmetic goes through `*_ref` methods so generic code never has to
/// spell out higher-ranked operator bounds.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn pow_u(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

/// Rings with exact division, which is all fraction-free elimination needs.
pub trait IntegralDomain: Ring {
    /// `self / other` when the quotient exists in the ring.
    fn exact_div(&self, other: &Self) -> Option<Self>;
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div_ref(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul_ref(&i))
    }

    fn pow_i(&self, e: i32) -> Option<Self> {
        if e >= 0 {
            Some(self.pow_u(e as u32))
        } else {
            self.inv().map(|i| i.pow_u(e.unsigned_abs()))
        }
    }
}

/// How a coefficient prints inside a polynomial.
pub trait CoeffFormat {
    /// `(negative, magnitude)` where the magnitude is `None` for a unit.
    fn split_sign(&self) -> (bool, Option<String>);
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

impl IntegralDomain for Rational {
    fn exact_div(&self, other: &Self) -> Option<Self> {
        self.div_ref(other)
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl CoeffFormat for Rational {
    fn split_sign(&self) -> (bool, Option<String>) {
        let neg = self.is_negative();
        let mag = self.abs();
        if One::is_one(&mag) {
            (neg, None)
        } else {
            (neg, Some(mag.to_string()))
        }
    }
}

use num_traits::{One, Zero};

use super::{AlgebraError, Rational, UniPoly};

/// Power series truncated at a fixed order: coefficients `c_0 .. c_{N-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    var: String,
    coeffs: Vec<Rational>,
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

impl TruncSeries {
    pub fn new(var: &str, order: usize, mut coeffs: Vec<Rational>) -> Self {
        assert!(order > 0, "truncation order must be positive");
        coeffs.resize(order, Rational::zero());
        TruncSeries { var: var.to_string(), coeffs }
    }

    pub fn zero(var: &str, order: usize) -> Self {
        Self::new(var, order, Vec::new())
    }

    pub fn one(var: &str, order: usize) -> Self {
        Self::new(var, order, vec![Rational::one()])
    }

    /// Truncation of a polynomial.
    pub fn from_poly(p: &UniPoly, order: usize) -> Self {
        Self::new(p.var(), order, p.coeffs().iter().take(order).cloned().collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let c = (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        Self::new(&self.var, n, c)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(&self.var, self.order(), self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(&self.var, n, out)
    }

    /// `exp(f)` for `f(0) = 0`, via `n g_n = sum_{k=1..n} k f_k g_{n-k}`.
    pub fn exp(&self) -> Result<Self, AlgebraError> {
        if !self.coeffs[0].is_zero() {
            return Err(AlgebraError::SeriesConstantTerm { expected: 0 });
        }
        let n = self.order();
        let mut g = vec![Rational::zero(); n];
        g[0] = Rational::one();
        for m in 1..n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &g[m - k] * rat(k as i64);
                }
            }
            g[m] = acc / rat(m as i64);
        }
        Ok(Self::new(&self.var, n, g))
    }

    /// `log(g)` for `g(0) = 1`, via `n f_n = n g_n - sum_{k=1..n-1} k f_k g_{n-k}`.
    pub fn log(&self) -> Result<Self, AlgebraError> {
        if !self.coeffs[0].is_one() {
            return Err(AlgebraError::SeriesConstantTerm { expected: 1 });
        }
        let n = self.order();
        let mut f = vec![Rational::zero(); n];
        for m in 1..n {
            let mut acc = &self.coeffs[m] * rat(m as i64);
            for (k, fk) in f.iter().enumerate().take(m).skip(1) {
                if !fk.is_zero() {
                    acc -= fk * &self.coeffs[m - k] * rat(k as i64);
                }
            }
            f[m] = acc / rat(m as i64);
        }
        Ok(Self::new(&self.var, n, f))
    }
}

//! Novikov differential `D(mu)` of a circle-valued Morse function, its
//! determinant, and the zeta-function and factorization identities around it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{rat, AlgebraError, Field, LaurentPoly, Matrix, RatFunc, Rational, Ring, TruncSeries, UniPoly};
use crate::extract::{AlexReport, ExtractError, Route};
use crate::par::Execution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NovikovError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("D(mu) is singular")]
    Singular,
    #[error("orbit ({sigma}, {m}, {d}): sigma must be ±1 and m, d positive")]
    BadOrbit { sigma: i64, m: i64, d: i64 },
    #[error(transparent)]
    Extract(#[from] ExtractError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Integer blocks of the Novikov differential: `r` Bott generators and `s`
/// ordinary ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NovikovData {
    /// `r x r`.
    #[serde(rename = "psiF")]
    pub psi_f: Vec<Vec<i64>>,
    /// `r x s`.
    #[serde(rename = "psiC")]
    pub psi_c: Vec<Vec<i64>>,
    /// `s x r`.
    pub eta: Vec<Vec<i64>>,
    /// `s x s`.
    pub d0: Vec<Vec<i64>>,
}

/// Integer matrix to rational matrix, accepting `[]` for any shape with a zero dimension.
fn block(name: &str, m: &[Vec<i64>], rows: usize, cols: usize) -> Result<Matrix<Rational>, NovikovError> {
    if m.is_empty() && rows * cols == 0 {
        return Ok(Matrix::zeros(rows, cols));
    }
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(NovikovError::Dimension(format!("{name} must be {rows}x{cols}")));
    }
    Ok(Matrix::from_fn(rows, cols, |i, j| rat(m[i][j])))
}

fn mu_poly(a: &Rational, b: &Rational) -> UniPoly {
    UniPoly::new("mu", vec![a.clone(), b.clone()])
}

impl NovikovData {
    pub fn from_json(text: &str) -> Result<Self, NovikovError> {
        let data: NovikovData = serde_json::from_str(text).map_err(|e| NovikovError::Malformed(e.to_string()))?;
        data.blocks()?;
        Ok(data)
    }

    pub fn r(&self) -> usize {
        self.psi_f.len()
    }

    pub fn s(&self) -> usize {
        self.d0.len()
    }

    /// `(psiF, psiC, eta, d0)` as rational matrices, shape-checked.
    pub fn blocks(&self) -> Result<[Matrix<Rational>; 4], NovikovError> {
        let (r, s) = (self.r(), self.s());
        Ok([
            block("psiF", &self.psi_f, r, r)?,
            block("psiC", &self.psi_c, r, s)?,
            block("eta", &self.eta, s, r)?,
            block("d0", &self.d0, s, s)?,
        ])
    }
}

/// `1 - mu * psi` entrywise.
fn one_minus_mu(psi: &Matrix<Rational>) -> Matrix<UniPoly> {
    Matrix::from_fn(psi.rows(), psi.cols(), |i, j| {
        let c = if i == j { Rational::one() } else { Rational::zero() };
        mu_poly(&c, &-psi.get(i, j))
    })
}

/// `D(mu) = [[1 - mu psiF, -mu psiC], [eta, d0]]`.
pub fn assemble_d(nov: &NovikovData) -> Result<Matrix<UniPoly>, NovikovError> {
    let [psi_f, psi_c, eta, d0] = nov.blocks()?;
    let zero = Rational::zero();
    let a = one_minus_mu(&psi_f);
    let b = psi_c.map(|c| mu_poly(&zero, &-c));
    let c = eta.map(|x| mu_poly(x, &zero));
    let d = d0.map(|x| mu_poly(x, &zero));
    Ok(Matrix::block(&a, &b, &c, &d)?)
}

/// `det D` normalized, together with the raw value `det D(0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NovikovAlex {
    pub report: AlexReport,
    pub det: UniPoly,
    pub det_at_zero: Rational,
}

pub fn novikov_alexander(nov: &NovikovData) -> Result<NovikovAlex, NovikovError> {
    let det = assemble_d(nov)?.det_bareiss()?.renamed("mu");
    if det.is_zero() {
        return Err(NovikovError::Singular);
    }
    let det_at_zero = det.coeff(0);
    let report = AlexReport::from_raw(Route::Novikov, LaurentPoly { low: 0, body: det.clone() })?;
    Ok(NovikovAlex { report, det, det_at_zero })
}

/// `exp(-sum_{n<N} tr(psi^n) mu^n / n)`, which equals `det(1 - mu psi)` to order `N`.
pub fn zeta_from_traces(psi_f: &[Vec<i64>], order: usize) -> Result<TruncSeries, NovikovError> {
    let psi = block("psiF", psi_f, psi_f.len(), psi_f.len())?;
    let mut power = Matrix::identity(psi.rows());
    let mut log = vec![Rational::zero(); order];
    for (n, slot) in log.iter_mut().enumerate().skip(1) {
        power = power.try_mul(&psi)?;
        *slot = -power.trace()? / rat(n as i64);
    }
    Ok(TruncSeries::new("mu", order, log).exp()?)
}

/// One closed orbit: sign, multiplicity and degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub sigma: i64,
    pub m: i64,
    pub d: i64,
}

/// Parse `[[sigma, m, d], ...]`.
pub fn parse_orbits(text: &str) -> Result<Vec<Orbit>, NovikovError> {
    let raw: Vec<(i64, i64, i64)> = serde_json::from_str(text).map_err(|e| NovikovError::Malformed(e.to_string()))?;
    raw.into_iter()
        .map(|(sigma, m, d)| {
            if sigma.abs() != 1 || m < 1 || d < 1 {
                Err(NovikovError::BadOrbit { sigma, m, d })
            } else {
                Ok(Orbit { sigma, m, d })
            }
        })
        .collect()
}

/// `exp(sum sigma/m * mu^d)` truncated at `order`.
pub fn zeta_from_orbits(orbits: &[Orbit], order: usize) -> Result<TruncSeries, NovikovError> {
    let mut log = vec![Rational::zero(); order];
    for o in orbits {
        if o.sigma.abs() != 1 || o.m < 1 || o.d < 1 {
            return Err(NovikovError::BadOrbit { sigma: o.sigma, m: o.m, d: o.d });
        }
        if let Some(slot) = log.get_mut(o.d as usize) {
            *slot += Rational::new(o.sigma.into(), o.m.into());
        }
    }
    Ok(TruncSeries::new("mu", order, log).exp()?)
}

/// `det(1 - mu psiF)` as a polynomial.
pub fn det_one_minus_mu(psi_f: &[Vec<i64>]) -> Result<UniPoly, NovikovError> {
    let psi = block("psiF", psi_f, psi_f.len(), psi_f.len())?;
    Ok(one_minus_mu(&psi).det_bareiss()?.renamed("mu"))
}

/// Exact test of `det D = det(1 - mu psiF) * det(d0 + mu eta (1 - mu psiF)^{-1} psiC)`,
/// the inverse taken as adjugate over determinant.
pub fn factorization_check(nov: &NovikovData) -> Result<bool, NovikovError> {
    let [psi_f, psi_c, eta, d0] = nov.blocks()?;
    let a = one_minus_mu(&psi_f);
    let det_a = a.det_bareiss()?;
    let det_a_inv = RatFunc::from_poly(det_a.clone()).inv().ok_or(NovikovError::Singular)?;
    let inverse = a.adjugate()?.map(|p| RatFunc::from_poly(p.clone()).mul_ref(&det_a_inv));
    let lift = |m: &Matrix<Rational>| m.map(RatFunc::from_rational);
    let mu = RatFunc::variable("mu");
    let inner = lift(&eta).scale(&mu).try_mul(&inverse)?.try_mul(&lift(&psi_c))?;
    let tau = lift(&d0).try_add(&inner)?.det_gauss()?;
    let det_d = RatFunc::from_poly(assemble_d(nov)?.det_bareiss()?);
    Ok(det_d == RatFunc::from_poly(det_a).mul_ref(&tau))
}

/// Verdicts for one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NovikovVerdicts {
    pub factorization: bool,
    /// Trace series equals the truncated `det(1 - mu psiF)`.
    pub det_tr: bool,
    /// `det D(0) = det d0`.
    pub det_at_zero: bool,
}

impl NovikovVerdicts {
    pub fn passed(&self) -> bool {
        self.factorization && self.det_tr && self.det_at_zero
    }
}

pub fn check_instance(nov: &NovikovData, order: usize) -> Result<NovikovVerdicts, NovikovError> {
    let [_, _, _, d0] = nov.blocks()?;
    let det_tr = zeta_from_traces(&nov.psi_f, order)? == TruncSeries::from_poly(&det_one_minus_mu(&nov.psi_f)?, order);
    let det_d = assemble_d(nov)?.det_bareiss()?;
    Ok(NovikovVerdicts {
        factorization: factorization_check(nov)?,
        det_tr,
        det_at_zero: det_d.coeff(0) == d0.det_gauss()?,
    })
}

/// [`check_instance`] over a batch.
pub fn check_suite(instances: &[NovikovData], order: usize, exec: Execution) -> Vec<Result<NovikovVerdicts, NovikovError>> {
    exec.map(instances, |n| check_instance(n, order))
}

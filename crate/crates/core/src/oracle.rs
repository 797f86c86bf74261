//! Classical Alexander polynomials of braid closures via the reduced Burau
//! representation.
//!
//! Convention: for `1 < i < n-1`, `sigma_i` acts on coordinates
//! `i-1, i, i+1` (1-based) by `[[1, 0, 0], [mu, -mu, 1], [0, 0, 1]]`, with
//! the first and last generators truncated accordingly. On two strands,
//! `sigma_1 = (-mu)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Field, LaurentPoly, Matrix, RatFunc, Ring, UniPoly};
use crate::extract::{AlexReport, ExtractError, Route};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("malformed braid document: {0}")]
    Malformed(String),
    #[error("braid needs at least one strand")]
    NoStrands,
    #[error("letter {letter} out of range for {strands} strands")]
    LetterOutOfRange { letter: i64, strands: usize },
    #[error("closure has {0} components, not a knot")]
    NotAKnot(usize),
    #[error("Burau quotient is not a Laurent polynomial: {0}")]
    NonPolynomial(String),
    #[error(transparent)]
    Extract(#[from] ExtractError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A braid on `strands` strands; letter `i` is `sigma_i`, `-i` its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraidWord {
    pub strands: usize,
    pub word: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<i64>) -> Result<Self, OracleError> {
        let b = BraidWord { strands, word };
        b.validate()?;
        Ok(b)
    }

    pub fn from_json(text: &str) -> Result<Self, OracleError> {
        let b: BraidWord = serde_json::from_str(text).map_err(|e| OracleError::Malformed(e.to_string()))?;
        b.validate()?;
        Ok(b)
    }

    fn validate(&self) -> Result<(), OracleError> {
        if self.strands == 0 {
            return Err(OracleError::NoStrands);
        }
        match self.word.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize >= self.strands) {
            Some(&letter) => Err(OracleError::LetterOutOfRange { letter, strands: self.strands }),
            None => Ok(()),
        }
    }

    /// Number of cycles of the underlying permutation.
    pub fn components(&self) -> usize {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for l in &self.word {
            let i = l.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
            }
        }
        cycles
    }

    /// Append `sigma_n` on a new strand (Markov stabilization).
    pub fn stabilized(&self) -> Self {
        let mut word = self.word.clone();
        word.push(self.strands as i64);
        BraidWord { strands: self.strands + 1, word }
    }
}

const RH_TREFOIL_BRAID: &str = include_str!("../data/rh_trefoil_braid.json");

/// Built-in braids: `rh_trefoil` and the one-strand `unknot`.
pub fn builtin_braid(name: &str) -> Result<BraidWord, OracleError> {
    match name {
        "rh_trefoil" => BraidWord::from_json(RH_TREFOIL_BRAID),
        "unknot" => BraidWord::new(1, Vec::new()),
        _ => Err(OracleError::Malformed(format!("no built-in braid `{name}`"))),
    }
}

fn generator(n: usize, i: usize) -> Matrix<RatFunc> {
    let mu = RatFunc::variable("mu");
    let mut m = Matrix::identity(n - 1);
    let k = i - 1;
    m.set(k, k, mu.neg_ref());
    if k > 0 {
        m.set(k, k - 1, mu.clone());
    }
    if k + 1 < n - 1 {
        m.set(k, k + 1, RatFunc::one());
    }
    m
}

/// Product of reduced Burau matrices of the letters, left to right.
pub fn reduced_burau(b: &BraidWord) -> Result<Matrix<RatFunc>, OracleError> {
    b.validate()?;
    if b.strands < 2 {
        return Err(OracleError::NoStrands);
    }
    let n = b.strands;
    let mut acc = Matrix::identity(n - 1);
    for &l in &b.word {
        let g = generator(n, l.unsigned_abs() as usize);
        let g = if l > 0 { g } else { g.inverse()? };
        acc = acc.try_mul(&g)?;
    }
    Ok(acc)
}

/// `det(I - rho(b)) (1 - mu) / (1 - mu^n)`, normalized.
pub fn alexander_from_braid(b: &BraidWord) -> Result<AlexReport, OracleError> {
    b.validate()?;
    let c = b.components();
    if c != 1 {
        return Err(OracleError::NotAKnot(c));
    }
    if b.strands == 1 {
        return Ok(AlexReport::from_raw(Route::Burau, LaurentPoly::from_poly(UniPoly::from_ints("mu", &[1])))?);
    }
    let rho = reduced_burau(b)?;
    let det = Matrix::identity(rho.rows()).try_sub(&rho)?.det_gauss()?;
    let mu = RatFunc::variable("mu");
    let one = RatFunc::one();
    let factor = one.sub_ref(&mu).div_ref(&one.sub_ref(&mu.pow_u(b.strands as u32))).expect("1 - mu^n is nonzero");
    let quotient = det.mul_ref(&factor);
    let raw = quotient.as_laurent().ok_or_else(|| OracleError::NonPolynomial(quotient.to_string()))?;
    Ok(AlexReport::from_raw(Route::Burau, raw)?)
}

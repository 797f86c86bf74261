//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' signed-int)?
//! atom   := unsigned-int | identifier | '(' expr ')' | '-' factor
//! ```
//!
//! Unary minus applies to a whole factor, so `-mu^2` means `-(mu^2)`.
//! Division is accepted when the divisor is invertible in the target.

use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{AlgebraError, Field, MultiPoly, Poly, RatFunc, Rational, Ring, Symtab, UniPoly};

/// Largest accepted exponent magnitude; guards against runaway expansion.
pub const MAX_EXPONENT: i64 = 4096;

/// Maximum parenthesis / unary-minus nesting.
pub const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("negative exponent on chord variable `{0}`")]
    NegativeChordExponent(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor is not invertible")]
    NotInvertible,
    #[error("exponent magnitude exceeds {MAX_EXPONENT}")]
    ExponentTooLarge,
    #[error("nesting deeper than {MAX_DEPTH}")]
    TooDeep,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {pos}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
            continue;
        }
        let single = match ch {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            chars.next();
            out.push((pos, t));
        } else if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                s.push(c);
                chars.next();
            }
            out.push((pos, Tok::Int(s.parse().expect("digits parse"))));
        } else if ch.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if !(c.is_ascii_alphanumeric() || c == '_') {
                    break;
                }
                s.push(c);
                chars.next();
            }
            out.push((pos, Tok::Ident(s)));
        } else {
            return Err(ParseError { pos, kind: ParseErrorKind::UnexpectedChar(ch) });
        }
    }
    Ok(out)
}

/// What a parsed expression evaluates into.
pub trait ExprTarget: Sized {
    fn integer(&self, n: BigInt) -> Self;
    fn ident(&self, name: &str) -> Result<Self, ParseErrorKind>;
    fn add(&self, a: Self, b: Self) -> Self;
    fn sub(&self, a: Self, b: Self) -> Self;
    fn mul(&self, a: Self, b: Self) -> Self;
    fn neg(&self, a: Self) -> Self;
    fn div(&self, a: Self, b: Self) -> Result<Self, ParseErrorKind>;
    fn pow(&self, a: Self, e: i64) -> Result<Self, ParseErrorKind>;
}

impl ExprTarget for MultiPoly {
    fn integer(&self, n: BigInt) -> Self {
        MultiPoly::constant(self.symtab(), Rational::from_integer(n))
    }
    fn ident(&self, name: &str) -> Result<Self, ParseErrorKind> {
        MultiPoly::var(self.symtab(), name).map_err(|_| ParseErrorKind::UnknownIdentifier(name.to_string()))
    }
    fn add(&self, a: Self, b: Self) -> Self {
        &a + &b
    }
    fn sub(&self, a: Self, b: Self) -> Self {
        &a - &b
    }
    fn mul(&self, a: Self, b: Self) -> Self {
        &a * &b
    }
    fn neg(&self, a: Self) -> Self {
        Poly::neg(&a)
    }
    fn div(&self, a: Self, b: Self) -> Result<Self, ParseErrorKind> {
        let inv = invert_monomial(&b)?;
        Ok(&a * &inv)
    }
    fn pow(&self, a: Self, e: i64) -> Result<Self, ParseErrorKind> {
        let spread = a.terms().map(|(x, _)| x.iter().map(|k| k.unsigned_abs() as i64).sum::<i64>()).max().unwrap_or(0);
        check_growth(spread, e)?;
        check_bits(a.terms().map(|(_, c)| c.numer().bits().max(c.denom().bits())).max().unwrap_or(0), e)?;
        if e >= 0 {
            return Ok(a.pow(e as u32));
        }
        let inv = invert_monomial(&a)?;
        Ok(inv.pow(e.unsigned_abs() as u32))
    }
}

/// Reject powers whose result would exceed the exponent bound.
fn check_growth(spread: i64, e: i64) -> Result<(), ParseErrorKind> {
    if spread.saturating_mul(e.abs()) > MAX_EXPONENT {
        Err(ParseErrorKind::ExponentTooLarge)
    } else {
        Ok(())
    }
}

/// Coefficient size bound, in bits, for the result of a power.
const MAX_POWER_BITS: u64 = 1 << 17;

fn check_bits(bits: u64, e: i64) -> Result<(), ParseErrorKind> {
    if bits.saturating_mul(e.unsigned_abs()) > MAX_POWER_BITS {
        Err(ParseErrorKind::ExponentTooLarge)
    } else {
        Ok(())
    }
}

fn invert_monomial(b: &MultiPoly) -> Result<MultiPoly, ParseErrorKind> {
    if b.is_zero() {
        return Err(ParseErrorKind::DivisionByZero);
    }
    if b.len() != 1 {
        return Err(ParseErrorKind::NotInvertible);
    }
    let (e, c) = b.terms().next().expect("one term");
    let neg: Vec<i32> = e.iter().map(|x| -x).collect();
    MultiPoly::monomial(b.symtab(), neg, c.inv().expect("nonzero coefficient")).map_err(|err| match err {
        AlgebraError::NegativeChordExponent(n) => ParseErrorKind::NegativeChordExponent(n),
        _ => ParseErrorKind::NotInvertible,
    })
}

impl ExprTarget for RatFunc {
    fn integer(&self, n: BigInt) -> Self {
        RatFunc::constant(self.var(), Rational::from_integer(n))
    }
    fn ident(&self, name: &str) -> Result<Self, ParseErrorKind> {
        if name == self.var() {
            Ok(RatFunc::variable(name))
        } else {
            Err(ParseErrorKind::UnknownIdentifier(name.to_string()))
        }
    }
    fn add(&self, a: Self, b: Self) -> Self {
        a.add_ref(&b)
    }
    fn sub(&self, a: Self, b: Self) -> Self {
        a.sub_ref(&b)
    }
    fn mul(&self, a: Self, b: Self) -> Self {
        a.mul_ref(&b)
    }
    fn neg(&self, a: Self) -> Self {
        a.neg_ref()
    }
    fn div(&self, a: Self, b: Self) -> Result<Self, ParseErrorKind> {
        a.div_ref(&b).ok_or(ParseErrorKind::DivisionByZero)
    }
    fn pow(&self, a: Self, e: i64) -> Result<Self, ParseErrorKind> {
        let spread = a.num().degree().max(a.den().degree()).unwrap_or(0) as i64;
        check_growth(spread, e)?;
        let bits = a.num().coeffs().iter().chain(a.den().coeffs()).map(|c| c.numer().bits().max(c.denom().bits())).max();
        check_bits(bits.unwrap_or(0), e)?;
        a.pow_i(e as i32).ok_or(ParseErrorKind::DivisionByZero)
    }
}

struct Parser<'t, T> {
    toks: &'t [(usize, Tok)],
    at: usize,
    end: usize,
    depth: usize,
    proto: &'t T,
}

impl<T: ExprTarget> Parser<'_, T> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<R>(&self, kind: ParseErrorKind) -> Result<R, ParseError> {
        Err(ParseError { pos: self.pos(), kind })
    }

    fn expr(&mut self) -> Result<T, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    let t = self.term()?;
                    acc = self.proto.add(acc, t);
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    let t = self.term()?;
                    acc = self.proto.sub(acc, t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<T, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    let f = self.factor()?;
                    acc = self.proto.mul(acc, f);
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    let pos = self.pos();
                    let f = self.factor()?;
                    acc = self.proto.div(acc, f).map_err(|kind| ParseError { pos, kind })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<T, ParseError> {
        let start = self.pos();
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        let Some(Tok::Int(n)) = self.peek().cloned() else {
            return self.err(ParseErrorKind::Expected("integer exponent"));
        };
        let e: i64 = match i64::try_from(&n) {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return self.err(ParseErrorKind::ExponentTooLarge),
        };
        self.at += 1;
        let e = if negative { -e } else { e };
        self.proto.pow(base, e).map_err(|kind| ParseError { pos: start, kind })
    }

    fn atom(&mut self) -> Result<T, ParseError> {
        if self.depth >= MAX_DEPTH {
            return self.err(ParseErrorKind::TooDeep);
        }
        self.depth += 1;
        let r = self.atom_inner();
        self.depth -= 1;
        r
    }

    fn atom_inner(&mut self) -> Result<T, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            None => self.err(ParseErrorKind::UnexpectedEnd),
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(self.proto.integer(n))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                self.proto.ident(&name).map_err(|kind| ParseError { pos, kind })
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err(ParseErrorKind::Expected("`)`"));
                }
                self.at += 1;
                Ok(e)
            }
            Some(Tok::Minus) => {
                self.at += 1;
                let f = self.factor()?;
                Ok(self.proto.neg(f))
            }
            Some(_) => self.err(ParseErrorKind::Expected("a number, identifier or `(`")),
        }
    }
}

fn parse_into<T: ExprTarget>(text: &str, proto: &T) -> Result<T, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks: &toks, at: 0, end: text.len(), depth: 0, proto };
    let v = p.expr()?;
    if p.at != toks.len() {
        return p.err(ParseErrorKind::Expected("operator or end of input"));
    }
    Ok(v)
}

/// Parse a polynomial over the given symtab.
pub fn parse_expr(text: &str, symtab: &Arc<Symtab>) -> Result<MultiPoly, ParseError> {
    parse_into(text, &MultiPoly::zero(symtab))
}

/// Parse a rational function in the single variable `var`.
pub fn parse_ratfunc(text: &str, var: &str) -> Result<RatFunc, ParseError> {
    parse_into(text, &RatFunc::from_poly(UniPoly::zero_in(var)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use proptest::prelude::*;

    fn trefoil_tab() -> Arc<Symtab> {
        Symtab::knot(&["a12", "a21"])
    }

    #[test]
    fn parses_trefoil_c11() {
        let s = trefoil_tab();
        let p = parse_expr("lambda*mu^-2 - lambda*mu^-3 - (2*Q - mu)*a12 - Q*a12^2*a21", &s).unwrap();
        assert_eq!(p.to_string(), "lambda*mu^-2 - lambda*mu^-3 + mu*a12 - Q*a12^2*a21 - 2*Q*a12");
        let l = MultiPoly::var(&s, "lambda").unwrap();
        let m = MultiPoly::var(&s, "mu").unwrap();
        let q = MultiPoly::var(&s, "Q").unwrap();
        let a = MultiPoly::var(&s, "a12").unwrap();
        let b = MultiPoly::var(&s, "a21").unwrap();
        let two = MultiPoly::constant(&s, rat(2));
        let minv = MultiPoly::monomial(&s, vec![0, -1, 0, 0, 0], rat(1)).unwrap();
        let expected = &(&(&(&l * &minv.pow(2)) - &(&l * &minv.pow(3))) - &(&(&(&two * &q) - &m) * &a)) - &(&(&q * &a.pow(2)) * &b);
        assert_eq!(p, expected);
    }

    #[test]
    fn zero_literal() {
        assert!(parse_expr("0", &trefoil_tab()).unwrap().is_zero());
    }

    #[test]
    fn negative_chord_exponent() {
        let e = parse_expr("a12^-1", &trefoil_tab()).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NegativeChordExponent("a12".into()));
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let s = trefoil_tab();
        assert_eq!(parse_expr("-mu^2", &s).unwrap().to_string(), "-mu^2");
        assert_eq!(parse_expr("(-mu)^2", &s).unwrap().to_string(), "mu^2");
        assert_eq!(parse_expr("--mu", &s).unwrap().to_string(), "mu");
    }

    #[test]
    fn error_positions() {
        let s = trefoil_tab();
        assert_eq!(parse_expr("mu + x", &s).unwrap_err(), ParseError { pos: 5, kind: ParseErrorKind::UnknownIdentifier("x".into()) });
        assert_eq!(parse_expr("mu +", &s).unwrap_err().kind, ParseErrorKind::UnexpectedEnd);
        assert_eq!(parse_expr("(mu", &s).unwrap_err().pos, 3);
        assert_eq!(parse_expr("mu $", &s).unwrap_err(), ParseError { pos: 3, kind: ParseErrorKind::UnexpectedChar('$') });
        assert_eq!(parse_expr("mu mu", &s).unwrap_err().pos, 3);
        assert_eq!(parse_expr("mu/(mu+1)", &s).unwrap_err().kind, ParseErrorKind::NotInvertible);
        assert_eq!(parse_expr("mu/0", &s).unwrap_err().kind, ParseErrorKind::DivisionByZero);
    }

    #[test]
    fn ratfunc_values() {
        let r = parse_ratfunc("(mu-1)/mu^2", "mu").unwrap();
        assert_eq!(r.to_string(), "(mu - 1)/mu^2");
        assert_eq!(parse_ratfunc("mu^-2*(mu-1)", "mu").unwrap(), r);
        assert!(parse_ratfunc("1/(mu-mu)", "mu").is_err());
        assert!(parse_ratfunc("lambda", "mu").is_err());
    }

    fn random_poly() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((proptest::collection::vec(-3i32..=3, 5), -9i64..=9, 1i64..=4), 0..6).prop_map(|ts| {
            let s = trefoil_tab();
            let terms = ts.into_iter().map(|(mut e, n, d)| {
                e[3] = e[3].abs();
                e[4] = e[4].abs();
                (e, Rational::new(n.into(), d.into()))
            });
            MultiPoly::from_terms(&s, terms).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn parse_inverts_render(p in random_poly()) {
            let text = p.to_string();
            prop_assert_eq!(parse_expr(&text, p.symtab()).unwrap(), p);
        }

        #[test]
        fn fuzz_never_panics(text in "[-+*/^() 0-9a-zQ_$.]{0,24}") {
            let _ = parse_expr(&text, &trefoil_tab());
            let _ = parse_ratfunc(&text, "mu");
        }
    }

    #[test]
    fn deep_nesting_is_an_error() {
        let text = format!("{}mu{}", "(".repeat(5000), ")".repeat(5000));
        assert_eq!(parse_expr(&text, &trefoil_tab()).unwrap_err().kind, ParseErrorKind::TooDeep);
    }

    #[test]
    fn malformed_corpus_rejected() {
        let s = trefoil_tab();
        for bad in ["", "+", "mu^", "mu^^2", "()", "mu)", "(", "2**mu", "mu^x", "mu^99999999999999999999", "a12^5000", "lambda a12", "3.5", "mu^-", "*mu", "(9^4096)^4096"] {
            assert!(parse_expr(bad, &s).is_err(), "accepted {bad:?}");
        }
    }
}

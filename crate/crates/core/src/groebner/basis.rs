//! Sorted-term polynomials and Buchberger's algorithm.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use super::{Budget, GroebnerError, MonomialOrder};
use crate::algebra::{Field, Poly, Symtab};

pub(crate) type Mono = Vec<u32>;

/// Polynomial with terms sorted ascending under a fixed order; the leading
/// term is last.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct GPoly<K> {
    pub terms: Vec<(Mono, K)>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

impl<K: Field> GPoly<K> {
    pub fn from_poly(p: &Poly<K>, order: &MonomialOrder) -> Result<Self, GroebnerError> {
        let mut terms = Vec::with_capacity(p.len());
        for (e, c) in p.terms() {
            let mut m = Vec::with_capacity(e.len());
            for (i, &x) in e.iter().enumerate() {
                if x < 0 {
                    return Err(GroebnerError::Laurent(p.symtab().name(i).to_string()));
                }
                m.push(x as u32);
            }
            terms.push((m, c.clone()));
        }
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Ok(GPoly { terms })
    }

    pub fn to_poly(&self, symtab: &Arc<Symtab>) -> Poly<K> {
        Poly::from_terms(symtab, self.terms.iter().map(|(m, c)| (m.iter().map(|&x| x as i32).collect(), c.clone())))
            .expect("nonnegative exponents fit any symtab")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Mono {
        &self.terms.last().expect("nonzero").0
    }

    pub fn lc(&self) -> &K {
        &self.terms.last().expect("nonzero").1
    }

    pub fn monic(mut self) -> Self {
        if let Some((_, c)) = self.terms.last() {
            let inv = c.inv().expect("nonzero leading coefficient");
            for t in &mut self.terms {
                t.1 = t.1.mul_ref(&inv);
            }
        }
        self
    }

    /// `self - coef * x^shift * g`, merged in order.
    fn sub_scaled(&self, coef: &K, shift: &[u32], g: &GPoly<K>, order: &MonomialOrder) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(m, c)| (m.iter().zip(shift).map(|(x, y)| x + y).collect::<Mono>(), c)).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Less => out.push(a.next().expect("peeked").clone()),
                Ordering::Greater => {
                    let (m, c) = b.next().expect("peeked");
                    out.push((m, coef.mul_ref(c).neg_ref()));
                }
                Ordering::Equal => {
                    let (m, x) = a.next().expect("peeked");
                    let (_, y) = b.next().expect("peeked");
                    let v = x.sub_ref(&coef.mul_ref(y));
                    if !v.is_zero() {
                        out.push((m.clone(), v));
                    }
                }
            }
        }
        GPoly { terms: out }
    }

    /// Full reduction against `basis`. Leading terms are tried in basis order.
    pub fn reduce(&self, basis: &[&GPoly<K>], order: &MonomialOrder, budget: &Budget) -> Result<Self, GroebnerError> {
        let mut p = self.clone();
        let mut rem: Vec<(Mono, K)> = Vec::new();
        while let Some((m, c)) = p.terms.last() {
            budget.check()?;
            match basis.iter().find(|g| divides(g.lm(), m)) {
                Some(g) => {
                    let shift: Mono = m.iter().zip(g.lm()).map(|(x, y)| x - y).collect();
                    let coef = c.div_ref(g.lc()).expect("nonzero leading coefficient");
                    p = p.sub_scaled(&coef, &shift, g, order);
                }
                None => rem.push(p.terms.pop().expect("nonempty")),
            }
        }
        rem.reverse();
        Ok(GPoly { terms: rem })
    }

    /// Division with quotient tracking by a single divisor.
    pub fn divide(&self, d: &GPoly<K>, order: &MonomialOrder, budget: &Budget) -> Result<(Self, Self), GroebnerError> {
        let mut p = self.clone();
        let mut quot: Vec<(Mono, K)> = Vec::new();
        let mut rem: Vec<(Mono, K)> = Vec::new();
        while let Some((m, c)) = p.terms.last() {
            budget.check()?;
            if divides(d.lm(), m) {
                let shift: Mono = m.iter().zip(d.lm()).map(|(x, y)| x - y).collect();
                let coef = c.div_ref(d.lc()).expect("nonzero leading coefficient");
                p = p.sub_scaled(&coef, &shift, d, order);
                quot.push((shift, coef));
            } else {
                rem.push(p.terms.pop().expect("nonempty"));
            }
        }
        quot.sort_by(|a, b| order.cmp(&a.0, &b.0));
        rem.reverse();
        Ok((GPoly { terms: quot }, GPoly { terms: rem }))
    }

    pub fn s_poly(&self, other: &GPoly<K>, order: &MonomialOrder) -> Self {
        let l = lcm(self.lm(), other.lm());
        let sa: Mono = l.iter().zip(self.lm()).map(|(x, y)| x - y).collect();
        let sb: Mono = l.iter().zip(other.lm()).map(|(x, y)| x - y).collect();
        // (l/lm_a)/lc_a * a - (l/lm_b)/lc_b * b
        let a = GPoly { terms: Vec::new() }.sub_scaled(&self.lc().inv().expect("nonzero").neg_ref(), &sa, self, order);
        a.sub_scaled(&other.lc().inv().expect("nonzero"), &sb, other, order)
    }
}

/// Reduced Groebner basis, monic, sorted by decreasing leading monomial.
pub(crate) fn buchberger<K: Field>(
    input: Vec<GPoly<K>>,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<Vec<GPoly<K>>, GroebnerError> {
    let mut g: Vec<GPoly<K>> = input.into_iter().filter(|p| !p.is_zero()).map(GPoly::monic).collect();
    if g.is_empty() {
        return Ok(g);
    }
    let unit = |g: &[GPoly<K>]| g.iter().any(|p| p.lm().iter().all(|&x| x == 0));
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for k in 1..g.len() {
        for i in 0..k {
            pending.insert((i, k));
        }
    }
    while !unit(&g) {
        budget.check()?;
        // normal selection: smallest lcm, ties by index
        let Some(&(i, k)) = pending.iter().min_by(|&&(a, b), &&(c, d)| {
            order.cmp(&lcm(g[a].lm(), g[b].lm()), &lcm(g[c].lm(), g[d].lm())).then((a, b).cmp(&(c, d)))
        }) else {
            break;
        };
        pending.remove(&(i, k));
        let (li, lk) = (g[i].lm(), g[k].lm());
        if coprime(li, lk) {
            continue;
        }
        let l = lcm(li, lk);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..g.len()).any(|j| {
            j != i && j != k && divides(g[j].lm(), &l) && !pending.contains(&key(i, j)) && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = g[i].s_poly(&g[k], order);
        let refs: Vec<&GPoly<K>> = g.iter().collect();
        let h = s.reduce(&refs, order, budget)?;
        if !h.is_zero() {
            let n = g.len();
            g.push(h.monic());
            for j in 0..n {
                pending.insert((j, n));
            }
        }
    }
    if unit(&g) {
        let one = g.iter().find(|p| p.lm().iter().all(|&x| x == 0)).expect("unit present").clone();
        return Ok(vec![one.monic()]);
    }
    interreduce(g, order, budget)
}

/// Minimalize then fully reduce each element against the others.
pub(crate) fn interreduce<K: Field>(
    g: Vec<GPoly<K>>,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<Vec<GPoly<K>>, GroebnerError> {
    let mut keep: Vec<GPoly<K>> = Vec::new();
    for (idx, p) in g.iter().enumerate() {
        let redundant = g.iter().enumerate().any(|(j, q)| {
            j != idx && divides(q.lm(), p.lm()) && (q.lm() != p.lm() || j < idx)
        });
        if !redundant {
            keep.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<&GPoly<K>> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p).collect();
        out.push(keep[i].reduce(&others, order, budget)?.monic());
    }
    out.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    Ok(out)
}

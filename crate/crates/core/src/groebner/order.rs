use std::cmp::Ordering;

/// Monomial orders on exponent vectors indexed like the symtab.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Lexicographic, earlier variables larger.
    Lex,
    /// Graded reverse lexicographic.
    GrevLex,
    /// Elimination order: variables flagged in `front` form the first block.
    /// Blocks compare lexicographically, each block by grevlex.
    Block { front: Vec<bool> },
}

fn grevlex_masked(a: &[u32], b: &[u32], keep: impl Fn(usize) -> bool) -> Ordering {
    let deg = |m: &[u32]| m.iter().enumerate().filter(|(i, _)| keep(*i)).map(|(_, &e)| e as u64).sum::<u64>();
    match deg(a).cmp(&deg(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if keep(i) && a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Elimination order putting the variables at `indices` first.
    pub fn eliminating(nvars: usize, indices: &[usize]) -> Self {
        let mut front = vec![false; nvars];
        for &i in indices {
            front[i] = true;
        }
        MonomialOrder::Block { front }
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex_masked(a, b, |_| true),
            MonomialOrder::Block { front } => {
                grevlex_masked(a, b, |i| front[i]).then_with(|| grevlex_masked(a, b, |i| !front[i]))
            }
        }
    }
}

//! Canonical text rendering shared by every polynomial type.
//!
//! Terms are joined with ` + ` / ` - `, factors with `*`, powers with `^`.
//! Negative exponents print as `mu^-2`, rational coefficients as `p/q`.

/// One rendered term: sign, coefficient magnitude (`None` for a unit) and
/// the monomial text (empty for a constant).
pub(crate) struct TermText {
    pub negative: bool,
    pub magnitude: Option<String>,
    pub monomial: String,
}

pub(crate) fn render_terms<I: IntoIterator<Item = TermText>>(terms: I) -> String {
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        if i == 0 {
            if t.negative {
                out.push('-');
            }
        } else if t.negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        match (t.magnitude, t.monomial.is_empty()) {
            (None, true) => out.push('1'),
            (None, false) => out.push_str(&t.monomial),
            (Some(c), true) => out.push_str(&c),
            (Some(c), false) => {
                out.push_str(&c);
                out.push('*');
                out.push_str(&t.monomial);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(crate) fn render_power(name: &str, exp: i64) -> String {
    if exp == 1 {
        name.to_string()
    } else {
        format!("{name}^{exp}")
    }
}

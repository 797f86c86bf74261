//! Differential graded algebras of knot contact homology: data model, JSON
//! format, expression parser and built-in examples.

pub mod parser;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{MultiPoly, Symtab, RING_VARS};
pub use parser::{parse_expr, parse_ratfunc, ParseError, ParseErrorKind};

const RH_TREFOIL: &str = include_str!("../../data/rh_trefoil.json");
const UNKNOT: &str = include_str!("../../data/unknot.json");

/// Names accepted by [`builtin_dga`].
pub const BUILTIN_NAMES: [&str; 2] = ["unknot", "rh_trefoil"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DgaError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("generator `{name}`: {reason}")]
    Invalid { name: String, reason: String },
    #[error("differential of `{name}`: {source}")]
    Parse {
        name: String,
        #[source]
        source: ParseError,
    },
    #[error("unknown built-in DGA `{0}`")]
    UnknownBuiltin(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: u8,
}

/// A knot DGA with commutative differentials.
///
/// The symtab holds `lambda, mu, Q` followed by every generator of degree
/// at most one, in declaration order.
#[derive(Debug, Clone, PartialEq)]
pub struct Dga {
    name: String,
    generators: Vec<Generator>,
    symtab: Arc<Symtab>,
    differentials: BTreeMap<String, MultiPoly>,
    augmentation_polynomial: Option<MultiPoly>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DgaDocument {
    name: String,
    generators: Vec<Generator>,
    differentials: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    augmentation_polynomial: Option<String>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Dga {
    /// Build and validate from already-parsed pieces.
    pub fn new(
        name: &str,
        generators: Vec<Generator>,
        differentials: BTreeMap<String, String>,
        augmentation_polynomial: Option<&str>,
    ) -> Result<Self, DgaError> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            let invalid = |reason: &str| DgaError::Invalid { name: g.name.clone(), reason: reason.to_string() };
            if !is_identifier(&g.name) {
                return Err(invalid("not a valid identifier"));
            }
            if RING_VARS.contains(&g.name.as_str()) {
                return Err(invalid("name is reserved for a ring variable"));
            }
            if g.degree > 2 {
                return Err(invalid("degree must be 0, 1 or 2"));
            }
            if !seen.insert(g.name.as_str()) {
                return Err(invalid("declared twice"));
            }
        }
        let low: Vec<&str> = generators.iter().filter(|g| g.degree <= 1).map(|g| g.name.as_str()).collect();
        let symtab = Symtab::knot(&low);
        let degree_of = |n: &str| generators.iter().find(|g| g.name == n).map(|g| g.degree);

        let mut parsed = BTreeMap::new();
        for (gname, text) in &differentials {
            let invalid = |reason: String| DgaError::Invalid { name: gname.clone(), reason };
            let deg = degree_of(gname).ok_or_else(|| invalid("differential given for an undeclared generator".into()))?;
            if deg == 0 {
                return Err(invalid("degree-0 generators have no differential".into()));
            }
            let p = parse_expr(text, &symtab).map_err(|e| match e.kind {
                ParseErrorKind::UnknownIdentifier(ref v) => invalid(format!("differential references undeclared chord `{v}`")),
                _ => DgaError::Parse { name: gname.clone(), source: e },
            })?;
            for (i, chord) in symtab.names().iter().enumerate().skip(RING_VARS.len()) {
                let cd = degree_of(chord).expect("symtab chords are declared");
                if p.uses_var(i) && cd >= deg {
                    return Err(invalid(format!("differential uses `{chord}` of degree {cd}, not lower than {deg}")));
                }
            }
            parsed.insert(gname.clone(), p);
        }
        for g in generators.iter().filter(|g| g.degree == 1) {
            if !parsed.contains_key(&g.name) {
                return Err(DgaError::Invalid { name: g.name.clone(), reason: "degree-1 generator lacks a differential".into() });
            }
        }
        let ring_only = Symtab::knot::<&str>(&[]);
        let augmentation_polynomial = augmentation_polynomial
            .map(|t| {
                parse_expr(t, &ring_only)
                    .map_err(|e| DgaError::Parse { name: "augmentation_polynomial".into(), source: e })
                    .map(|p| p.remap(&symtab).expect("ring vars are in every knot symtab"))
            })
            .transpose()?;
        Ok(Dga { name: name.to_string(), generators, symtab, differentials: parsed, augmentation_polynomial })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn symtab(&self) -> &Arc<Symtab> {
        &self.symtab
    }

    /// Generator names of a given degree, in declaration order.
    pub fn chords(&self, degree: u8) -> Vec<&str> {
        self.generators.iter().filter(|g| g.degree == degree).map(|g| g.name.as_str()).collect()
    }

    pub fn differential(&self, gen: &str) -> Option<&MultiPoly> {
        self.differentials.get(gen)
    }

    /// Whether every degree-2 generator carries a differential.
    pub fn has_degree2_differentials(&self) -> bool {
        let d2 = self.chords(2);
        !d2.is_empty() && d2.iter().all(|g| self.differentials.contains_key(*g))
    }

    /// Stored augmentation polynomial metadata, in the DGA symtab.
    pub fn augmentation_polynomial(&self) -> Option<&MultiPoly> {
        self.augmentation_polynomial.as_ref()
    }

    /// Serialize with canonically rendered differentials.
    pub fn to_json(&self) -> String {
        let doc = DgaDocument {
            name: self.name.clone(),
            generators: self.generators.clone(),
            differentials: self.differentials.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            augmentation_polynomial: self.augmentation_polynomial.as_ref().map(|p| p.to_string()),
        };
        serde_json::to_string_pretty(&doc).expect("document serializes")
    }
}

/// Parse and validate a DGA JSON document.
pub fn parse_dga(document: &str) -> Result<Dga, DgaError> {
    let doc: DgaDocument = serde_json::from_str(document).map_err(|e| DgaError::Malformed(e.to_string()))?;
    Dga::new(&doc.name, doc.generators, doc.differentials, doc.augmentation_polynomial.as_deref())
}

/// The raw JSON text of a built-in DGA.
pub fn builtin_document(name: &str) -> Result<&'static str, DgaError> {
    match name {
        "rh_trefoil" => Ok(RH_TREFOIL),
        "unknot" => Ok(UNKNOT),
        _ => Err(DgaError::UnknownBuiltin(name.to_string())),
    }
}

pub fn builtin_dga(name: &str) -> Result<Dga, DgaError> {
    parse_dga(builtin_document(name)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_generator_counts() {
        let d = builtin_dga("rh_trefoil").unwrap();
        assert_eq!(d.chords(0), ["a12", "a21"]);
        assert_eq!(d.chords(1).len(), 6);
        assert_eq!(d.chords(2).len(), 4);
        assert!(!d.has_degree2_differentials());
    }

    #[test]
    fn trefoil_b21_differential() {
        let d = builtin_dga("rh_trefoil").unwrap();
        let expected = parse_expr("-a12 + lambda*mu^-3*a21", d.symtab()).unwrap();
        assert_eq!(d.differential("b21").unwrap(), &expected);
        assert_eq!(expected.to_string(), "lambda*mu^-3*a21 - a12");
    }

    #[test]
    fn unknot_has_no_degree0_chords() {
        let d = builtin_dga("unknot").unwrap();
        assert!(d.chords(0).is_empty());
        assert_eq!(d.augmentation_polynomial().unwrap().to_string(), "lambda*mu*Q - lambda - mu + 1");
    }

    #[test]
    fn unknown_builtin() {
        assert_eq!(builtin_dga("torus"), Err(DgaError::UnknownBuiltin("torus".into())));
    }

    #[test]
    fn degree0_differential_rejected() {
        let doc = r#"{"name":"x","generators":[{"name":"a","degree":0}],"differentials":{"a":"1"}}"#;
        assert!(matches!(parse_dga(doc), Err(DgaError::Invalid { name, .. }) if name == "a"));
    }

    #[test]
    fn undeclared_chord_rejected() {
        let doc = r#"{"name":"x","generators":[{"name":"a","degree":0},{"name":"c","degree":1}],"differentials":{"c":"a*z"}}"#;
        let err = parse_dga(doc).unwrap_err();
        assert!(matches!(&err, DgaError::Invalid { name, reason } if name == "c" && reason.contains("`z`")), "{err}");
    }

    #[test]
    fn degree_ordering_enforced() {
        let doc = r#"{"name":"x","generators":[{"name":"b","degree":1},{"name":"c","degree":1}],"differentials":{"b":"c","c":"1"}}"#;
        assert!(parse_dga(doc).is_err());
        let doc = r#"{"name":"x","generators":[{"name":"a","degree":0},{"name":"b","degree":1},{"name":"e","degree":2}],
            "differentials":{"b":"a - 1","e":"a*b"}}"#;
        assert!(parse_dga(doc).unwrap().has_degree2_differentials());
    }

    #[test]
    fn reserved_and_duplicate_names() {
        let doc = r#"{"name":"x","generators":[{"name":"mu","degree":0}],"differentials":{}}"#;
        assert!(parse_dga(doc).is_err());
        let doc = r#"{"name":"x","generators":[{"name":"a","degree":0},{"name":"a","degree":1}],"differentials":{}}"#;
        assert!(parse_dga(doc).is_err());
        assert!(matches!(parse_dga("{"), Err(DgaError::Malformed(_))));
    }

    #[test]
    fn builtins_round_trip_through_json() {
        for name in BUILTIN_NAMES {
            let d = builtin_dga(name).unwrap();
            assert_eq!(parse_dga(&d.to_json()).unwrap(), d);
        }
    }
}

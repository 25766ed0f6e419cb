//! Plain-text ideal files.
//!
//! ```text
//! ring: x, y, z, t over QQ order grevlex
//! # comments and blank lines are ignored
//! x^2 - y*t
//! x*y - z*t
//! ```
//!
//! The field is `QQ` or `Fp:<prime>`, the order `grevlex` or `lex`.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use super::{parse_polynomial, MonomialOrder, PolyRing, Polynomial};
use crate::error::PolyError;
use crate::field::{CoefficientField, Field, PrimeField, Rationals};

/// A ring together with a list of generators read from an ideal file.
#[derive(Clone, Debug)]
pub struct IdealFile<F: Field> {
    pub ring: Arc<PolyRing<F>>,
    pub generators: Vec<Polynomial<F>>,
}

/// An ideal file whose coefficient field is only known at run time.
#[derive(Clone, Debug)]
pub enum AnyIdeal {
    Rational(IdealFile<Rationals>),
    Prime(IdealFile<PrimeField>),
}

impl AnyIdeal {
    pub fn parse(text: &str) -> Result<Self, PolyError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, header) = lines
            .next()
            .ok_or_else(|| PolyError::BadIdealFile("missing `ring:` header".into()))?;
        let (vars, field, order) = parse_header(header)?;
        let body: Vec<(usize, &str)> = lines.collect();
        match field {
            CoefficientField::Rationals => {
                let ring = PolyRing::new(&vars, Rationals, order)?;
                Ok(AnyIdeal::Rational(read_body(ring, &body)?))
            }
            CoefficientField::PrimeField(p) => {
                let ring = PolyRing::new(&vars, PrimeField::new(p)?, order)?;
                Ok(AnyIdeal::Prime(read_body(ring, &body)?))
            }
        }
    }

    pub fn field(&self) -> CoefficientField {
        match self {
            AnyIdeal::Rational(f) => f.ring.field().descriptor(),
            AnyIdeal::Prime(f) => f.ring.field().descriptor(),
        }
    }
}

fn parse_header(line: &str) -> Result<(Vec<String>, CoefficientField, MonomialOrder), PolyError> {
    let bad = |m: &str| PolyError::BadIdealFile(format!("{m} in header `{line}`"));
    let rest = line.strip_prefix("ring:").ok_or_else(|| bad("expected `ring:`"))?;
    let (vars, rest) = rest.split_once(" over ").ok_or_else(|| bad("expected `over`"))?;
    let (field, order) = match rest.split_once(" order ") {
        Some((f, o)) => (f, Some(o)),
        None => (rest, None),
    };
    let vars: Vec<String> = vars.split(',').map(|v| v.trim().to_string()).collect();
    if vars.iter().any(|v| v.is_empty()) {
        return Err(bad("empty variable name"));
    }
    let field: CoefficientField = field.trim().parse()?;
    let order = match order.map(str::trim) {
        None | Some("grevlex") => MonomialOrder::Grevlex,
        Some("lex") => MonomialOrder::Lex,
        Some(other) => return Err(bad(&format!("unknown order `{other}`"))),
    };
    Ok((vars, field, order))
}

fn read_body<F: Field>(ring: Arc<PolyRing<F>>, body: &[(usize, &str)]) -> Result<IdealFile<F>, PolyError> {
    let mut generators = Vec::with_capacity(body.len());
    for &(lineno, text) in body {
        let text = text.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let p = parse_polynomial(text, &ring).map_err(|e| PolyError::BadIdealFile(format!("line {lineno}: {e}")))?;
        generators.push(p);
    }
    Ok(IdealFile { ring, generators })
}

/// Read an ideal file from disk.
pub fn read_ideal_file(path: &Path) -> Result<AnyIdeal, PolyError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| PolyError::BadIdealFile(format!("{}: {e}", path.display())))?;
    AnyIdeal::parse(&text)
}

/// Render generators in the ideal file format, with optional `#` header lines.
pub fn write_ideal_file<F: Field>(ring: &PolyRing<F>, generators: &[Polynomial<F>], comments: &[String]) -> String {
    let order = match ring.order() {
        MonomialOrder::Lex => "lex".to_string(),
        o => o.name(),
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "ring: {} over {} order {}",
        ring.variables().join(", "),
        ring.field().descriptor(),
        order
    );
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    for g in generators {
        let _ = writeln!(out, "{g}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# twisted cubic\nring: x, y, z, t over QQ order grevlex\nx^2 - y*t\nx*y - z*t  # trailing\n\ny^2 - x*z\n";
        let AnyIdeal::Rational(f) = AnyIdeal::parse(text).unwrap() else {
            panic!("expected rational ideal")
        };
        assert_eq!(f.generators.len(), 3);
        let out = write_ideal_file(&f.ring, &f.generators, &["reduced".into()]);
        let AnyIdeal::Rational(g) = AnyIdeal::parse(&out).unwrap() else {
            panic!()
        };
        assert_eq!(g.generators, f.generators);
    }

    #[test]
    fn prime_field_and_errors() {
        let f = AnyIdeal::parse("ring: a,b over Fp:32003 order lex\na^2 - 3/2*b").unwrap();
        assert_eq!(f.field(), CoefficientField::PrimeField(32003));
        assert!(AnyIdeal::parse("ring: a over Fp:32004\n").is_err());
        assert!(AnyIdeal::parse("a^2\n").is_err());
        let e = AnyIdeal::parse("ring: a over QQ\na + q\n").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
    }
}

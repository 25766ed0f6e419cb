use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{parse_generators, VarietyError, SPAN_VARS};
use crate::error::PolyError;
use crate::field::Field;
use crate::groebner::{kernel_of_map, GbOptions, Ideal};
use crate::linalg::{rank, rref, Matrix};
use crate::poly::{parse_polynomial, PolyRing, Polynomial, Term};

/// Coordinates of `P^5`.
pub const P5_VARS: [&str; 6] = ["x", "y", "z", "t", "u", "v"];

/// The twisted cubic and its three degenerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CurveVariant {
    /// Twisted cubic.
    C,
    /// Smooth conic plus a line.
    C0,
    /// Chain of three lines.
    C1,
    /// Three concurrent lines.
    C2,
}

impl CurveVariant {
    pub const ALL: [CurveVariant; 4] = [CurveVariant::C, CurveVariant::C0, CurveVariant::C1, CurveVariant::C2];

    fn source(&self) -> &'static str {
        match self {
            CurveVariant::C => include_str!("../../data/curve_c.ideal"),
            CurveVariant::C0 => include_str!("../../data/curve_c0.ideal"),
            CurveVariant::C1 => include_str!("../../data/curve_c1.ideal"),
            CurveVariant::C2 => include_str!("../../data/curve_c2.ideal"),
        }
    }
}

impl fmt::Display for CurveVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The ideal of a curve variant in `ring`, which must contain the variables `x, y, z, t, u, v`.
pub fn curve_ideal<F: Field>(ring: &Arc<PolyRing<F>>, v: CurveVariant) -> Result<Ideal<F>, PolyError> {
    Ideal::new(ring, parse_generators(v.source(), ring)?)
}

/// `u, v` and the 2×2 minors of `((λx, y, z), (t, x, λy))`.
pub fn curve_lambda<F: Field>(ring: &Arc<PolyRing<F>>, lambda: i64) -> Result<Ideal<F>, PolyError> {
    let l = ring.field().from_i64(lambda);
    let p = |s: &str| parse_polynomial(s, ring);
    let lx = p("x")?.scale(&l);
    let ly = p("y")?.scale(&l);
    let (x, y, z, t) = (p("x")?, p("y")?, p("z")?, p("t")?);
    let minor = |a: &Polynomial<F>, b: &Polynomial<F>, c: &Polynomial<F>, d: &Polynomial<F>| &(a * d) - &(b * c);
    let gens = vec![
        p("u")?,
        p("v")?,
        minor(&lx, &y, &t, &x),
        minor(&lx, &z, &t, &ly),
        minor(&y, &z, &x, &ly),
    ];
    Ideal::new(ring, gens)
}

/// The list of quadrics `(a, ..., n)` through the twisted cubic, as printed.
pub fn printed_coordinates<F: Field>(ring: &Arc<PolyRing<F>>) -> Result<Vec<Polynomial<F>>, PolyError> {
    parse_generators(include_str!("../../data/coordinates.ideal"), ring)
}

/// A basis of the degree-2 part of `ideal`, in reduced row echelon form over the quadric monomials.
pub fn quadrics_through<F: Field>(ideal: &Ideal<F>) -> Vec<Polynomial<F>> {
    let ring = ideal.ring();
    let field = ring.field();
    let monos = ring.monomials_of_degree(2);
    let mut spanning = Vec::new();
    for g in ideal.generators() {
        match g.degree() {
            Some(0) => return monos.iter().map(|m| Polynomial::monomial(ring, field.one(), m.clone())).collect(),
            Some(1) => spanning.extend((0..ring.nvars()).map(|i| g * &Polynomial::var(ring, i))),
            Some(2) if g.is_homogeneous() => spanning.push(g.clone()),
            _ => {}
        }
    }
    let mut m: Matrix<F::Elem> = spanning.iter().map(|q| monos.iter().map(|mo| q.coefficient_of(mo)).collect()).collect();
    let pivots = rref(field, &mut m);
    m.truncate(pivots.len());
    m.into_iter()
        .map(|row| {
            let terms = row
                .into_iter()
                .zip(&monos)
                .filter(|(c, _)| !field.is_zero(c))
                .map(|(coeff, mono)| Term { coeff, mono: mono.clone() })
                .collect();
            Polynomial::from_terms(ring, terms)
        })
        .collect()
}

/// Whether two lists of homogeneous polynomials of one degree span the same space.
pub fn same_span<F: Field>(a: &[Polynomial<F>], b: &[Polynomial<F>]) -> bool {
    let Some(ring) = a.first().or(b.first()).map(|p| p.ring().clone()) else {
        return true;
    };
    let mut monos: Vec<_> = a.iter().chain(b).flat_map(|p| p.terms().iter().map(|t| t.mono.clone())).collect();
    monos.sort_by(|x, y| ring.cmp(x, y));
    monos.dedup();
    let field = ring.field();
    let rows = |ps: &[Polynomial<F>]| -> Matrix<F::Elem> { ps.iter().map(|p| monos.iter().map(|m| p.coefficient_of(m)).collect()).collect() };
    let (ra, rb) = (rows(a), rows(b));
    let r = rank(field, &ra);
    r == rank(field, &rb) && r == rank(field, &[ra, rb].concat())
}

/// The ideal of the closure of the image of `P^5` under `quadrics`, in coordinates `a..n`.
pub fn image_ideal<F: Field>(quadrics: &[Polynomial<F>], opts: &GbOptions) -> Result<Ideal<F>, VarietyError> {
    let ring = quadrics
        .first()
        .map(|q| q.ring().clone())
        .ok_or_else(|| VarietyError::Invalid("empty quadric system".into()))?;
    if quadrics.len() != SPAN_VARS.len() {
        return Err(PolyError::ArityMismatch { expected: SPAN_VARS.len(), got: quadrics.len() }.into());
    }
    Ok(kernel_of_map(&ring, quadrics, &SPAN_VARS, opts)?)
}

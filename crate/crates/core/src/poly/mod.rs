//! Sparse multivariate polynomials over an exact field.
//!
//! A [`Polynomial`] keeps its terms sorted strictly descending in the ring's
//! monomial order, with no zero coefficients and no repeated monomials, so the
//! leading term is always `terms[0]`.

mod arith;
mod io;
mod monomial;
mod parse;

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::PolyError;
use crate::field::Field;

pub use io::{read_ideal_file, write_ideal_file, AnyIdeal, IdealFile};
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use parse::parse_polynomial;

/// A polynomial ring `K[x_1, ..., x_n]` with a monomial order and a grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<F: Field> {
    vars: Vec<String>,
    field: F,
    order: MonomialOrder,
    weights: Vec<u32>,
    unit_weights: bool,
}

impl<F: Field> PolyRing<F> {
    pub fn new<S: AsRef<str>>(vars: &[S], field: F, order: MonomialOrder) -> Result<Arc<Self>, PolyError> {
        Self::with_weights(vars, field, order, vec![1; vars.len()])
    }

    /// A ring graded by positive integer `weights`.
    pub fn with_weights<S: AsRef<str>>(
        vars: &[S],
        field: F,
        order: MonomialOrder,
        weights: Vec<u32>,
    ) -> Result<Arc<Self>, PolyError> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        if vars.len() > MAX_VARS {
            return Err(PolyError::InvalidRing(format!("more than {MAX_VARS} variables")));
        }
        let mut seen = HashSet::new();
        for v in &vars {
            if !is_identifier(v) {
                return Err(PolyError::InvalidRing(format!("bad variable name `{v}`")));
            }
            if !seen.insert(v.as_str()) {
                return Err(PolyError::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::Block { front } = order {
            if front == 0 || front >= vars.len() {
                return Err(PolyError::InvalidRing(format!(
                    "block order must split {} variables into two nonempty blocks",
                    vars.len()
                )));
            }
        }
        if weights.len() != vars.len() || weights.contains(&0) {
            return Err(PolyError::InvalidRing("weights must be positive, one per variable".into()));
        }
        let unit_weights = weights.iter().all(|&w| w == 1);
        Ok(Arc::new(PolyRing {
            vars,
            field,
            order,
            weights,
            unit_weights,
        }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn is_standard_graded(&self) -> bool {
        self.unit_weights
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(&self.weights, self.unit_weights, a, b)
    }

    #[inline]
    pub fn degree_of(&self, m: &Monomial) -> u32 {
        if self.unit_weights {
            m.degree()
        } else {
            m.weighted_degree(&self.weights)
        }
    }

    /// Same variables and field, different order (weights reset to 1 unless kept).
    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>, PolyError> {
        Self::with_weights(&self.vars, self.field.clone(), order, self.weights.clone())
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars[i].clone()),
                _ => parts.push(format!("{}^{}", self.vars[i], e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// One term of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<E> {
    pub coeff: E,
    pub mono: Monomial,
}

/// A polynomial in canonical form.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: Vec<Term<F::Elem>>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing<F>>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Arc<PolyRing<F>>, c: F::Elem) -> Self {
        Self::monomial(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn var(ring: &Arc<PolyRing<F>>, i: usize) -> Self {
        Self::monomial(ring, ring.field.one(), Monomial::var(ring.nvars(), i))
    }

    /// Variable by name; panics if absent (for use with fixed, known rings).
    pub fn named(ring: &Arc<PolyRing<F>>, name: &str) -> Self {
        let i = ring
            .var_index(name)
            .unwrap_or_else(|| panic!("no variable `{name}` in ring"));
        Self::var(ring, i)
    }

    pub fn monomial(ring: &Arc<PolyRing<F>>, c: F::Elem, m: Monomial) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        let terms = if ring.field.is_zero(&c) {
            Vec::new()
        } else {
            vec![Term { coeff: c, mono: m }]
        };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Canonicalize an arbitrary list of terms (sort, merge, drop zeros).
    pub fn from_terms(ring: &Arc<PolyRing<F>>, mut terms: Vec<Term<F::Elem>>) -> Self {
        let field = &ring.field;
        terms.sort_by(|a, b| ring.cmp(&b.mono, &a.mono));
        let mut out: Vec<Term<F::Elem>> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff = field.add(&last.coeff, &t.coeff);
                }
                _ => {
                    if let Some(last) = out.last() {
                        if field.is_zero(&last.coeff) {
                            out.pop();
                        }
                    }
                    out.push(t);
                }
            }
        }
        if let Some(last) = out.last() {
            if field.is_zero(&last.coeff) {
                out.pop();
            }
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Terms already strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing<F>>, terms: Vec<Term<F::Elem>>) -> Self {
        let p = Polynomial { ring: ring.clone(), terms };
        debug_assert!(p.is_canonical());
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn terms(&self) -> &[Term<F::Elem>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<F::Elem>> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term<F::Elem>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.mono)
    }

    pub fn leading_coefficient(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// Maximum degree (weighted by the ring grading) over all terms; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| self.ring.degree_of(&t.mono)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|t| self.ring.degree_of(&t.mono));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The checked invariant: strictly descending, no zero coefficient, correct arity.
    pub fn is_canonical(&self) -> bool {
        let field = &self.ring.field;
        self.terms.iter().all(|t| !field.is_zero(&t.coeff) && t.mono.nvars() == self.ring.nvars())
            && self
                .terms
                .windows(2)
                .all(|w| self.ring.cmp(&w[0].mono, &w[1].mono) == Ordering::Greater)
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    pub fn coefficient_of(&self, m: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|t| t.mono == *m)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.ring.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Variables that occur in some term.
    pub fn support_mask(&self) -> u32 {
        self.terms.iter().fold(0, |m, t| m | t.mono.support_mask())
    }

    /// Evaluate at a point given by one field element per variable.
    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        let field = &self.ring.field;
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = field.zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                if e > 0 {
                    v = field.mul(&v, &field.pow(&point[i], e as u64));
                }
            }
            acc = field.add(&acc, &v);
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let field = &self.ring.field;
        let mut terms = Vec::new();
        for t in &self.terms {
            let e = t.mono.exponent(i);
            if e == 0 {
                continue;
            }
            let c = field.mul(&t.coeff, &field.from_i64(e as i64));
            if field.is_zero(&c) {
                continue;
            }
            terms.push(Term {
                coeff: c,
                mono: t.mono.with_exponent(i, e - 1),
            });
        }
        // lowering one exponent is not order preserving in general
        Self::from_terms(&self.ring, terms)
    }

    /// Move into another ring over the same field, renaming variables through `map`
    /// (source index to target index). Fails if an occurring variable has no image.
    pub fn remap(&self, target: &Arc<PolyRing<F>>, map: &[Option<usize>]) -> Result<Self, PolyError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mono = t.mono.remap(target.nvars(), map).ok_or_else(|| {
                PolyError::InvalidRing("polynomial uses a variable absent from the target ring".into())
            })?;
            terms.push(Term {
                coeff: t.coeff.clone(),
                mono,
            });
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Move into a ring whose variable names include all variables used here.
    pub fn remap_by_name(&self, target: &Arc<PolyRing<F>>) -> Result<Self, PolyError> {
        let map: Vec<Option<usize>> = self.ring.vars.iter().map(|v| target.var_index(v)).collect();
        self.remap(target, &map)
    }

    /// Apply a coefficient map into a ring over another field with the same variables.
    pub fn map_coefficients<G: Field>(
        &self,
        target: &Arc<PolyRing<G>>,
        mut f: impl FnMut(&F::Elem) -> Option<G::Elem>,
    ) -> Result<Polynomial<G>, PolyError> {
        if target.nvars() != self.ring.nvars() {
            return Err(PolyError::RingMismatch);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c = f(&t.coeff).ok_or_else(|| {
                PolyError::BadCoefficient(self.ring.field.to_rational(&t.coeff).to_string())
            })?;
            terms.push(Term { coeff: c, mono: t.mono });
        }
        Ok(Polynomial::from_terms(target, terms))
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = &self.ring.field;
        for (k, t) in self.terms.iter().enumerate() {
            let negative = field.is_negative(&t.coeff);
            let abs = if negative { field.neg(&t.coeff) } else { t.coeff.clone() };
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let c = field.to_rational(&abs);
            if t.mono.is_one() {
                write!(f, "{c}")?;
            } else if field.is_one(&abs) {
                f.write_str(&self.ring.format_monomial(&t.mono))?;
            } else {
                write!(f, "{c}*{}", self.ring.format_monomial(&t.mono))?;
            }
        }
        Ok(())
    }
}

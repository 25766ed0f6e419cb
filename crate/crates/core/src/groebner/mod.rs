//! Buchberger's algorithm with Gebauer–Möller pair elimination.
//!
//! Pairs are processed by the normal strategy (smallest sugar, then smallest
//! lcm), so homogeneous input is handled degree by degree and a degree bound
//! yields a correct truncated basis. All choices are deterministic.

mod ops;

use std::cmp::Ordering;
use std::sync::Arc;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::error::PolyError;
use crate::field::Field;
use crate::poly::{parse_polynomial, write_ideal_file, Monomial, MonomialOrder, PolyRing, Polynomial, Term};

pub use ops::{elimination_ideal, ideal_equal, kernel_of_map, radical_membership, saturation_degree_part, IdealRelation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("time budget exhausted")]
    Timeout,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Budget and truncation controls for a Gröbner computation.
#[derive(Clone, Copy, Debug, Default)]
pub struct GbOptions {
    pub deadline: Option<Instant>,
    /// Ignore S-pairs whose sugar exceeds this degree.
    pub degree_bound: Option<u32>,
}

impl GbOptions {
    pub fn with_timeout(budget: Duration) -> Self {
        GbOptions {
            deadline: Some(Instant::now() + budget),
            degree_bound: None,
        }
    }

    pub(crate) fn check(&self) -> Result<(), GroebnerError> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(GroebnerError::Timeout),
            _ => Ok(()),
        }
    }
}

/// An ideal given by generators.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    ring: Arc<PolyRing<F>>,
    generators: Vec<Polynomial<F>>,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<PolyRing<F>>, generators: Vec<Polynomial<F>>) -> Result<Self, PolyError> {
        for g in &generators {
            if g.ring().as_ref() != ring.as_ref() {
                return Err(PolyError::RingMismatch);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn parse<S: AsRef<str>>(ring: &Arc<PolyRing<F>>, generators: &[S]) -> Result<Self, PolyError> {
        let gens = generators
            .iter()
            .map(|s| parse_polynomial(s.as_ref(), ring))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ring, gens)
    }

    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Ideal {
            ring: ring.clone(),
            generators: Vec::new(),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// `self + (extra)`.
    pub fn plus(&self, extra: &[Polynomial<F>]) -> Result<Self, PolyError> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Self::new(&self.ring, gens)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Self, PolyError> {
        self.plus(&other.generators)
    }

    /// The same ideal in the ring with another monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Self, PolyError> {
        let ring = self.ring.with_order(order)?;
        let gens = self
            .generators
            .iter()
            .map(|g| g.remap_by_name(&ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(&ring, gens)
    }

    /// The same generators read in another ring sharing the variable names.
    pub fn transfer(&self, ring: &Arc<PolyRing<F>>) -> Result<Self, PolyError> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.remap_by_name(ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(ring, gens)
    }

    pub fn groebner(&self, opts: &GbOptions) -> Result<GroebnerBasis<F>, GroebnerError> {
        buchberger(self, opts)
    }
}

struct Element<E> {
    terms: Vec<Term<E>>,
    lm: Monomial,
    mask: u32,
    sugar: u32,
    active: bool,
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// A reduced Gröbner basis: monic, minimal, tail-reduced and sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<PolyRing<F>>,
    basis: Vec<Polynomial<F>>,
    truncated: bool,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn basis(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    /// True when a degree bound cut the computation short.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| g.leading_monomial().expect("nonzero")).collect()
    }

    pub fn ideal(&self) -> Ideal<F> {
        Ideal {
            ring: self.ring.clone(),
            generators: self.basis.clone(),
        }
    }

    fn reducers(&self) -> Vec<(Monomial, u32, &[Term<F::Elem>])> {
        self.basis
            .iter()
            .map(|g| {
                let lm = g.leading_monomial().expect("nonzero");
                (lm, lm.support_mask(), g.terms())
            })
            .collect()
    }

    /// Remainder of `f` on division by the basis; no term of the result is divisible by a leading monomial.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>, PolyError> {
        if f.ring().as_ref() != self.ring.as_ref() {
            return Err(PolyError::RingMismatch);
        }
        let reducers = self.reducers();
        let terms = reduce(&self.ring, f.terms().to_vec(), &reducers, false);
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool, PolyError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Check that S-polynomials reduce to zero. With `limit`, only the first
    /// `limit` pairs in a fixed scan order are examined.
    pub fn verify_s_pairs(&self, limit: Option<usize>) -> bool {
        let reducers = self.reducers();
        let mut checked = 0;
        for j in 0..self.basis.len() {
            for i in 0..j {
                if limit.is_some_and(|l| checked >= l) {
                    return true;
                }
                checked += 1;
                let s = s_polynomial(&self.ring, &reducers[i], &reducers[j]);
                if !reduce(&self.ring, s, &reducers, true).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// The basis in the ideal file format.
    pub fn to_ideal_file(&self) -> String {
        write_ideal_file(
            &self.ring,
            &self.basis,
            &[format!("groebner: reduced, order={}", self.ring.order().name())],
        )
    }
}

fn s_polynomial<E: Clone>(
    ring: &PolyRing<impl Field<Elem = E>>,
    a: &(Monomial, u32, &[Term<E>]),
    b: &(Monomial, u32, &[Term<E>]),
) -> Vec<Term<E>> {
    let field = ring.field();
    let lcm = a.0.lcm(&b.0);
    let qa = a.0.quotient_of(&lcm).expect("lcm");
    let qb = b.0.quotient_of(&lcm).expect("lcm");
    let left: Vec<Term<E>> = a.2[1..]
        .iter()
        .map(|t| Term {
            coeff: t.coeff.clone(),
            mono: t.mono.mul(&qa),
        })
        .collect();
    sub_mul(ring, &left, &field.one(), &qb, &b.2[1..])
}

/// `a - c * m * b` for descending term lists.
fn sub_mul<F: Field>(ring: &PolyRing<F>, a: &[Term<F::Elem>], c: &F::Elem, m: &Monomial, b: &[Term<F::Elem>]) -> Vec<Term<F::Elem>> {
    let field = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    while i < a.len() && j < b.len() {
        let bm = b[j].mono.mul(m);
        match ring.cmp(&a[i].mono, &bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(Term {
                    coeff: field.neg(&field.mul(c, &b[j].coeff)),
                    mono: bm,
                });
                j += 1;
            }
            Ordering::Equal => {
                let s = field.sub(&a[i].coeff, &field.mul(c, &b[j].coeff));
                if !field.is_zero(&s) {
                    out.push(Term { coeff: s, mono: bm });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        out.push(Term {
            coeff: field.neg(&field.mul(c, &t.coeff)),
            mono: t.mono.mul(m),
        });
    }
    out
}

/// Reduce `f` by monic reducers `(lm, mask, terms)`. With `top_only`, stop at
/// the first irreducible leading term and return the rest unreduced.
fn reduce<F: Field>(
    ring: &PolyRing<F>,
    f: Vec<Term<F::Elem>>,
    reducers: &[(Monomial, u32, &[Term<F::Elem>])],
    top_only: bool,
) -> Vec<Term<F::Elem>> {
    let mut p = f;
    let mut start = 0;
    let mut out: Vec<Term<F::Elem>> = Vec::new();
    while start < p.len() {
        let lt = &p[start];
        let mask = lt.mono.support_mask();
        let hit = reducers
            .iter()
            .find(|(lm, m, _)| m & !mask == 0 && lm.divides(&lt.mono));
        match hit {
            Some((lm, _, g)) => {
                let q = lm.quotient_of(&lt.mono).expect("divides");
                let c = lt.coeff.clone();
                p = sub_mul(ring, &p[start + 1..], &c, &q, &g[1..]);
                start = 0;
            }
            None => {
                if top_only {
                    out.extend_from_slice(&p[start..]);
                    return out;
                }
                out.push(p[start].clone());
                start += 1;
            }
        }
    }
    out
}

fn make_monic<F: Field>(field: &F, terms: &mut [Term<F::Elem>]) {
    if let Some(lc) = terms.first().map(|t| t.coeff.clone()) {
        if !field.is_one(&lc) {
            let inv = field.inv(&lc).expect("nonzero");
            for t in terms.iter_mut() {
                t.coeff = field.mul(&t.coeff, &inv);
            }
        }
    }
}

fn buchberger<F: Field>(ideal: &Ideal<F>, opts: &GbOptions) -> Result<GroebnerBasis<F>, GroebnerError> {
    let ring = ideal.ring.clone();
    let field = ring.field();
    let mut elems: Vec<Element<F::Elem>> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut truncated = false;

    let mut inputs: Vec<Vec<Term<F::Elem>>> = Vec::new();
    for g in &ideal.generators {
        let mut t = g.terms().to_vec();
        make_monic(field, &mut t);
        inputs.push(t);
    }
    // lowest degree first; stable so equal degrees keep the caller's order
    inputs.sort_by_key(|t| t.iter().map(|x| ring.degree_of(&x.mono)).max().unwrap_or(0));

    let mut pending: Vec<(Vec<Term<F::Elem>>, u32)> = inputs
        .into_iter()
        .map(|t| {
            let s = t.iter().map(|x| ring.degree_of(&x.mono)).max().unwrap_or(0);
            (t, s)
        })
        .collect();
    pending.reverse();

    loop {
        opts.check()?;
        let (poly, sugar) = if let Some(p) = pending.pop() {
            p
        } else {
            let Some(k) = select_pair(&ring, &pairs) else { break };
            let pair = pairs.swap_remove(k);
            if opts.degree_bound.is_some_and(|b| pair.sugar > b) {
                truncated = true;
                continue;
            }
            let a = &elems[pair.i];
            let b = &elems[pair.j];
            let s = s_polynomial(&ring, &(a.lm, a.mask, &a.terms), &(b.lm, b.mask, &b.terms));
            (s, pair.sugar)
        };
        if poly.is_empty() {
            continue;
        }
        let reducers: Vec<(Monomial, u32, &[Term<F::Elem>])> = elems
            .iter()
            .filter(|e| e.active)
            .map(|e| (e.lm, e.mask, e.terms.as_slice()))
            .collect();
        let mut h = reduce(&ring, poly, &reducers, false);
        if h.is_empty() {
            continue;
        }
        make_monic(field, &mut h);
        if h[0].mono.is_one() {
            return Ok(GroebnerBasis {
                ring: ring.clone(),
                basis: vec![Polynomial::one(&ring)],
                truncated: false,
            });
        }
        update(&ring, &mut elems, &mut pairs, h, sugar);
    }

    Ok(GroebnerBasis {
        basis: finish(&ring, &elems),
        ring,
        truncated,
    })
}

fn select_pair<F: Field>(ring: &PolyRing<F>, pairs: &[Pair]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, p) in pairs.iter().enumerate() {
        best = match best {
            None => Some(k),
            Some(b) => {
                let q = &pairs[b];
                let ord = p
                    .sugar
                    .cmp(&q.sugar)
                    .then_with(|| ring.cmp(&p.lcm, &q.lcm))
                    .then_with(|| (p.j, p.i).cmp(&(q.j, q.i)));
                if ord == Ordering::Less {
                    Some(k)
                } else {
                    Some(b)
                }
            }
        };
    }
    best
}

/// Gebauer–Möller update after adding `h` to the basis.
fn update<F: Field>(ring: &PolyRing<F>, elems: &mut Vec<Element<F::Elem>>, pairs: &mut Vec<Pair>, h: Vec<Term<F::Elem>>, sugar: u32) {
    let lm = h[0].mono;
    let mask = lm.support_mask();
    let sugar = sugar.max(ring.degree_of(&lm));
    let k = elems.len();

    let mut new_pairs: Vec<(Pair, bool)> = Vec::new();
    for (i, e) in elems.iter().enumerate().filter(|(_, e)| e.active) {
        let lcm = e.lm.lcm(&lm);
        let si = e.sugar + ring.degree_of(&lcm) - ring.degree_of(&e.lm);
        let sh = sugar + ring.degree_of(&lcm) - ring.degree_of(&lm);
        let coprime = e.mask & mask == 0;
        new_pairs.push((
            Pair {
                i,
                j: k,
                lcm,
                sugar: si.max(sh),
            },
            coprime,
        ));
    }

    // chain criterion among the new pairs, then the product criterion
    let mut rest = new_pairs;
    let mut survivors: Vec<(Pair, bool)> = Vec::new();
    while let Some((p, coprime)) = rest.pop() {
        let dominated = rest.iter().chain(survivors.iter()).any(|(q, _)| q.lcm.divides(&p.lcm));
        if coprime || !dominated {
            survivors.push((p, coprime));
        }
    }
    let fresh: Vec<Pair> = survivors.into_iter().filter(|(_, c)| !c).map(|(p, _)| p).collect();

    // prune old pairs
    pairs.retain(|p| {
        if !lm.divides(&p.lcm) {
            return true;
        }
        let lih = elems[p.i].lm.lcm(&lm);
        let ljh = elems[p.j].lm.lcm(&lm);
        lih == p.lcm || ljh == p.lcm
    });
    pairs.extend(fresh);

    for e in elems.iter_mut().filter(|e| e.active) {
        if lm.divides(&e.lm) {
            e.active = false;
        }
    }
    elems.push(Element {
        terms: h,
        lm,
        mask,
        sugar,
        active: true,
    });
}

fn finish<F: Field>(ring: &Arc<PolyRing<F>>, elems: &[Element<F::Elem>]) -> Vec<Polynomial<F>> {
    let active: Vec<&Element<F::Elem>> = elems.iter().filter(|e| e.active).collect();
    let mut minimal: Vec<&Element<F::Elem>> = Vec::new();
    for (a, e) in active.iter().enumerate() {
        let redundant = active
            .iter()
            .enumerate()
            .any(|(b, o)| b != a && o.lm.divides(&e.lm) && (o.lm != e.lm || b < a));
        if !redundant {
            minimal.push(e);
        }
    }
    let reducers: Vec<(Monomial, u32, &[Term<F::Elem>])> =
        minimal.iter().map(|e| (e.lm, e.mask, e.terms.as_slice())).collect();
    let mut out: Vec<Polynomial<F>> = minimal
        .iter()
        .map(|e| {
            let mut terms = vec![e.terms[0].clone()];
            terms.extend(reduce(ring, e.terms[1..].to_vec(), &reducers, false));
            Polynomial::from_terms(ring, terms)
        })
        .collect();
    out.sort_by(|a, b| {
        ring.cmp(
            &a.leading_monomial().expect("nonzero"),
            &b.leading_monomial().expect("nonzero"),
        )
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn q_ring(vars: &[&str], order: MonomialOrder) -> Arc<PolyRing<Rationals>> {
        PolyRing::new(vars, Rationals, order).unwrap()
    }

    fn gb(ring: &Arc<PolyRing<Rationals>>, gens: &[&str]) -> GroebnerBasis<Rationals> {
        Ideal::parse(ring, gens).unwrap().groebner(&GbOptions::default()).unwrap()
    }

    fn strs<F: Field>(g: &GroebnerBasis<F>) -> Vec<String> {
        g.basis().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn lex_example_is_already_reduced() {
        let r = q_ring(&["x", "y"], MonomialOrder::Lex);
        let g = gb(&r, &["x^2 - y", "y^2"]);
        assert_eq!(strs(&g), vec!["y^2", "x^2 - y"]);
        assert!(g.verify_s_pairs(None));
        let f = parse_polynomial("x^2*y", &r).unwrap();
        assert!(g.normal_form(&f).unwrap().is_zero());
    }

    #[test]
    fn trivial_bases() {
        let r = q_ring(&["x", "y"], MonomialOrder::Grevlex);
        assert_eq!(strs(&gb(&r, &["x", "y"])), vec!["y", "x"]);
        assert_eq!(strs(&gb(&r, &["1"])), vec!["1"]);
        assert_eq!(strs(&gb(&r, &["x*y - 1", "x - 2"])), vec!["y - 1/2", "x - 2"]);
        let one = parse_polynomial("1", &r).unwrap();
        assert_eq!(gb(&r, &["x^2", "x*y"]).normal_form(&one).unwrap(), one);
    }

    #[test]
    fn twisted_cubic() {
        let r = q_ring(&["x", "y", "z", "t"], MonomialOrder::Grevlex);
        let g = gb(&r, &["x^2 - y*t", "x*y - z*t", "y^2 - x*z"]);
        assert_eq!(g.basis().len(), 3);
        assert!(g.verify_s_pairs(None));
    }

    #[test]
    fn cyclic_four_over_fp() {
        let f = PrimeField::new(32003).unwrap();
        let r = PolyRing::new(&["a", "b", "c", "d"], f, MonomialOrder::Grevlex).unwrap();
        let i = Ideal::parse(
            &r,
            &["a+b+c+d", "a*b+b*c+c*d+d*a", "a*b*c+b*c*d+c*d*a+d*a*b", "a*b*c*d-1"],
        )
        .unwrap();
        let g = i.groebner(&GbOptions::default()).unwrap();
        assert_eq!(g.basis().len(), 7);
        assert!(g.verify_s_pairs(None));
        for gen in i.generators() {
            assert!(g.contains(gen).unwrap());
        }
    }

    #[test]
    fn timeout_is_reported() {
        let f = PrimeField::new(32003).unwrap();
        let r = PolyRing::new(&["a", "b", "c", "d", "e"], f, MonomialOrder::Grevlex).unwrap();
        let i = Ideal::parse(&r, &["a+b+c+d+e", "a*b+b*c+c*d+d*e+e*a"]).unwrap();
        let opts = GbOptions {
            deadline: Some(Instant::now()),
            degree_bound: None,
        };
        assert_eq!(i.groebner(&opts).unwrap_err(), GroebnerError::Timeout);
    }

    #[test]
    fn degree_bound_truncates() {
        let r = q_ring(&["x", "y", "z", "t"], MonomialOrder::Grevlex);
        let i = Ideal::parse(&r, &["x^2 - y*t", "x*y - z*t"]).unwrap();
        let full = i.groebner(&GbOptions::default()).unwrap();
        let cut = i
            .groebner(&GbOptions {
                deadline: None,
                degree_bound: Some(2),
            })
            .unwrap();
        assert!(cut.is_truncated());
        assert!(cut.basis().len() < full.basis().len());
    }

    #[test]
    fn file_output_has_header() {
        let r = q_ring(&["x", "y"], MonomialOrder::Lex);
        let text = gb(&r, &["x^2 - y", "y^2"]).to_ideal_file();
        assert!(text.contains("# groebner: reduced, order=lex"));
        assert!(text.starts_with("ring: x, y over QQ order lex"));
    }

    fn arb_poly(ring: Arc<PolyRing<PrimeField>>) -> impl Strategy<Value = Polynomial<PrimeField>> {
        proptest::collection::vec((1u32..7, proptest::collection::vec(0u32..3, 3)), 1..4).prop_map(move |ts| {
            Polynomial::from_terms(
                &ring,
                ts.into_iter()
                    .map(|(c, e)| Term {
                        coeff: c,
                        mono: Monomial::from_exponents(&e),
                    })
                    .collect(),
            )
        })
    }

    fn small_ring() -> Arc<PolyRing<PrimeField>> {
        PolyRing::new(&["x", "y", "z"], PrimeField::new(7).unwrap(), MonomialOrder::Grevlex).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn basis_is_a_certified_reduced_basis(gens in proptest::collection::vec(arb_poly(small_ring()), 1..4)) {
            let r = small_ring();
            let i = Ideal::new(&r, gens.clone()).unwrap();
            let g = i.groebner(&GbOptions::default()).unwrap();
            prop_assert!(g.verify_s_pairs(None));
            for f in &gens {
                prop_assert!(g.contains(f).unwrap());
            }
            let lms = g.leading_monomials();
            for (a, la) in lms.iter().enumerate() {
                for (b, lb) in lms.iter().enumerate() {
                    prop_assert!(a == b || !la.divides(lb));
                }
                // tails are reduced
                for t in &g.basis()[a].terms()[1..] {
                    prop_assert!(lms.iter().all(|l| !l.divides(&t.mono)));
                }
            }
            // determinism
            let again = Ideal::new(&r, gens).unwrap().groebner(&GbOptions::default()).unwrap();
            prop_assert_eq!(g.basis(), again.basis());
        }

        #[test]
        fn normal_form_is_linear_and_idempotent(
            gens in proptest::collection::vec(arb_poly(small_ring()), 1..3),
            f in arb_poly(small_ring()),
            h in arb_poly(small_ring()),
        ) {
            let r = small_ring();
            let g = Ideal::new(&r, gens).unwrap().groebner(&GbOptions::default()).unwrap();
            let nf = |p: &Polynomial<PrimeField>| g.normal_form(p).unwrap();
            prop_assert_eq!(nf(&nf(&f)), nf(&f));
            prop_assert_eq!(nf(&(&f + &h)), nf(&(&nf(&f) + &nf(&h))));
            prop_assert!(g.contains(&(&f - &nf(&f))).unwrap());
        }
    }
}

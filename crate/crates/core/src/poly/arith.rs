use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Monomial, PolyRing, Polynomial, Term};
use crate::error::PolyError;
use crate::field::Field;

impl<F: Field> Polynomial<F> {
    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, None))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let minus_one = self.field().neg(&self.field().one());
        Ok(self.merge(other, Some((&minus_one, None))))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Power with a signed exponent; negative exponents are rejected.
    pub fn checked_pow(&self, e: i64) -> Result<Self, PolyError> {
        if e < 0 {
            return Err(PolyError::NegativePower(e));
        }
        Ok(self.pow(e as u64))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Polynomial::zero(self.ring());
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: field.mul(&t.coeff, c),
                mono: t.mono,
            })
            .collect();
        Polynomial::from_sorted_terms(self.ring(), terms)
    }

    /// `c * m * self`; multiplying by a monomial preserves term order.
    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Polynomial::zero(self.ring());
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: field.mul(&t.coeff, c),
                mono: t.mono.mul(m),
            })
            .collect();
        Polynomial::from_sorted_terms(self.ring(), terms)
    }

    /// `self - c * m * g`, merged in one pass.
    pub fn sub_mul_term(&self, c: &F::Elem, m: &Monomial, g: &Self) -> Self {
        if self.field().is_zero(c) {
            return self.clone();
        }
        let neg = self.field().neg(c);
        self.merge(g, Some((&neg, Some(m))))
    }

    /// `self + scale * mono * other` for sorted inputs (`None` scale means 1).
    fn merge(&self, other: &Self, factor: Option<(&F::Elem, Option<&Monomial>)>) -> Self {
        let ring = self.ring();
        let field = self.field();
        let (c, m) = match factor {
            Some((c, m)) => (Some(c), m),
            None => (None, None),
        };
        let map_term = |t: &Term<F::Elem>| -> Term<F::Elem> {
            Term {
                coeff: match c {
                    Some(c) => field.mul(&t.coeff, c),
                    None => t.coeff.clone(),
                },
                mono: match m {
                    Some(m) => t.mono.mul(m),
                    None => t.mono,
                },
            }
        };
        let mut out: Vec<Term<F::Elem>> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let a = &self.terms;
        let mut b = other.terms.iter().map(map_term).peekable();
        let mut i = 0;
        while i < a.len() {
            let Some(tb) = b.peek() else { break };
            match ring.cmp(&a[i].mono, &tb.mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => out.push(b.next().expect("peeked")),
                Ordering::Equal => {
                    let tb = b.next().expect("peeked");
                    let s = field.add(&a[i].coeff, &tb.coeff);
                    if !field.is_zero(&s) {
                        out.push(Term { coeff: s, mono: tb.mono });
                    }
                    i += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b);
        // a zero scale factor can never occur here, so every pushed term is nonzero
        Polynomial::from_sorted_terms(ring, out)
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.ring());
        }
        let field = self.field();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(self.len() * other.len());
        for ta in &self.terms {
            for tb in &other.terms {
                let c = field.mul(&ta.coeff, &tb.coeff);
                let m = ta.mono.mul(&tb.mono);
                acc.entry(m)
                    .and_modify(|v| *v = field.add(v, &c))
                    .or_insert(c);
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(mono, coeff)| Term { coeff, mono })
            .collect();
        Polynomial::from_terms(self.ring(), terms)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.ring());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Ring homomorphism sending variable `i` to `images[i]` (all in one target ring).
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Polynomial<F>, PolyError> {
        if images.len() != self.ring().nvars() {
            return Err(PolyError::ArityMismatch {
                expected: self.ring().nvars(),
                got: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.ring().clone(),
            None => {
                // zero-variable source ring: only constants
                return Err(PolyError::InvalidRing("substitution needs at least one variable".into()));
            }
        };
        if images.iter().any(|p| !(Arc::ptr_eq(p.ring(), &target) || **p.ring() == *target)) {
            return Err(PolyError::RingMismatch);
        }
        if self.field() != target.field() {
            return Err(PolyError::RingMismatch);
        }
        // cache powers of each image
        let mut powers: Vec<Vec<Polynomial<F>>> = images.iter().map(|p| vec![Polynomial::one(&target), p.clone()]).collect();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        let field = target.field();
        for t in &self.terms {
            let mut prod = Polynomial::constant(&target, t.coeff.clone());
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().expect("nonempty").mul_unchecked(&images[i]);
                    powers[i].push(next);
                }
                prod = prod.mul_unchecked(&powers[i][e]);
                if prod.is_zero() {
                    break;
                }
            }
            for term in prod.terms {
                acc.entry(term.mono)
                    .and_modify(|v| *v = field.add(v, &term.coeff))
                    .or_insert(term.coeff);
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(mono, coeff)| Term { coeff, mono })
            .collect();
        Ok(Polynomial::from_terms(&target, terms))
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.checked_add(rhs).expect("ring mismatch in add")
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.checked_sub(rhs).expect("ring mismatch in sub")
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.checked_mul(rhs).expect("ring mismatch in mul")
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        let field = self.field();
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: field.neg(&t.coeff),
                mono: t.mono,
            })
            .collect();
        Polynomial::from_sorted_terms(self.ring(), terms)
    }
}

impl<F: Field> PolyRing<F> {
    /// All monomials of (weighted) degree `d`, descending in the ring order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        fn rec(i: usize, left: u32, w: &[u32], exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == exps.len() {
                if left == 0 {
                    out.push(Monomial::from_exponents(exps));
                }
                return;
            }
            let mut e = 0;
            while e * w[i] <= left {
                exps[i] = e;
                rec(i + 1, left - e * w[i], w, exps, out);
                e += 1;
            }
            exps[i] = 0;
        }
        rec(0, d, &self.weights, &mut exps, &mut out);
        out.sort_by(|a, b| self.cmp(b, a));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::{parse_polynomial, MonomialOrder};
    use proptest::prelude::*;

    fn ring_q(vars: &[&str]) -> Arc<PolyRing<Rationals>> {
        PolyRing::new(vars, Rationals, MonomialOrder::Grevlex).unwrap()
    }

    fn p(s: &str, r: &Arc<PolyRing<Rationals>>) -> Polynomial<Rationals> {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn add_inverse_is_zero() {
        let r = ring_q(&["x", "y"]);
        let x = Polynomial::var(&r, 0);
        assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn product_of_coordinates() {
        let r = ring_q(&["x", "y", "z", "t", "u", "v"]);
        assert_eq!(&p("u", &r) * &p("y", &r), p("u*y", &r));
        assert_eq!((&p("u", &r) * &p("y", &r)).to_string(), "y*u");
    }

    #[test]
    fn freshmans_dream_in_f3() {
        let f3 = PrimeField::new(3).unwrap();
        let r = PolyRing::new(&["x"], f3, MonomialOrder::Grevlex).unwrap();
        let x1 = parse_polynomial("x + 1", &r).unwrap();
        assert_eq!(x1.pow(3), parse_polynomial("x^3 + 1", &r).unwrap());
    }

    #[test]
    fn ring_mismatch_and_negative_power_are_errors() {
        let r1 = ring_q(&["x"]);
        let r2 = ring_q(&["y"]);
        let x = Polynomial::var(&r1, 0);
        let y = Polynomial::var(&r2, 0);
        assert_eq!(x.checked_add(&y), Err(PolyError::RingMismatch));
        assert_eq!(x.checked_pow(-1), Err(PolyError::NegativePower(-1)));
    }

    #[test]
    fn homogeneous_product_degree() {
        let r = ring_q(&["x", "y", "z"]);
        let a = p("x^2 - y*z", &r);
        let b = p("x + y + z", &r);
        let c = &a * &b;
        assert!(c.is_homogeneous());
        assert_eq!(c.degree(), Some(3));
    }

    #[test]
    fn substitution_example_expands_exactly() {
        // f = a*F - b*E with a -> u*y, F -> y^2 - x*z, b -> v*y, E -> u*x
        let src = ring_q(&["a", "F", "b", "E"]);
        let tgt = ring_q(&["x", "y", "z", "t", "u", "v"]);
        let f = p("a*F - b*E", &src);
        let imgs = ["u*y", "y^2 - x*z", "v*y", "u*x"].map(|s| p(s, &tgt));
        let got = f.substitute(&imgs).unwrap();
        // second expansion path: multiply the images directly
        let direct = &(&imgs[0] * &imgs[1]) - &(&imgs[2] * &imgs[3]);
        assert_eq!(got, direct);
        assert_eq!(got, p("u*y^3 - u*x*y*z - u*v*x*y", &tgt));
    }

    #[test]
    fn identity_and_zero_substitution() {
        let r = ring_q(&["x", "y", "z"]);
        let f = p("x^2*y - 3*z^3 + x*y*z", &r);
        let id: Vec<_> = (0..3).map(|i| Polynomial::var(&r, i)).collect();
        assert_eq!(f.substitute(&id).unwrap(), f);
        let zeros = vec![Polynomial::zero(&r); 3];
        assert!(f.substitute(&zeros).unwrap().is_zero());
        assert!(matches!(f.substitute(&id[..2]), Err(PolyError::ArityMismatch { .. })));
    }

    #[test]
    fn monomials_of_degree_counts() {
        let r = ring_q(&["a", "b", "c", "d", "e", "f"]);
        assert_eq!(r.monomials_of_degree(2).len(), 21);
        assert_eq!(r.monomials_of_degree(4).len(), 126);
    }

    fn arb_poly(r: Arc<PolyRing<Rationals>>) -> impl Strategy<Value = Polynomial<Rationals>> {
        let n = r.nvars();
        proptest::collection::vec((-5i64..5, proptest::collection::vec(0u32..3, n)), 0..6).prop_map(
            move |ts| {
                let terms = ts
                    .into_iter()
                    .map(|(c, e)| Term {
                        coeff: Rationals.from_i64(c),
                        mono: Monomial::from_exponents(&e),
                    })
                    .collect();
                Polynomial::from_terms(&r, terms)
            },
        )
    }

    proptest! {
        #[test]
        fn canonical_form_is_idempotent(f in arb_poly(ring_q(&["x", "y", "z"]))) {
            prop_assert!(f.is_canonical());
            let again = Polynomial::from_terms(f.ring(), f.terms().to_vec());
            prop_assert_eq!(again, f);
        }

        #[test]
        fn substitute_is_a_ring_homomorphism(
            f in arb_poly(ring_q(&["x", "y", "z"])),
            g in arb_poly(ring_q(&["x", "y", "z"])),
            imgs in proptest::collection::vec(arb_poly(ring_q(&["s", "t"])), 3),
        ) {
            let fg = &f * &g;
            let lhs = fg.substitute(&imgs).unwrap();
            let rhs = &f.substitute(&imgs).unwrap() * &g.substitute(&imgs).unwrap();
            prop_assert_eq!(lhs, rhs);
            let sum = (&f + &g).substitute(&imgs).unwrap();
            prop_assert_eq!(sum, &f.substitute(&imgs).unwrap() + &g.substitute(&imgs).unwrap());
        }

        #[test]
        fn sub_mul_term_matches_naive(
            f in arb_poly(ring_q(&["x", "y"])),
            g in arb_poly(ring_q(&["x", "y"])),
            c in -4i64..4, e in proptest::collection::vec(0u32..3, 2),
        ) {
            let m = Monomial::from_exponents(&e);
            let c = Rationals.from_i64(c);
            let naive = &f - &(&Polynomial::monomial(f.ring(), c.clone(), m) * &g);
            prop_assert_eq!(f.sub_mul_term(&c, &m, &g), naive);
        }
    }
}

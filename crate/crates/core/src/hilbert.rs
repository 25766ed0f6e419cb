//! Hilbert series and Hilbert polynomials of standard graded quotients.
//!
//! The series of `S/I` only depends on the leading-term ideal, so everything
//! here works with monomial ideals. The numerator `N(s)` of
//! `HS(s) = N(s) / (1 - s)^n` comes from the pivot recursion
//! `N(I) = N(I + (p)) + s^deg(p) N(I : p)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::field::Field;
use crate::groebner::{GbOptions, GroebnerBasis, GroebnerError, Ideal};
use crate::poly::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("Hilbert data needs a homogeneous ideal")]
    NotHomogeneous,
    #[error("Hilbert data is only implemented for the standard grading")]
    WeightedGrading,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// Dimension, degree and Hilbert polynomial of a projective scheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    /// Projective dimension; `-1` for the empty scheme.
    pub dim: i64,
    /// `None` when the scheme is empty.
    pub degree: Option<u64>,
    /// Coefficients `c_0, c_1, ...` of the Hilbert polynomial in `t`.
    #[serde(serialize_with = "rationals_as_strings")]
    pub hp: Vec<BigRational>,
    /// `N(s)` with `HS(s) = N(s) / (1 - s)^nvars`.
    pub series_numerator: Vec<i128>,
    /// `h(s) = N(s) / (1 - s)^codim`.
    pub h_vector: Vec<i128>,
    #[serde(skip)]
    nvars: usize,
}

fn rationals_as_strings<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|q| q.to_string()))
}

impl HilbertData {
    pub fn from_numerator(mut numerator: Vec<i128>, nvars: usize) -> Self {
        trim(&mut numerator);
        let series_numerator = numerator.clone();
        let mut h = numerator;
        let mut divisions = 0usize;
        while !h.is_empty() && h.iter().sum::<i128>() == 0 {
            h = divide_one_minus_s(&h);
            divisions += 1;
        }
        let krull = nvars as i64 - divisions as i64;
        if h.is_empty() || krull <= 0 {
            return HilbertData {
                dim: -1,
                degree: None,
                hp: Vec::new(),
                series_numerator,
                h_vector: h,
                nvars,
            };
        }
        let degree = h.iter().sum::<i128>();
        let hp = hilbert_polynomial(&h, krull as usize);
        HilbertData {
            dim: krull - 1,
            degree: Some(u64::try_from(degree).expect("positive degree")),
            hp,
            series_numerator,
            h_vector: h,
            nvars,
        }
    }

    /// `dim_K (S/I)_d`.
    pub fn hilbert_function(&self, d: u64) -> BigInt {
        let n = self.nvars as u64;
        self.series_numerator
            .iter()
            .enumerate()
            .filter(|(i, _)| (*i as u64) <= d)
            .map(|(i, &c)| {
                // coefficient of s^(d-i) in 1/(1-s)^n
                BigInt::from(c) * binomial(d - i as u64 + n - 1, n.saturating_sub(1))
            })
            .sum()
    }

    /// Hilbert polynomial evaluated at `t`.
    pub fn hilbert_polynomial_at(&self, t: i64) -> BigRational {
        let t = BigRational::from_integer(t.into());
        let mut acc = BigRational::zero();
        for c in self.hp.iter().rev() {
            acc = acc * &t + c;
        }
        acc
    }

    /// Hilbert polynomial as text in `t`, highest power first.
    pub fn hp_string(&self) -> String {
        if self.hp.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.hp.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            let coeff = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                String::new()
            } else if *c == -BigRational::one() {
                "-".into()
            } else {
                format!("{c}*")
            };
            parts.push(format!("{coeff}{mono}"));
        }
        parts.join(" + ").replace("+ -", "- ")
    }

    /// Same dimension, degree and Hilbert polynomial.
    pub fn same_polynomial(&self, other: &HilbertData) -> bool {
        self.dim == other.dim && self.degree == other.degree && self.hp == other.hp
    }
}

fn trim(v: &mut Vec<i128>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn divide_one_minus_s(h: &[i128]) -> Vec<i128> {
    // h = (1 - s) q  =>  q_k = h_0 + ... + h_k
    let mut q = Vec::with_capacity(h.len().saturating_sub(1));
    let mut acc = 0i128;
    for &c in &h[..h.len() - 1] {
        acc += c;
        q.push(acc);
    }
    trim(&mut q);
    q
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// `sum_i h_i * binom(t - i + D - 1, D - 1)` expanded in powers of `t`.
fn hilbert_polynomial(h: &[i128], krull: usize) -> Vec<BigRational> {
    let mut total = vec![BigRational::zero(); krull];
    for (i, &hi) in h.iter().enumerate() {
        if hi == 0 {
            continue;
        }
        // binom(t + a, D - 1) = prod_{k=1}^{D-1} (t + a - k + 1) / k with a = D - 1 - i
        let a = krull as i64 - 1 - i as i64;
        let mut poly = vec![BigRational::one()];
        for k in 1..krull as i64 {
            let shift = BigRational::new((a - k + 1).into(), k.into());
            let inv_k = BigRational::new(1.into(), k.into());
            let mut next = vec![BigRational::zero(); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                next[d] += c * &shift;
                next[d + 1] += c * &inv_k;
            }
            poly = next;
        }
        for (d, c) in poly.into_iter().enumerate() {
            total[d] += c * BigRational::from_integer(hi.into());
        }
    }
    while total.last().is_some_and(|c| c.is_zero()) {
        total.pop();
    }
    total
}

/// Numerator `N(s)` of the Hilbert series of `S / (gens)` for a standard graded `S`.
pub fn hilbert_numerator(gens: &[Monomial]) -> Vec<i128> {
    let mut memo = HashMap::new();
    let mut v = minimalize(gens.to_vec());
    v.sort_by(|a, b| a.exponents().cmp(b.exponents()));
    numerator(v, &mut memo)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|o| o.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn mul_poly(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_shifted(a: &mut Vec<i128>, b: &[i128], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, y) in b.iter().enumerate() {
        a[i + shift] += y;
    }
}

/// `gens` is minimal and sorted.
fn numerator(gens: Vec<Monomial>, memo: &mut HashMap<Vec<Monomial>, Vec<i128>>) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    if let Some(v) = memo.get(&gens) {
        return v.clone();
    }
    let nvars = gens[0].nvars();
    // occurrence counts per variable
    let mut count = vec![0usize; nvars];
    for g in &gens {
        for (i, &e) in g.exponents().iter().enumerate() {
            if e > 0 {
                count[i] += 1;
            }
        }
    }
    let result = match (0..nvars).filter(|&i| count[i] >= 2).max_by_key(|&i| (count[i], std::cmp::Reverse(i))) {
        None => {
            // pairwise coprime: N = prod (1 - s^deg g)
            let mut acc = vec![1i128];
            for g in &gens {
                let mut f = vec![0i128; g.degree() as usize + 1];
                f[0] = 1;
                f[g.degree() as usize] -= 1;
                acc = mul_poly(&acc, &f);
            }
            acc
        }
        Some(x) => {
            let e = gens
                .iter()
                .map(|g| g.exponent(x))
                .filter(|&e| e > 0)
                .min()
                .expect("variable occurs");
            let pivot = Monomial::one(nvars).with_exponent(x, e);
            let mut plus = gens.clone();
            plus.push(pivot);
            let mut plus = minimalize(plus);
            plus.sort_by(|a, b| a.exponents().cmp(b.exponents()));
            let mut colon = minimalize(gens.iter().map(|g| g.colon(&pivot)).collect());
            colon.sort_by(|a, b| a.exponents().cmp(b.exponents()));
            let mut n = numerator(plus, memo);
            let c = numerator(colon, memo);
            add_shifted(&mut n, &c, e as usize);
            trim(&mut n);
            n
        }
    };
    memo.insert(gens, result.clone());
    result
}

/// Hilbert data from the leading monomials of a reduced basis.
pub fn hilbert_data_of_basis<F: Field>(gb: &GroebnerBasis<F>) -> Result<HilbertData, HilbertError> {
    let ring = gb.ring();
    if !ring.is_standard_graded() {
        return Err(HilbertError::WeightedGrading);
    }
    if !gb.basis().iter().all(|g| g.is_homogeneous()) {
        return Err(HilbertError::NotHomogeneous);
    }
    let lms = gb.leading_monomials();
    Ok(HilbertData::from_numerator(hilbert_numerator(&lms), ring.nvars()))
}

/// Hilbert data of `S / I`.
pub fn hilbert_data<F: Field>(ideal: &Ideal<F>, opts: &GbOptions) -> Result<HilbertData, HilbertError> {
    if !ideal.is_homogeneous() {
        return Err(HilbertError::NotHomogeneous);
    }
    if !ideal.ring().is_standard_graded() {
        return Err(HilbertError::WeightedGrading);
    }
    hilbert_data_of_basis(&ideal.groebner(opts)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::{MonomialOrder, PolyRing};
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn data(vars: &[&str], gens: &[&str]) -> HilbertData {
        let r = PolyRing::new(vars, Rationals, MonomialOrder::Grevlex).unwrap();
        hilbert_data(&Ideal::parse(&r, gens).unwrap(), &GbOptions::default()).unwrap()
    }

    #[test]
    fn twisted_cubic() {
        let h = data(&["x", "y", "z", "t"], &["x^2 - y*t", "x*y - z*t", "y^2 - x*z"]);
        assert_eq!(h.dim, 1);
        assert_eq!(h.degree, Some(3));
        assert_eq!(h.hp, vec![q(1), q(3)]);
        assert_eq!(h.hp_string(), "3*t + 1");
    }

    #[test]
    fn projective_space_and_empty() {
        let h = data(&["x", "y", "z"], &[]);
        assert_eq!((h.dim, h.degree), (2, Some(1)));
        assert_eq!(h.hp, vec![q(1), BigRational::new(3.into(), 2.into()), BigRational::new(1.into(), 2.into())]);
        let e = data(&["x", "y"], &["x", "y"]);
        assert_eq!((e.dim, e.degree), (-1, None));
        let u = data(&["x", "y"], &["1"]);
        assert_eq!((u.dim, u.degree), (-1, None));
        let pts = data(&["x", "y"], &["x*y*(x - y)"]);
        assert_eq!((pts.dim, pts.degree), (0, Some(3)));
        assert_eq!(pts.hp, vec![q(3)]);
    }

    #[test]
    fn hypersurface_degree() {
        let h = data(&["a", "b", "c", "d"], &["a^4 + b^4 + c^4 + d^4"]);
        assert_eq!((h.dim, h.degree), (2, Some(4)));
        // K3 quartic: HP = 2t^2 + 2
        assert_eq!(h.hp, vec![q(2), q(0), q(2)]);
    }

    fn brute_force(gens: &[Monomial], nvars: usize, d: u32) -> u64 {
        fn rec(i: usize, left: u32, exps: &mut Vec<u32>, gens: &[Monomial], count: &mut u64) {
            if i + 1 == exps.len() {
                exps[i] = left;
                let m = Monomial::from_exponents(exps);
                if !gens.iter().any(|g| g.divides(&m)) {
                    *count += 1;
                }
                return;
            }
            for e in 0..=left {
                exps[i] = e;
                rec(i + 1, left - e, exps, gens, count);
            }
        }
        let mut count = 0;
        rec(0, d, &mut vec![0; nvars], gens, &mut count);
        count
    }

    proptest! {
        #[test]
        fn series_matches_graded_ranks(
            raw in proptest::collection::vec(proptest::collection::vec(0u32..3, 4), 1..6)
        ) {
            let gens: Vec<Monomial> = raw.iter().map(|e| Monomial::from_exponents(e)).collect();
            let h = HilbertData::from_numerator(hilbert_numerator(&gens), 4);
            for d in 0..=8u32 {
                prop_assert_eq!(h.hilbert_function(d as u64), BigInt::from(brute_force(&gens, 4, d)));
            }
            if h.dim >= 0 {
                // the polynomial agrees with the function in large degree
                prop_assert_eq!(
                    h.hilbert_polynomial_at(20),
                    BigRational::from_integer(h.hilbert_function(20))
                );
                let lead = h.hp.last().unwrap().clone();
                let fact: i64 = (1..=h.dim).product();
                prop_assert_eq!(lead * q(fact), q(h.degree.unwrap() as i64));
            }
        }
    }
}

//! Exterior algebra of a 7-dimensional space `V` with basis `e1..e7`.
//!
//! A basis element `e_I` of `Λ^k V` is keyed by the bitmask of `I` (bit `i-1`
//! for `e_i`). Coefficients live in any [`Scalars`] context: a field, the
//! integers, or a polynomial ring for symbolic computations.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use rand::Rng;
use thiserror::Error;

use crate::error::PolyError;
use crate::field::{Field, PrimeField};
use crate::groebner::Ideal;
use crate::linalg::{kernel, rank, Matrix};
use crate::poly::{MonomialOrder, PolyRing, Polynomial};

pub const DIM: usize = 7;
const FULL: u8 = (1 << DIM) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("grade {0} exceeds 7")]
    GradeOverflow(usize),
    #[error("decomposability test is not implemented for grade {0}")]
    UnsupportedGrade(usize),
    #[error("index list {0:?} is not a strictly increasing subset of 1..=7")]
    BadIndices(Vec<usize>),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A commutative coefficient ring given by a runtime context.
pub trait Scalars {
    type Elem: Clone + PartialEq + fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

impl<F: Field> Scalars for F {
    type Elem = F::Elem;
    fn zero(&self) -> F::Elem {
        Field::zero(self)
    }
    fn is_zero(&self, a: &F::Elem) -> bool {
        Field::is_zero(self, a)
    }
    fn add(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        Field::add(self, a, b)
    }
    fn neg(&self, a: &F::Elem) -> F::Elem {
        Field::neg(self, a)
    }
    fn mul(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        Field::mul(self, a, b)
    }
}

/// Machine integers with overflow checks.
#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

impl Scalars for Integers {
    type Elem = i64;
    fn zero(&self) -> i64 {
        0
    }
    fn is_zero(&self, a: &i64) -> bool {
        *a == 0
    }
    fn add(&self, a: &i64, b: &i64) -> i64 {
        a.checked_add(*b).expect("integer overflow")
    }
    fn neg(&self, a: &i64) -> i64 {
        -a
    }
    fn mul(&self, a: &i64, b: &i64) -> i64 {
        a.checked_mul(*b).expect("integer overflow")
    }
}

/// Polynomials over a fixed ring, for symbolic coefficients.
#[derive(Clone, Debug)]
pub struct PolyScalars<F: Field>(pub Arc<PolyRing<F>>);

impl<F: Field> Scalars for PolyScalars<F> {
    type Elem = Polynomial<F>;
    fn zero(&self) -> Polynomial<F> {
        Polynomial::zero(&self.0)
    }
    fn is_zero(&self, a: &Polynomial<F>) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        a + b
    }
    fn neg(&self, a: &Polynomial<F>) -> Polynomial<F> {
        -a
    }
    fn mul(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        a * b
    }
}

/// A homogeneous element of `Λ^k V`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiVector<E> {
    grade: usize,
    coeffs: BTreeMap<u8, E>,
}

/// Sign of `e_a ∧ e_b` relative to `e_{a ∪ b}`, or `None` if the index sets meet.
fn wedge_sign(a: u8, b: u8) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    for j in 0..DIM {
        if b & (1 << j) != 0 {
            inversions += (a >> (j + 1)).count_ones();
        }
    }
    Some(inversions % 2 == 1)
}

fn mask_of(indices: &[usize]) -> Result<u8, ExteriorError> {
    let ok = indices.windows(2).all(|w| w[0] < w[1]) && indices.iter().all(|&i| (1..=DIM).contains(&i));
    if !ok {
        return Err(ExteriorError::BadIndices(indices.to_vec()));
    }
    Ok(indices.iter().fold(0u8, |m, &i| m | (1 << (i - 1))))
}

fn indices_of(mask: u8) -> Vec<usize> {
    (0..DIM).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()
}

/// The `C(7, k)` masks of grade `k`, in lexicographic order of their index lists.
pub fn basis_masks(k: usize) -> Vec<u8> {
    let mut v: Vec<u8> = (0..=FULL).filter(|m| m.count_ones() as usize == k).collect();
    v.sort_by_key(|&m| indices_of(m));
    v
}

impl<E: Clone + PartialEq + fmt::Debug> MultiVector<E> {
    pub fn zero(grade: usize) -> Self {
        assert!(grade <= DIM);
        MultiVector {
            grade,
            coeffs: BTreeMap::new(),
        }
    }

    /// `Σ c · e_I` from (1-based strictly increasing index list, coefficient) pairs.
    pub fn from_terms<S: Scalars<Elem = E>>(s: &S, grade: usize, terms: Vec<(Vec<usize>, E)>) -> Result<Self, ExteriorError> {
        if grade > DIM {
            return Err(ExteriorError::GradeOverflow(grade));
        }
        let mut mv = MultiVector::zero(grade);
        for (idx, c) in terms {
            if idx.len() != grade {
                return Err(ExteriorError::BadIndices(idx));
            }
            let m = mask_of(&idx)?;
            mv.accumulate(s, m, c);
        }
        Ok(mv)
    }

    /// A vector `Σ c_i e_i`.
    pub fn vector<S: Scalars<Elem = E>>(s: &S, coords: &[E]) -> Self {
        assert_eq!(coords.len(), DIM);
        let mut mv = MultiVector::zero(1);
        for (i, c) in coords.iter().enumerate() {
            mv.accumulate(s, 1 << i, c.clone());
        }
        mv
    }

    fn accumulate<S: Scalars<Elem = E>>(&mut self, s: &S, mask: u8, c: E) {
        if s.is_zero(&c) {
            return;
        }
        match self.coeffs.remove(&mask) {
            Some(old) => {
                let sum = s.add(&old, &c);
                if !s.is_zero(&sum) {
                    self.coeffs.insert(mask, sum);
                }
            }
            None => {
                self.coeffs.insert(mask, c);
            }
        }
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero components as (1-based index list, coefficient).
    pub fn components(&self) -> Vec<(Vec<usize>, &E)> {
        let mut v: Vec<(Vec<usize>, &E)> = self.coeffs.iter().map(|(&m, c)| (indices_of(m), c)).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    pub fn coefficient(&self, indices: &[usize]) -> Option<&E> {
        mask_of(indices).ok().and_then(|m| self.coeffs.get(&m))
    }

    pub fn add<S: Scalars<Elem = E>>(&self, other: &Self, s: &S) -> Self {
        assert_eq!(self.grade, other.grade, "adding multivectors of different grades");
        let mut out = self.clone();
        for (&m, c) in &other.coeffs {
            out.accumulate(s, m, c.clone());
        }
        out
    }

    pub fn scale<S: Scalars<Elem = E>>(&self, c: &E, s: &S) -> Self {
        let mut out = MultiVector::zero(self.grade);
        for (&m, x) in &self.coeffs {
            out.accumulate(s, m, s.mul(c, x));
        }
        out
    }

    pub fn wedge<S: Scalars<Elem = E>>(&self, other: &Self, s: &S) -> Result<Self, ExteriorError> {
        let grade = self.grade + other.grade;
        if grade > DIM {
            return Err(ExteriorError::GradeOverflow(grade));
        }
        let mut out = MultiVector::zero(grade);
        for (&a, x) in &self.coeffs {
            for (&b, y) in &other.coeffs {
                if let Some(negative) = wedge_sign(a, b) {
                    let p = s.mul(x, y);
                    out.accumulate(s, a | b, if negative { s.neg(&p) } else { p });
                }
            }
        }
        Ok(out)
    }

    /// `*e_I = sign(I, I^c) e_{I^c}`, where the sign is that of `e_I ∧ e_{I^c}`
    /// against `e_1 ∧ ... ∧ e_7`. In odd dimension this makes `**` the identity.
    pub fn hodge_dual<S: Scalars<Elem = E>>(&self, s: &S) -> Self {
        let mut out = MultiVector::zero(DIM - self.grade);
        for (&a, x) in &self.coeffs {
            let c = FULL & !a;
            let negative = wedge_sign(a, c).expect("disjoint");
            out.accumulate(s, c, if negative { s.neg(x) } else { x.clone() });
        }
        out
    }

    /// Whether the form is a wedge of vectors. Exact for grades 0, 1, 2, 5, 6, 7.
    pub fn is_decomposable<S: Scalars<Elem = E>>(&self, s: &S) -> Result<bool, ExteriorError> {
        match self.grade {
            0 | 1 | 6 | 7 => Ok(true),
            2 => Ok(self.wedge(self, s)?.is_zero()),
            5 => {
                let w = self.hodge_dual(s);
                Ok(w.wedge(&w, s)?.is_zero())
            }
            k => Err(ExteriorError::UnsupportedGrade(k)),
        }
    }

    pub fn map<T: Clone + PartialEq + fmt::Debug, S: Scalars<Elem = T>>(&self, s: &S, mut f: impl FnMut(&E) -> T) -> MultiVector<T> {
        let mut out = MultiVector::zero(self.grade);
        for (&m, x) in &self.coeffs {
            out.accumulate(s, m, f(x));
        }
        out
    }

    /// Image under the linear map sending `e_j` to the `j`-th column of `g`.
    pub fn transform<S: Scalars<Elem = E>>(&self, g: &[Vec<E>], s: &S) -> Self {
        let images: Vec<MultiVector<E>> = (0..DIM)
            .map(|j| MultiVector::vector(s, &(0..DIM).map(|i| g[i][j].clone()).collect::<Vec<_>>()))
            .collect();
        let mut out = MultiVector::zero(self.grade);
        for (&m, x) in &self.coeffs {
            let mut acc: Option<MultiVector<E>> = None;
            for i in indices_of(m) {
                acc = Some(match acc {
                    None => images[i - 1].clone(),
                    Some(a) => a.wedge(&images[i - 1], s).expect("grade fits"),
                });
            }
            let term = acc.expect("positive grade").scale(x, s);
            out = out.add(&term, s);
        }
        out
    }

    /// Text form, one component per line: `k: i1 ... ik : coefficient`.
    pub fn to_lines(&self, fmt_coeff: impl Fn(&E) -> String) -> String {
        self.components()
            .into_iter()
            .map(|(idx, c)| {
                let idx: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                format!("{}: {} : {}\n", self.grade, idx.join(" "), fmt_coeff(c))
            })
            .collect()
    }
}

fn four_form(terms: &[([usize; 4], i64)]) -> MultiVector<i64> {
    MultiVector::from_terms(&Integers, 4, terms.iter().map(|(i, c)| (i.to_vec(), *c)).collect()).expect("valid indices")
}

/// `ω = x1237 + x4567 + x2356 + x1346 + x1245`.
pub fn omega() -> MultiVector<i64> {
    four_form(&[([1, 2, 3, 7], 1), ([4, 5, 6, 7], 1), ([2, 3, 5, 6], 1), ([1, 3, 4, 6], 1), ([1, 2, 4, 5], 1)])
}

/// `ω₀ = x1237 + x4567 + x2356 + x1346`.
pub fn omega0() -> MultiVector<i64> {
    four_form(&[([1, 2, 3, 7], 1), ([4, 5, 6, 7], 1), ([2, 3, 5, 6], 1), ([1, 3, 4, 6], 1)])
}

/// `ω₁ = x1237 + x2356 + x1346`.
pub fn omega1() -> MultiVector<i64> {
    four_form(&[([1, 2, 3, 7], 1), ([2, 3, 5, 6], 1), ([1, 3, 4, 6], 1)])
}

/// `ω_t = ω₀ + t · x1245`.
pub fn omega_t(t: i64) -> MultiVector<i64> {
    omega0().add(&four_form(&[([1, 2, 4, 5], t)]), &Integers)
}

pub fn to_field<F: Field>(field: &F, form: &MultiVector<i64>) -> MultiVector<F::Elem> {
    form.map(field, |&c| field.from_i64(c))
}

/// The 21 index pairs `(i, j)`, `i < j`, in lexicographic order: the Plücker coordinates `p_ij`.
pub fn plucker_pairs() -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 1..=DIM {
        for j in i + 1..=DIM {
            v.push((i, j));
        }
    }
    v
}

/// Coefficient matrix (7 × 21) of `p ∧ ω ∈ Λ^6 V` in the Plücker coordinates.
///
/// Row `r` is the component on the 6-subset missing `e_{r+1}`.
pub fn isotropy_matrix<F: Field>(field: &F, omega: &MultiVector<F::Elem>) -> Result<Matrix<F::Elem>, ExteriorError> {
    if omega.grade() != 4 {
        return Err(ExteriorError::BadIndices(vec![omega.grade()]));
    }
    let pairs = plucker_pairs();
    let mut m = vec![vec![Field::zero(field); pairs.len()]; DIM];
    for (col, &(i, j)) in pairs.iter().enumerate() {
        let e = MultiVector::from_terms(field, 2, vec![(vec![i, j], Field::one(field))])?;
        let six = e.wedge(omega, field)?;
        for (&mask, c) in &six.coeffs {
            let missing = (FULL & !mask).trailing_zeros() as usize;
            m[missing][col] = c.clone();
        }
    }
    Ok(m)
}

/// The isotropic variety `{[p] ∈ G(2,7) : p ∧ ω = 0}` in coordinates on its linear span.
#[derive(Clone, Debug)]
pub struct IsotropicVariety<F: Field> {
    /// Ideal in `z1..zm`, where `p = Σ z_k K_k`.
    pub ideal: Ideal<F>,
    /// Kernel basis `K_k ∈ F^21` (indexed by [`plucker_pairs`]); rows of a fixed echelon form.
    pub kernel_basis: Vec<Vec<F::Elem>>,
    pub rank: usize,
}

/// The Plücker relation of `e_{ijkl}` in `p ∧ p = 0`, divided by 2: `p_ij p_kl − p_ik p_jl + p_il p_jk`.
fn plucker_quadric<E: Clone + PartialEq + fmt::Debug, S: Scalars<Elem = E>>(s: &S, p: &dyn Fn(usize, usize) -> E, q: [usize; 4]) -> E {
    let [i, j, k, l] = q;
    let a = s.mul(&p(i, j), &p(k, l));
    let b = s.mul(&p(i, k), &p(j, l));
    let c = s.mul(&p(i, l), &p(j, k));
    s.add(&s.add(&a, &s.neg(&b)), &c)
}

pub fn four_subsets() -> Vec<[usize; 4]> {
    basis_masks(4)
        .into_iter()
        .map(|m| {
            let v = indices_of(m);
            [v[0], v[1], v[2], v[3]]
        })
        .collect()
}

pub fn isotropic_variety_ideal<F: Field>(field: &F, omega: &MultiVector<F::Elem>) -> Result<IsotropicVariety<F>, ExteriorError> {
    let m = isotropy_matrix(field, omega)?;
    let r = rank(field, &m);
    let basis = kernel(field, &m, 21);
    let names: Vec<String> = (1..=basis.len()).map(|k| format!("z{k}")).collect();
    let ring = PolyRing::new(&names, field.clone(), MonomialOrder::Grevlex)?;
    let pairs = plucker_pairs();
    let z: Vec<Polynomial<F>> = (0..basis.len()).map(|k| Polynomial::var(&ring, k)).collect();
    let coords: Vec<Polynomial<F>> = (0..pairs.len())
        .map(|col| {
            let mut acc = Polynomial::zero(&ring);
            for (k, v) in basis.iter().enumerate() {
                if !Field::is_zero(field, &v[col]) {
                    acc = &acc + &z[k].scale(&v[col]);
                }
            }
            acc
        })
        .collect();
    let p = |i: usize, j: usize| coords[pairs.iter().position(|&q| q == (i, j)).expect("pair")].clone();
    let ps = PolyScalars(ring.clone());
    let gens: Vec<Polynomial<F>> = four_subsets().into_iter().map(|q| plucker_quadric(&ps, &p, q)).collect();
    Ok(IsotropicVariety {
        ideal: Ideal::new(&ring, gens)?,
        kernel_basis: basis,
        rank: r,
    })
}

/// The quadrics in `v1..v7` cutting out `{[v] : v ∧ ω decomposable}`.
pub fn threespace_conic<F: Field>(field: &F, omega: &MultiVector<F::Elem>) -> Result<Ideal<F>, ExteriorError> {
    if omega.grade() != 4 {
        return Err(ExteriorError::BadIndices(vec![omega.grade()]));
    }
    let names: Vec<String> = (1..=DIM).map(|k| format!("v{k}")).collect();
    let ring = PolyRing::new(&names, field.clone(), MonomialOrder::Grevlex)?;
    let ps = PolyScalars(ring.clone());
    let v = MultiVector::vector(&ps, &(0..DIM).map(|i| Polynomial::var(&ring, i)).collect::<Vec<_>>());
    let om = omega.map(&ps, |c| Polynomial::constant(&ring, c.clone()));
    let w = v.wedge(&om, &ps)?.hodge_dual(&ps);
    let sq = w.wedge(&w, &ps)?;
    let gens = sq.coeffs.into_values().collect();
    Ok(Ideal::new(&ring, gens)?)
}

/// The 7 × 7 matrix of `u ↦ v ∧ u ∧ ω` into `Λ^6 V`.
pub fn plane_map<F: Field>(field: &F, omega: &MultiVector<F::Elem>, v: &[F::Elem]) -> Matrix<F::Elem> {
    let vv = MultiVector::vector(field, v);
    let vo = vv.wedge(omega, field).expect("grade 5");
    let mut m = vec![vec![Field::zero(field); DIM]; DIM];
    for j in 0..DIM {
        let e = MultiVector::from_terms(field, 1, vec![(vec![j + 1], Field::one(field))]).expect("basis vector");
        let six = e.wedge(&vo, field).expect("grade 6");
        for (&mask, c) in &six.coeffs {
            let missing = (FULL & !mask).trailing_zeros() as usize;
            m[missing][j] = c.clone();
        }
    }
    m
}

/// `φ(i, j, k)`: coefficient of the volume form in `e_i ∧ e_j ∧ e_k ∧ ω` (0-based indices).
fn contraction_form<F: Field>(field: &F, omega: &MultiVector<F::Elem>) -> Vec<F::Elem> {
    let mut phi = vec![Field::zero(field); DIM * DIM * DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                let m = (1u8 << i) | (1 << j) | (1 << k);
                if m.count_ones() != 3 {
                    continue;
                }
                let mut sign = false;
                let mut acc = 0u8;
                for x in [i, j, k] {
                    sign ^= wedge_sign(acc, 1 << x).expect("distinct");
                    acc |= 1 << x;
                }
                if let Some(c) = omega.coeffs.get(&(FULL & !m)) {
                    let total = sign ^ wedge_sign(m, FULL & !m).expect("disjoint");
                    phi[(i * DIM + j) * DIM + k] = if total { Field::neg(field, c) } else { c.clone() };
                }
            }
        }
    }
    phi
}

/// The skew form `(w, u) ↦ w ∧ v ∧ u ∧ ω`; its kernel is `{u : v ∧ u ∧ ω = 0}`.
fn contraction_matrix<F: Field>(field: &F, phi: &[F::Elem], v: &[F::Elem]) -> Matrix<F::Elem> {
    let mut m = vec![vec![Field::zero(field); DIM]; DIM];
    for j in 0..DIM {
        for k in 0..DIM {
            let mut acc = Field::zero(field);
            for (i, vi) in v.iter().enumerate() {
                let c = &phi[(j * DIM + i) * DIM + k];
                if !Field::is_zero(field, c) && !Field::is_zero(field, vi) {
                    acc = Field::add(field, &acc, &Field::mul(field, c, vi));
                }
            }
            m[j][k] = acc;
        }
    }
    m
}

/// A random isotropic 2-plane `v1 ∧ v2` with `v1 ∧ v2 ∧ ω = 0`.
///
/// The form `(w, u) ↦ w ∧ v ∧ u ∧ ω` is skew with `v` in its kernel, so a second
/// kernel direction exists iff its seven 6 × 6 principal Pfaffians vanish. On a
/// random line `a + s b` these are cubics in `s`; they are interpolated and their
/// common roots found by scanning `F_p`.
pub fn sample_isotropic_plane<R: Rng>(field: &PrimeField, omega: &MultiVector<u32>, rng: &mut R, attempts: usize) -> Option<(Vec<u32>, Vec<u32>)> {
    let p = field.modulus();
    let phi = contraction_form(field, omega);
    let pfaffians_at = |v: &[u32]| -> Vec<u32> {
        let m = contraction_matrix(field, &phi, v);
        (0..DIM)
            .map(|r| {
                let keep: Vec<usize> = (0..DIM).filter(|&x| x != r).collect();
                let sub: Matrix<u32> = keep.iter().map(|&a| keep.iter().map(|&b| m[a][b]).collect()).collect();
                crate::linalg::pfaffian(field, &sub)
            })
            .collect()
    };
    for _ in 0..attempts {
        let a: Vec<u32> = (0..DIM).map(|_| rng.gen_range(0..p)).collect();
        let b: Vec<u32> = (0..DIM).map(|_| rng.gen_range(0..p)).collect();
        let point = |s: u32| -> Vec<u32> { a.iter().zip(&b).map(|(x, y)| Field::add(field, x, &Field::mul(field, &s, y))).collect() };
        // values at s = 0..3 determine each cubic; Lagrange interpolation to monomial coefficients
        let samples: Vec<Vec<u32>> = (0..4).map(|s| pfaffians_at(&point(s))).collect();
        let cubics: Vec<[u32; 4]> = (0..DIM).map(|r| interpolate_cubic(field, [samples[0][r], samples[1][r], samples[2][r], samples[3][r]])).collect();
        let start = rng.gen_range(0..p);
        for k in 0..p {
            let s = (start + k) % p;
            let vanish = cubics.iter().all(|c| {
                let mut acc = 0u32;
                for coeff in c.iter().rev() {
                    acc = Field::add(field, &Field::mul(field, &acc, &s), coeff);
                }
                acc == 0
            });
            if !vanish {
                continue;
            }
            let v = point(s);
            if v.iter().all(|x| *x == 0) {
                continue;
            }
            let m = plane_map(field, omega, &v);
            if rank(field, &m) > DIM - 2 {
                continue;
            }
            for u in kernel(field, &m, DIM) {
                if rank(field, &vec![v.clone(), u.clone()]) == 2 {
                    return Some((v, u));
                }
            }
        }
    }
    None
}

/// Coefficients `c0..c3` of the cubic through `(s, y_s)` for `s = 0, 1, 2, 3`.
fn interpolate_cubic(field: &PrimeField, y: [u32; 4]) -> [u32; 4] {
    let mut out = [0u32; 4];
    for (i, yi) in y.iter().enumerate() {
        if *yi == 0 {
            continue;
        }
        // basis polynomial prod_{j != i} (s - j) / (i - j)
        let mut basis = vec![1u32];
        let mut denom = 1u32;
        for j in 0..4u32 {
            if j as usize == i {
                continue;
            }
            let mut next = vec![0u32; basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] = Field::add(field, &next[d + 1], c);
                next[d] = Field::sub(field, &next[d], &Field::mul(field, c, &j));
            }
            basis = next;
            denom = Field::mul(field, &denom, &Field::from_i64(field, i as i64 - j as i64));
        }
        let scale = Field::mul(field, yi, &Field::inv(field, &denom).expect("distinct nodes"));
        for (d, c) in basis.iter().enumerate() {
            out[d] = Field::add(field, &out[d], &Field::mul(field, c, &scale));
        }
    }
    out
}

/// Plücker coordinates of `v1 ∧ v2`, indexed by [`plucker_pairs`].
pub fn plucker_coordinates<F: Field>(field: &F, v1: &[F::Elem], v2: &[F::Elem]) -> Vec<F::Elem> {
    plucker_pairs()
        .into_iter()
        .map(|(i, j)| Field::sub(field, &Field::mul(field, &v1[i - 1], &v2[j - 1]), &Field::mul(field, &v1[j - 1], &v2[i - 1])))
        .collect()
}

/// Which bivector family the lemma check uses for the last summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BivectorMode {
    /// `d · v7 ∧ (v1 + v3)`.
    Chain,
    /// `d · v7 ∧ (v1 + v3 + v5)`.
    Concurrent,
}

/// `w = a v12 + b v34 + c v56 + d v7 ∧ (v1 + v3 [+ v5])`.
pub fn lemma_bivector<S: Scalars>(s: &S, mode: BivectorMode, coeffs: [S::Elem; 4]) -> MultiVector<S::Elem> {
    let [a, b, c, d] = coeffs;
    let mut terms = vec![(vec![1, 2], a), (vec![3, 4], b), (vec![5, 6], c), (vec![1, 7], s.neg(&d)), (vec![3, 7], s.neg(&d))];
    if mode == BivectorMode::Concurrent {
        terms.push((vec![5, 7], s.neg(&d)));
    }
    MultiVector::from_terms(s, 2, terms).expect("valid indices")
}

/// Result of the exhaustive scan of `w ∧ w = 0` over `F_q^4`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BivectorScan {
    pub mode: BivectorMode,
    pub modulus: u32,
    /// Nonzero `(a, b, c, d)` with `w ∧ w = 0`.
    pub solutions: Vec<[u32; 4]>,
    /// Whether each solution has exactly one nonzero coordinate.
    pub all_single_coordinate: bool,
}

pub fn bivector_scan(mode: BivectorMode, modulus: u32) -> Result<BivectorScan, ExteriorError> {
    let f = PrimeField::new(modulus)?;
    let mut solutions = Vec::new();
    for n in 1..modulus.pow(4) {
        let c = [n % modulus, n / modulus % modulus, n / modulus.pow(2) % modulus, n / modulus.pow(3)];
        let w = lemma_bivector(&f, mode, c);
        if w.wedge(&w, &f)?.is_zero() {
            solutions.push(c);
        }
    }
    let all_single_coordinate = solutions.iter().all(|c| c.iter().filter(|&&x| x != 0).count() == 1);
    Ok(BivectorScan {
        mode,
        modulus,
        solutions,
        all_single_coordinate,
    })
}

/// Components of `w ∧ w` with indeterminate coefficients `a, b, c, d` over ℚ.
pub fn bivector_square_ideal(mode: BivectorMode) -> Result<Ideal<crate::field::Rationals>, ExteriorError> {
    let ring = PolyRing::new(&["a", "b", "c", "d"], crate::field::Rationals, MonomialOrder::Grevlex)?;
    let ps = PolyScalars(ring.clone());
    let vars = [0, 1, 2, 3].map(|i| Polynomial::var(&ring, i));
    let w = lemma_bivector(&ps, mode, vars);
    let sq = w.wedge(&w, &ps)?;
    Ok(Ideal::new(&ring, sq.coeffs.into_values().collect())?)
}

impl fmt::Display for MultiVector<i64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_lines(|c| c.to_string()))
    }
}

impl MultiVector<BigRational> {
    pub fn to_text(&self) -> String {
        self.to_lines(|c| c.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::groebner::{ideal_equal, GbOptions, IdealRelation};
    use crate::hilbert::hilbert_data;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(idx: &[usize]) -> MultiVector<i64> {
        MultiVector::from_terms(&Integers, idx.len(), vec![(idx.to_vec(), 1)]).unwrap()
    }

    #[test]
    fn wedge_basics() {
        assert!(e(&[1]).wedge(&e(&[1]), &Integers).unwrap().is_zero());
        let vol = e(&[1, 2]).wedge(&e(&[3, 4, 5, 6, 7]), &Integers).unwrap();
        assert_eq!(vol, e(&[1, 2, 3, 4, 5, 6, 7]));
        assert_eq!(e(&[2]).wedge(&e(&[1]), &Integers).unwrap(), e(&[1, 2]).scale(&-1, &Integers));
        assert_eq!(
            e(&[1, 2, 3, 4]).wedge(&MultiVector::from_terms(&Integers, 4, vec![(vec![1, 5, 6, 7], 1)]).unwrap(), &Integers),
            Err(ExteriorError::GradeOverflow(8))
        );
    }

    #[test]
    fn hodge_dual_convention() {
        let d = e(&[1, 2, 3, 4, 5]).hodge_dual(&Integers);
        assert_eq!(d, e(&[6, 7]));
        assert!(d.wedge(&d, &Integers).unwrap().is_zero());
        // e_I ∧ *e_I is the volume form
        for k in 0..=DIM {
            for m in basis_masks(k) {
                let x = MultiVector::from_terms(&Integers, k, vec![(indices_of(m), 1)]).unwrap();
                assert_eq!(x.wedge(&x.hodge_dual(&Integers), &Integers).unwrap(), e(&[1, 2, 3, 4, 5, 6, 7]));
                assert_eq!(x.hodge_dual(&Integers).hodge_dual(&Integers), x);
            }
        }
    }

    #[test]
    fn decomposability() {
        let f = e(&[1, 2, 3, 4, 5]).add(&e(&[1, 2, 3, 6, 7]), &Integers);
        let w = f.hodge_dual(&Integers);
        // by hand: *(e12345) = e67, *(e12367) = e45
        assert_eq!(w, e(&[6, 7]).add(&e(&[4, 5]), &Integers));
        assert_eq!(w.wedge(&w, &Integers).unwrap(), e(&[4, 5, 6, 7]).scale(&2, &Integers));
        assert!(!f.is_decomposable(&Integers).unwrap());
        assert_eq!(omega().is_decomposable(&Integers), Err(ExteriorError::UnsupportedGrade(4)));
        assert!(e(&[3, 5]).is_decomposable(&Integers).unwrap());
    }

    #[test]
    fn isotropy_kernels() {
        for (form, nullity) in [(omega(), 14), (omega0(), 14), (omega1(), 15)] {
            let m = isotropy_matrix(&Rationals, &to_field(&Rationals, &form)).unwrap();
            assert_eq!(kernel(&Rationals, &m, 21).len(), nullity);
        }
        let zero = MultiVector::<BigRational>::zero(4);
        let m = isotropy_matrix(&Rationals, &zero).unwrap();
        assert_eq!(kernel(&Rationals, &m, 21).len(), 21);
    }

    #[test]
    fn conic_of_simple_form_is_everything() {
        let f = PrimeField::new(32003).unwrap();
        let simple = to_field(&f, &e(&[1, 2, 3, 4]));
        let i = threespace_conic(&f, &simple).unwrap();
        assert!(i.is_zero());
    }

    #[test]
    fn lemma_bivector_squares() {
        let q = |c: [i64; 4]| {
            let w = lemma_bivector(&Integers, BivectorMode::Concurrent, c);
            w.wedge(&w, &Integers).unwrap()
        };
        assert!(q([1, 0, 0, 0]).is_zero());
        assert_eq!(q([1, 1, 0, 0]), e(&[1, 2, 3, 4]).scale(&2, &Integers));
    }

    #[test]
    fn bivector_scans_and_symbolic_ideal() {
        for mode in [BivectorMode::Chain, BivectorMode::Concurrent] {
            let s = bivector_scan(mode, 5).unwrap();
            assert_eq!(s.solutions.len(), 16);
            assert!(s.all_single_coordinate);
            let i = bivector_square_ideal(mode).unwrap();
            let axes = Ideal::parse(i.ring(), &["a*b", "a*c", "a*d", "b*c", "b*d", "c*d"]).unwrap();
            assert_eq!(ideal_equal(&i, &axes, &GbOptions::default()).unwrap(), IdealRelation::Equal);
        }
    }

    #[test]
    fn sampled_isotropic_planes_satisfy_the_ideal() {
        let f = PrimeField::new(32003).unwrap();
        let om = to_field(&f, &omega0());
        let var = isotropic_variety_ideal(&f, &om).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let (v1, v2) = sample_isotropic_plane(&f, &om, &mut rng, 20).expect("isotropic plane");
            let p = plucker_coordinates(&f, &v1, &v2);
            let pv = MultiVector::from_terms(
                &f,
                2,
                plucker_pairs().into_iter().zip(p.iter()).map(|((i, j), c)| (vec![i, j], *c)).collect(),
            )
            .unwrap();
            assert!(pv.wedge(&om, &f).unwrap().is_zero());
            // kernel coordinates: the basis is the identity on free columns
            let free: Vec<usize> = var
                .kernel_basis
                .iter()
                .map(|k| k.iter().rposition(|x| *x == 1).unwrap())
                .collect();
            let z: Vec<u32> = free.iter().map(|&c| p[c]).collect();
            for g in var.ideal.generators() {
                assert_eq!(g.eval(&z), 0);
            }
        }
    }

    #[test]
    fn omega_isotropic_variety_has_expected_size() {
        let f = PrimeField::new(32003).unwrap();
        let var = isotropic_variety_ideal(&f, &to_field(&f, &omega0())).unwrap();
        let h = hilbert_data(&var.ideal, &GbOptions::default()).unwrap();
        assert_eq!(h.dim, 5);
        assert_eq!(h.degree, Some(18));
    }

    #[test]
    fn text_form() {
        let s = omega1().to_string();
        assert_eq!(s, "4: 1 2 3 7 : 1\n4: 1 3 4 6 : 1\n4: 2 3 5 6 : 1\n");
    }

    fn arb_vec() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-3i64..4, DIM)
    }

    fn arb_form(k: usize) -> impl Strategy<Value = MultiVector<i64>> {
        proptest::collection::vec(-3i64..4, basis_masks(k).len()).prop_map(move |cs| {
            let terms = basis_masks(k).into_iter().zip(cs).map(|(m, c)| (indices_of(m), c)).collect();
            MultiVector::from_terms(&Integers, k, terms).unwrap()
        })
    }

    proptest! {
        #[test]
        fn graded_anticommutativity(a in arb_form(2), b in arb_form(3), c in arb_form(1)) {
            prop_assert_eq!(a.wedge(&b, &Integers).unwrap(), b.wedge(&a, &Integers).unwrap());
            prop_assert_eq!(b.wedge(&c, &Integers).unwrap(), c.wedge(&b, &Integers).unwrap().scale(&-1, &Integers));
            let cc = c.wedge(&c, &Integers).unwrap();
            prop_assert!(cc.is_zero());
        }

        #[test]
        fn decomposability_is_invariant(vs in proptest::collection::vec(arb_vec(), 5), form in arb_form(2),
                                        lower in proptest::collection::vec(-2i64..3, 21)) {
            // unimodular g = L * U with unit diagonals
            let mut l = vec![vec![0i64; DIM]; DIM];
            let mut u = vec![vec![0i64; DIM]; DIM];
            let mut k = 0;
            for i in 0..DIM {
                l[i][i] = 1;
                u[i][i] = 1;
                for j in 0..i {
                    l[i][j] = lower[k];
                    u[j][i] = lower[20 - k];
                    k += 1;
                }
            }
            let g: Vec<Vec<i64>> = (0..DIM).map(|i| (0..DIM).map(|j| (0..DIM).map(|t| l[i][t] * u[t][j]).sum()).collect()).collect();
            let mut simple = MultiVector::vector(&Integers, &vs[0]);
            for v in &vs[1..] {
                simple = simple.wedge(&MultiVector::vector(&Integers, v), &Integers).unwrap();
            }
            prop_assert!(simple.is_decomposable(&Integers).unwrap());
            prop_assert!(simple.transform(&g, &Integers).is_decomposable(&Integers).unwrap());
            prop_assert_eq!(
                form.is_decomposable(&Integers).unwrap(),
                form.transform(&g, &Integers).is_decomposable(&Integers).unwrap()
            );
        }

        #[test]
        fn isotropy_rank_nullity(coeffs in proptest::collection::vec(-2i64..3, 35)) {
            let terms = basis_masks(4).into_iter().zip(coeffs).map(|(m, c)| (indices_of(m), c)).collect();
            let form = MultiVector::from_terms(&Integers, 4, terms).unwrap();
            let m = isotropy_matrix(&Rationals, &to_field(&Rationals, &form)).unwrap();
            prop_assert_eq!(rank(&Rationals, &m) + kernel(&Rationals, &m, 21).len(), 21);
        }
    }
}

use std::cmp::Ordering;
use std::fmt;

/// Largest number of variables a ring may have.
pub const MAX_VARS: usize = 32;

/// Exponent vector of a monomial.
///
/// Exponents live inline in a fixed array so that monomials are `Copy`;
/// only the first `nvars` entries are meaningful, the rest stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    nvars: u8,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        Monomial {
            exps: [0; MAX_VARS],
            nvars: nvars as u8,
            deg: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        assert!(i < nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut m = Self::one(exps.len());
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
        }
        m.deg = exps.iter().sum();
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.nvars as usize]
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    /// Total (unweighted) degree.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.exponents()
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u32 * w)
            .sum()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Bit `i` is set iff variable `i` occurs.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exponents().iter().enumerate() {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut r = *self;
        for i in 0..self.nvars as usize {
            r.exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        r.deg = self.deg + other.deg;
        r
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg {
            return false;
        }
        self.exps[..self.nvars as usize]
            .iter()
            .zip(&other.exps[..self.nvars as usize])
            .all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut r = *other;
        for i in 0..self.nvars as usize {
            r.exps[i] -= self.exps[i];
        }
        r.deg = other.deg - self.deg;
        Some(r)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        let mut deg = 0;
        for i in 0..self.nvars as usize {
            r.exps[i] = self.exps[i].max(other.exps[i]);
            deg += r.exps[i] as u32;
        }
        r.deg = deg;
        r
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        let mut deg = 0;
        for i in 0..self.nvars as usize {
            r.exps[i] = self.exps[i].min(other.exps[i]);
            deg += r.exps[i] as u32;
        }
        r.deg = deg;
        r
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.support_mask() & other.support_mask() == 0
    }

    /// Colon `self : other` of principal monomial ideals, i.e. `self / gcd(self, other)`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        let mut deg = 0;
        for i in 0..self.nvars as usize {
            r.exps[i] = self.exps[i].saturating_sub(other.exps[i]);
            deg += r.exps[i] as u32;
        }
        r.deg = deg;
        r
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut r = *self;
        r.deg = r.deg - r.exps[i] as u32 + e;
        r.exps[i] = u16::try_from(e).expect("exponent overflow");
        r
    }

    /// Re-index into a ring with `nvars` variables: source variable `i` goes to `map[i]`.
    /// Returns `None` if a variable with positive exponent has no image.
    pub fn remap(&self, nvars: usize, map: &[Option<usize>]) -> Option<Monomial> {
        let mut r = Monomial::one(nvars);
        for (i, &e) in self.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let j = map[i]?;
            r.exps[j] = r.exps[j].checked_add(e).expect("exponent overflow");
        }
        r.deg = self.deg;
        Some(r)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

/// A monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, graded by the ring weights.
    Grevlex,
    /// Pure lexicographic.
    Lex,
    /// Elimination order: the first `front` variables form a grevlex block that
    /// dominates the grevlex block of the remaining variables.
    Block { front: usize },
}

impl MonomialOrder {
    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Block { front } => format!("block({front})"),
        }
    }

    #[inline]
    pub fn compare(&self, weights: &[u32], unit_weights: bool, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex_range(weights, unit_weights, a, b, 0, a.nvars()),
            MonomialOrder::Lex => {
                for i in 0..a.nvars() {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block { front } => {
                match grevlex_range(weights, false, a, b, 0, front) {
                    Ordering::Equal => grevlex_range(weights, false, a, b, front, a.nvars()),
                    o => o,
                }
            }
        }
    }
}

#[inline]
fn grevlex_range(
    weights: &[u32],
    unit_weights: bool,
    a: &Monomial,
    b: &Monomial,
    lo: usize,
    hi: usize,
) -> Ordering {
    let (da, db) = if unit_weights && lo == 0 && hi == a.nvars() {
        (a.deg, b.deg)
    } else {
        let mut da = 0u32;
        let mut db = 0u32;
        for i in lo..hi {
            da += a.exps[i] as u32 * weights[i];
            db += b.exps[i] as u32 * weights[i];
        }
        (da, db)
    };
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (lo..hi).rev() {
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_breaks_ties_by_last_variable() {
        let w = [1; 3];
        // x^2 > x*z under grevlex? both degree 2; last differing var z: x^2 has smaller z exponent
        let o = MonomialOrder::Grevlex;
        assert_eq!(o.compare(&w, true, &mono(&[2, 0, 0]), &mono(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(o.compare(&w, true, &mono(&[0, 2, 0]), &mono(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(o.compare(&w, true, &mono(&[1, 1, 0]), &mono(&[0, 2, 0])), Ordering::Greater);
        let lex = MonomialOrder::Lex;
        assert_eq!(lex.compare(&w, true, &mono(&[1, 0, 0]), &mono(&[0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_front_block() {
        let w = [1; 3];
        let o = MonomialOrder::Block { front: 1 };
        assert_eq!(o.compare(&w, true, &mono(&[1, 0, 0]), &mono(&[0, 4, 0])), Ordering::Greater);
        assert_eq!(o.compare(&w, true, &mono(&[0, 1, 1]), &mono(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = mono(&[1, 2, 0]);
        let b = mono(&[2, 1, 1]);
        assert!(!a.divides(&b));
        assert_eq!(a.lcm(&b), mono(&[2, 2, 1]));
        assert_eq!(a.gcd(&b), mono(&[1, 1, 0]));
        assert_eq!(a.quotient_of(&a.lcm(&b)), Some(mono(&[1, 0, 1])));
        assert!(mono(&[1, 0, 0]).is_coprime(&mono(&[0, 3, 1])));
    }

    fn arb_mono(n: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, n).prop_map(|v| Monomial::from_exponents(&v))
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::Block { front: 2 }]
    }

    proptest! {
        #[test]
        fn orders_are_total_multiplicative_and_well_founded(
            a in arb_mono(5), b in arb_mono(5), c in arb_mono(5), m in arb_mono(5)
        ) {
            let w = [1u32; 5];
            let one = Monomial::one(5);
            for o in orders() {
                let ab = o.compare(&w, true, &a, &b);
                prop_assert_eq!(ab, o.compare(&w, true, &b, &a).reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                // transitivity
                if ab != Ordering::Greater && o.compare(&w, true, &b, &c) != Ordering::Greater {
                    prop_assert_ne!(o.compare(&w, true, &a, &c), Ordering::Greater);
                }
                // multiplicativity
                prop_assert_eq!(o.compare(&w, true, &a.mul(&m), &b.mul(&m)), ab);
                // 1 is minimal
                prop_assert_ne!(o.compare(&w, true, &one, &a), Ordering::Greater);
            }
        }
    }
}

//! Dense linear algebra over a [`Field`].

use crate::field::Field;

/// Dense row-major matrix.
pub type Matrix<E> = Vec<Vec<E>>;

/// Bring `m` to reduced row echelon form in place, returning the pivot columns.
///
/// Pivots are chosen as the first nonzero entry scanning rows top to bottom, so
/// the result depends only on the input and not on any tie-breaking heuristics.
pub fn rref<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(&m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !field.is_zero(y) {
                    *x = field.sub(x, &field.mul(&f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut m = m.clone();
    rref(field, &mut m).len()
}

/// Basis of the right kernel `{ x : m x = 0 }`, one vector per free column.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>, ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut a = m.clone();
    let pivots = rref(field, &mut a);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(&a[row][free]);
        }
        basis.push(v);
    }
    basis
}

/// Determinant by elimination.
pub fn determinant<F: Field>(field: &F, m: &Matrix<F::Elem>) -> F::Elem {
    let n = m.len();
    let mut a = m.clone();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !field.is_zero(&a[i][c])) else {
            return field.zero();
        };
        if p != c {
            a.swap(p, c);
            det = field.neg(&det);
        }
        det = field.mul(&det, &a[c][c]);
        let inv = field.inv(&a[c][c]).expect("nonzero pivot");
        for i in c + 1..n {
            if field.is_zero(&a[i][c]) {
                continue;
            }
            let f = field.mul(&a[i][c], &inv);
            for j in c..n {
                let t = field.mul(&f, &a[c][j]);
                a[i][j] = field.sub(&a[i][j], &t);
            }
        }
    }
    det
}

/// Pfaffian of an even-order skew-symmetric matrix, by expansion along the first row.
pub fn pfaffian<F: Field>(field: &F, m: &Matrix<F::Elem>) -> F::Elem {
    let idx: Vec<usize> = (0..m.len()).collect();
    pfaffian_rec(field, m, &idx)
}

fn pfaffian_rec<F: Field>(field: &F, m: &Matrix<F::Elem>, idx: &[usize]) -> F::Elem {
    if idx.is_empty() {
        return field.one();
    }
    if idx.len() % 2 == 1 {
        return field.zero();
    }
    let first = idx[0];
    let mut acc = field.zero();
    for k in 1..idx.len() {
        let a = &m[first][idx[k]];
        if field.is_zero(a) {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != idx[k]).collect();
        let term = field.mul(a, &pfaffian_rec(field, m, &rest));
        acc = if k % 2 == 1 { field.add(&acc, &term) } else { field.sub(&acc, &term) };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Matrix<BigRational> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect()
    }

    #[test]
    fn rank_and_kernel_of_small_matrix() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&Rationals, &m), 2);
        let k = kernel(&Rationals, &m, 3);
        assert_eq!(k.len(), 1);
        for row in &m {
            let dot: BigRational = row.iter().zip(&k[0]).map(|(a, b)| a * b).sum();
            assert_eq!(dot, BigRational::from_integer(0.into()));
        }
        assert_eq!(determinant(&Rationals, &q(&[&[0, 1], &[1, 0]])), BigRational::from_integer((-1).into()));
    }

    proptest! {
        #[test]
        fn pfaffian_squares_to_determinant(upper in proptest::collection::vec(-5i64..6, 15)) {
            for n in [4usize, 6] {
                let mut m = vec![vec![BigRational::from_integer(0.into()); n]; n];
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        m[i][j] = BigRational::from_integer(upper[k].into());
                        m[j][i] = -m[i][j].clone();
                        k += 1;
                    }
                }
                let pf = pfaffian(&Rationals, &m);
                prop_assert_eq!(&pf * &pf, determinant(&Rationals, &m));
            }
        }

        #[test]
        fn rank_nullity(entries in proptest::collection::vec(0u32..5, 20)) {
            let f = PrimeField::new(5).unwrap();
            let m: Matrix<u32> = entries.chunks(5).map(|c| c.to_vec()).collect();
            let k = kernel(&f, &m, 5);
            prop_assert_eq!(rank(&f, &m) + k.len(), 5);
            for v in &k {
                for row in &m {
                    let dot = row.iter().zip(v).fold(0u32, |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
                    prop_assert_eq!(dot, 0);
                }
            }
        }
    }
}

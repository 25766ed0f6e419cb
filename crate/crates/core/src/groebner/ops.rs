use std::sync::Arc;

use serde::Serialize;

use super::{GbOptions, GroebnerError, Ideal};
use crate::error::PolyError;
use crate::field::Field;
use crate::poly::{MonomialOrder, PolyRing, Polynomial};

/// Outcome of comparing two ideals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealRelation {
    Equal,
    /// The first ideal is strictly contained in the second.
    FirstInSecond,
    /// The second ideal is strictly contained in the first.
    SecondInFirst,
    Incomparable,
}

/// `I ∩ K[keep]`, returned in the ring of the kept variables (original order of names, grevlex).
pub fn elimination_ideal<F: Field, S: AsRef<str>>(
    ideal: &Ideal<F>,
    drop: &[S],
    opts: &GbOptions,
) -> Result<Ideal<F>, GroebnerError> {
    let ring = ideal.ring();
    let mut drop_idx = Vec::new();
    for name in drop {
        let i = ring
            .var_index(name.as_ref())
            .ok_or_else(|| PolyError::UnknownVariable(name.as_ref().to_string()))?;
        if !drop_idx.contains(&i) {
            drop_idx.push(i);
        }
    }
    drop_idx.sort_unstable();
    let keep_idx: Vec<usize> = (0..ring.nvars()).filter(|i| !drop_idx.contains(i)).collect();
    if keep_idx.is_empty() {
        return Err(PolyError::InvalidRing("cannot eliminate every variable".into()).into());
    }
    let names = |idx: &[usize]| idx.iter().map(|&i| ring.variables()[i].clone()).collect::<Vec<_>>();
    let weights = |idx: &[usize]| idx.iter().map(|&i| ring.weights()[i]).collect::<Vec<_>>();
    let sub_ring = PolyRing::with_weights(&names(&keep_idx), ring.field().clone(), MonomialOrder::Grevlex, weights(&keep_idx))?;
    if drop_idx.is_empty() {
        return Ok(ideal.transfer(&sub_ring)?);
    }

    let order: Vec<usize> = drop_idx.iter().chain(&keep_idx).copied().collect();
    let elim_ring = PolyRing::with_weights(
        &names(&order),
        ring.field().clone(),
        MonomialOrder::Block { front: drop_idx.len() },
        weights(&order),
    )?;
    let gb = ideal.transfer(&elim_ring)?.groebner(opts)?;
    let front_mask: u32 = (1u32 << drop_idx.len()) - 1;
    let gens = gb
        .basis()
        .iter()
        .filter(|g| g.support_mask() & front_mask == 0)
        .map(|g| g.remap_by_name(&sub_ring))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::new(&sub_ring, gens)?)
}

/// Relations among `images` (homogeneous of one degree `d` in `source`), as an
/// ideal in a standard graded ring on `target_vars`.
///
/// Computed from the graph ideal `(T_i - q_i)` in a ring where each `T_i` has
/// weight `d`, eliminating the source variables with a block order.
pub fn kernel_of_map<F: Field, S: AsRef<str>>(
    source: &Arc<PolyRing<F>>,
    images: &[Polynomial<F>],
    target_vars: &[S],
    opts: &GbOptions,
) -> Result<Ideal<F>, GroebnerError> {
    if images.len() != target_vars.len() {
        return Err(PolyError::ArityMismatch {
            expected: target_vars.len(),
            got: images.len(),
        }
        .into());
    }
    let mut degree = None;
    for q in images {
        if q.ring().as_ref() != source.as_ref() {
            return Err(PolyError::RingMismatch.into());
        }
        if q.is_zero() {
            continue;
        }
        if !q.is_homogeneous() || degree.is_some_and(|d| Some(d) != q.degree()) {
            return Err(PolyError::InvalidRing("images must be homogeneous of one degree".into()).into());
        }
        degree = q.degree();
    }
    let d = degree.unwrap_or(1);
    let target_names: Vec<String> = target_vars.iter().map(|v| v.as_ref().to_string()).collect();
    let target = PolyRing::new(&target_names, source.field().clone(), MonomialOrder::Grevlex)?;

    let mut vars: Vec<String> = source.variables().to_vec();
    vars.extend(target_names.iter().cloned());
    let mut weights = source.weights().to_vec();
    weights.extend(std::iter::repeat(d).take(target_names.len()));
    let graph_ring = PolyRing::with_weights(
        &vars,
        source.field().clone(),
        MonomialOrder::Block { front: source.nvars() },
        weights,
    )?;
    let mut graph = Vec::with_capacity(images.len());
    for (q, name) in images.iter().zip(&target_names) {
        let t = Polynomial::named(&graph_ring, name);
        graph.push(&t - &q.remap_by_name(&graph_ring)?);
    }
    let gb = Ideal::new(&graph_ring, graph)?.groebner(opts)?;
    let front_mask: u32 = (1u32 << source.nvars()) - 1;
    let gens = gb
        .basis()
        .iter()
        .filter(|g| g.support_mask() & front_mask == 0)
        .map(|g| g.remap_by_name(&target))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::new(&target, gens)?)
}

/// Compare ideals by reducing each generator set modulo the other's reduced basis.
pub fn ideal_equal<F: Field>(i: &Ideal<F>, j: &Ideal<F>, opts: &GbOptions) -> Result<IdealRelation, GroebnerError> {
    if i.ring().as_ref() != j.ring().as_ref() {
        return Err(PolyError::RingMismatch.into());
    }
    let gi = i.groebner(opts)?;
    let gj = j.groebner(opts)?;
    let j_in_i = j.generators().iter().all(|g| gi.contains(g).expect("same ring"));
    let i_in_j = i.generators().iter().all(|g| gj.contains(g).expect("same ring"));
    Ok(match (i_in_j, j_in_i) {
        (true, true) => IdealRelation::Equal,
        (true, false) => IdealRelation::FirstInSecond,
        (false, true) => IdealRelation::SecondInFirst,
        (false, false) => IdealRelation::Incomparable,
    })
}

/// Whether `f` lies in the radical of `ideal`: `1 ∈ I + (1 - w f)` with a fresh variable `w`.
pub fn radical_membership<F: Field>(f: &Polynomial<F>, ideal: &Ideal<F>, opts: &GbOptions) -> Result<bool, GroebnerError> {
    let ring = ideal.ring();
    if f.ring().as_ref() != ring.as_ref() {
        return Err(PolyError::RingMismatch.into());
    }
    if f.is_zero() {
        return Ok(true);
    }
    let mut w = String::from("w");
    while ring.var_index(&w).is_some() {
        w.push('_');
    }
    let mut vars = ring.variables().to_vec();
    vars.push(w.clone());
    let ext = PolyRing::new(&vars, ring.field().clone(), MonomialOrder::Grevlex)?;
    let mut gens = ideal.transfer(&ext)?.generators().to_vec();
    let one = Polynomial::one(&ext);
    gens.push(&one - &(&Polynomial::named(&ext, &w) * &f.remap_by_name(&ext)?));
    Ok(Ideal::new(&ext, gens)?.groebner(opts)?.is_unit())
}

/// A basis of `{f ∈ R_d : f · m^k ⊆ I}` for the irrelevant ideal `m`, in reduced echelon form.
///
/// For `k` past the saturation index this is the degree-`d` part of `I : m^∞`.
pub fn saturation_degree_part<F: Field>(ideal: &Ideal<F>, d: u32, k: u32, opts: &GbOptions) -> Result<Vec<Polynomial<F>>, GroebnerError> {
    let ring = ideal.ring();
    let field = ring.field();
    let gb = ideal.groebner(opts)?;
    let basis = ring.monomials_of_degree(d);
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for alpha in ring.monomials_of_degree(k) {
        let images: Vec<Polynomial<F>> = basis
            .iter()
            .map(|b| gb.normal_form(&Polynomial::monomial(ring, field.one(), b.mul(&alpha))))
            .collect::<Result<_, _>>()?;
        let mut monos: Vec<_> = images.iter().flat_map(|p| p.terms().iter().map(|t| t.mono.clone())).collect();
        monos.sort_by(|x, y| ring.cmp(x, y));
        monos.dedup();
        for m in monos {
            rows.push(images.iter().map(|p| p.coefficient_of(&m)).collect());
        }
        opts.check()?;
    }
    let kernel = crate::linalg::kernel(field, &rows, basis.len());
    let mut m: Vec<Vec<F::Elem>> = kernel;
    let pivots = crate::linalg::rref(field, &mut m);
    m.truncate(pivots.len());
    Ok(m.into_iter()
        .map(|row| {
            let terms = row
                .into_iter()
                .zip(&basis)
                .filter(|(c, _)| !field.is_zero(c))
                .map(|(coeff, mono)| crate::poly::Term { coeff, mono: mono.clone() })
                .collect();
            Polynomial::from_terms(ring, terms)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::parse_polynomial;

    fn ring(vars: &[&str]) -> Arc<PolyRing<Rationals>> {
        PolyRing::new(vars, Rationals, MonomialOrder::Grevlex).unwrap()
    }

    fn opts() -> GbOptions {
        GbOptions::default()
    }

    #[test]
    fn elimination_examples() {
        let r = ring(&["x", "y", "z"]);
        let i = Ideal::parse(&r, &["x - y*z"]).unwrap();
        assert!(elimination_ideal(&i, &["x"], &opts()).unwrap().is_zero());
        let r2 = ring(&["x", "y"]);
        let j = Ideal::parse(&r2, &["x - y", "x + y"]).unwrap();
        let e = elimination_ideal(&j, &["x"], &opts()).unwrap();
        assert_eq!(e.generators().len(), 1);
        assert_eq!(e.generators()[0].to_string(), "y");
        assert_eq!(e.ring().variables(), &["y".to_string()]);
    }

    #[test]
    fn veronese_kernel() {
        let src = ring(&["x", "y"]);
        let images: Vec<_> = ["x^2", "x*y", "y^2"].iter().map(|s| parse_polynomial(s, &src).unwrap()).collect();
        let k = kernel_of_map(&src, &images, &["T0", "T1", "T2"], &opts()).unwrap();
        let t = k.ring().clone();
        let expected = Ideal::parse(&t, &["T0*T2 - T1^2"]).unwrap();
        assert_eq!(ideal_equal(&k, &expected, &opts()).unwrap(), IdealRelation::Equal);
        for g in k.generators() {
            assert!(g.substitute(&images).unwrap().is_zero());
        }
    }

    #[test]
    fn twisted_cubic_kernel_has_three_quadrics() {
        let src = ring(&["s", "u"]);
        let images: Vec<_> = ["s^3", "s^2*u", "s*u^2", "u^3"].iter().map(|s| parse_polynomial(s, &src).unwrap()).collect();
        let k = kernel_of_map(&src, &images, &["a", "b", "c", "d"], &opts()).unwrap();
        let gb = k.groebner(&opts()).unwrap();
        assert_eq!(gb.basis().len(), 3);
        assert!(gb.basis().iter().all(|g| g.degree() == Some(2)));
    }

    #[test]
    fn relations() {
        let r = ring(&["x", "y"]);
        let a = Ideal::parse(&r, &["x", "y"]).unwrap();
        let b = Ideal::parse(&r, &["y", "x + y"]).unwrap();
        assert_eq!(ideal_equal(&a, &b, &opts()).unwrap(), IdealRelation::Equal);
        let sq = Ideal::parse(&r, &["x^2"]).unwrap();
        let x = Ideal::parse(&r, &["x"]).unwrap();
        assert_eq!(ideal_equal(&sq, &x, &opts()).unwrap(), IdealRelation::FirstInSecond);
        assert_eq!(ideal_equal(&x, &sq, &opts()).unwrap(), IdealRelation::SecondInFirst);
        let y = Ideal::parse(&r, &["y"]).unwrap();
        assert_eq!(ideal_equal(&x, &y, &opts()).unwrap(), IdealRelation::Incomparable);
    }

    #[test]
    fn radical() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["x^2"]).unwrap();
        let x = parse_polynomial("x", &r).unwrap();
        let y = parse_polynomial("y", &r).unwrap();
        assert!(radical_membership(&x, &i, &opts()).unwrap());
        assert!(!radical_membership(&y, &i, &opts()).unwrap());
        let j = Ideal::parse(&r, &["x^3 - y^2*x", "y^4"]).unwrap();
        assert!(radical_membership(&x, &j, &opts()).unwrap());
    }

    #[test]
    fn eliminated_generators_avoid_dropped_variables() {
        let r = ring(&["x", "y", "z", "t"]);
        let i = Ideal::parse(&r, &["x^2 - y*t", "x*y - z*t", "y^2 - x*z"]).unwrap();
        let e = elimination_ideal(&i, &["x"], &opts()).unwrap();
        assert!(!e.is_zero());
        for g in e.generators() {
            assert!(g.ring().var_index("x").is_none());
        }
    }

    #[test]
    fn saturation_of_embedded_point() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
        let opts = GbOptions::default();
        assert!(saturation_degree_part(&i, 1, 0, &opts).unwrap().is_empty());
        let lin = saturation_degree_part(&i, 1, 1, &opts).unwrap();
        assert_eq!(lin.len(), 1);
        assert_eq!(lin[0].to_string(), "x");
    }
}

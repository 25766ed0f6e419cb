use std::sync::Arc;

use serde::Serialize;

use super::{build_presentation, parse_matrix_file, Presentation, SkewPresentation, VarietyError};
use crate::error::PolyError;
use crate::field::Field;
use crate::groebner::{elimination_ideal, ideal_equal, GbOptions, Ideal, IdealRelation};
use crate::hilbert::{hilbert_data, HilbertData};
use crate::poly::{parse_polynomial, MonomialOrder, PolyRing, Polynomial};

/// Coordinates of the singular plane of `Ghat`.
pub const PLANE_VARS: [&str; 3] = ["c", "k", "f"];

const F_ZERO: [&str; 6] = ["a", "e", "g", "h", "i", "n"];
const FPRIME_ZERO: [&str; 6] = ["b", "d", "g", "j", "l", "m"];

/// `I + (forms)`; the forms must be homogeneous.
pub fn linear_section<F: Field>(ideal: &Ideal<F>, forms: &[Polynomial<F>]) -> Result<Ideal<F>, VarietyError> {
    if forms.iter().any(|f| !f.is_homogeneous()) {
        return Err(VarietyError::Invalid("section forms must be homogeneous".into()));
    }
    Ok(ideal.plus(forms)?)
}

fn vars<F: Field>(ring: &Arc<PolyRing<F>>, names: &[&str]) -> Result<Vec<Polynomial<F>>, PolyError> {
    names.iter().map(|n| parse_polynomial(n, ring)).collect()
}

/// The ideal of 2×2 minors of the printed 2×6 matrix, in the eleven coordinates other than `c, k, f`.
pub fn minors_ideal<F: Field>(field: &F) -> Result<Ideal<F>, VarietyError> {
    let file = parse_matrix_file_rect(include_str!("../../data/projection.matrix"))?;
    let ring = PolyRing::new(&file.0, field.clone(), MonomialOrder::Grevlex)?;
    let rows: Vec<Vec<Polynomial<F>>> = file
        .1
        .iter()
        .map(|r| r.iter().map(|e| parse_polynomial(e, &ring)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let mut gens = Vec::new();
    for i in 0..rows[0].len() {
        for j in i + 1..rows[0].len() {
            gens.push(&(&rows[0][i] * &rows[1][j]) - &(&rows[0][j] * &rows[1][i]));
        }
    }
    Ok(Ideal::new(&ring, gens)?)
}

/// Rectangular variant of the matrix file reader (the projection matrix is 2×6).
fn parse_matrix_file_rect(text: &str) -> Result<(Vec<String>, Vec<Vec<String>>), VarietyError> {
    let mut vars = None;
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let split = |s: &str| s.split(',').map(|v| v.trim().to_string()).collect::<Vec<_>>();
        match line.strip_prefix("vars:") {
            Some(rest) => vars = Some(split(rest)),
            None => rows.push(split(line)),
        }
    }
    let vars = vars.ok_or_else(|| VarietyError::BadMatrixFile("missing `vars:` header".into()))?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(VarietyError::BadMatrixFile("ragged rows".into()));
    }
    Ok((vars, rows))
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionCheck {
    pub relation: IdealRelation,
    pub eliminated_generators: usize,
    pub minors_hilbert: HilbertData,
}

/// Eliminate `c, k, f` from the Pfaffian ideal of `which` and compare with the minors ideal.
pub fn projection_check<F: Field>(field: &F, which: Presentation, opts: &GbOptions) -> Result<ProjectionCheck, VarietyError> {
    let ideal = build_presentation(field, which)?.pfaffian_ideal();
    let elim = elimination_ideal(&ideal, &PLANE_VARS, opts)?;
    let minors = minors_ideal(field)?;
    let elim = elim.transfer(minors.ring())?;
    Ok(ProjectionCheck {
        relation: ideal_equal(&elim, &minors, opts)?,
        eliminated_generators: elim.generators().len(),
        minors_hilbert: hilbert_data(&minors, opts)?,
    })
}

/// `Ghat + (g, h, j)`.
pub fn divisor_d<F: Field>(field: &F) -> Result<Ideal<F>, VarietyError> {
    let ideal = build_presentation(field, Presentation::Ghat)?.pfaffian_ideal();
    let forms = vars(ideal.ring(), &["g", "h", "j"])?;
    linear_section(&ideal, &forms)
}

/// Set the named variables to zero and read the result in the ring of the others.
pub fn restrict_to_zero<F: Field>(ideal: &Ideal<F>, zero: &[&str]) -> Result<Ideal<F>, VarietyError> {
    let ring = ideal.ring();
    let keep: Vec<String> = ring.variables().iter().filter(|v| !zero.contains(&v.as_str())).cloned().collect();
    let weights = keep.iter().map(|v| ring.weights()[ring.var_index(v).expect("own variable")]).collect();
    let sub = PolyRing::with_weights(&keep, ring.field().clone(), MonomialOrder::Grevlex, weights)?;
    let images: Vec<Polynomial<F>> = ring
        .variables()
        .iter()
        .map(|v| if zero.contains(&v.as_str()) { Polynomial::zero(&sub) } else { Polynomial::named(&sub, v) })
        .collect();
    for z in zero {
        if ring.var_index(z).is_none() {
            return Err(PolyError::UnknownVariable(z.to_string()).into());
        }
    }
    let gens = ideal.generators().iter().map(|g| g.substitute(&images)).collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::new(&sub, gens)?)
}

/// A coordinate slice of `Ghat` next to the Pfaffians of a 5×5 skew matrix.
#[derive(Clone, Debug, Serialize)]
pub struct FanoSlice<F: Field> {
    #[serde(skip)]
    pub slice: Ideal<F>,
    #[serde(skip)]
    pub pfaffians: Ideal<F>,
    pub relation: IdealRelation,
    pub hilbert: HilbertData,
}

/// The slice `a = e = g = h = i = n = 0` of `Ghat` against the printed 5×5 matrix of `F`.
pub fn fano_f<F: Field>(field: &F, opts: &GbOptions) -> Result<FanoSlice<F>, VarietyError> {
    let ghat = build_presentation(field, Presentation::Ghat)?.pfaffian_ideal();
    let slice = restrict_to_zero(&ghat, &F_ZERO)?;
    let file = parse_matrix_file(include_str!("../../data/fano_f.matrix"))?;
    let (ring, printed) = file.entries(field, None)?;
    let m = SkewPresentation::from_printed(&ring, &printed)?;
    let pfaffians = m.pfaffian_ideal().transfer(slice.ring())?;
    finish_slice(slice, pfaffians, opts)
}

/// The slice `b = d = g = j = l = m = 0` of `Ghat` against the Pfaffians of rows 1, 3, 5, 6, 7 of its matrix.
pub fn fano_fprime<F: Field>(field: &F, opts: &GbOptions) -> Result<FanoSlice<F>, VarietyError> {
    let pres = build_presentation(field, Presentation::Ghat)?;
    let slice = restrict_to_zero(&pres.pfaffian_ideal(), &FPRIME_ZERO)?;
    let sub = pres.submatrix(&[0, 2, 4, 5, 6]);
    let pfaffians = restrict_to_zero(&sub.pfaffian_ideal(), &FPRIME_ZERO)?;
    finish_slice(slice, pfaffians, opts)
}

fn finish_slice<F: Field>(slice: Ideal<F>, pfaffians: Ideal<F>, opts: &GbOptions) -> Result<FanoSlice<F>, VarietyError> {
    Ok(FanoSlice {
        relation: ideal_equal(&slice, &pfaffians, opts)?,
        hilbert: hilbert_data(&slice, opts)?,
        slice,
        pfaffians,
    })
}

/// The ideal of the plane `c, k, f` in `P^13`: all other coordinates.
pub fn plane_ideal<F: Field>(ring: &Arc<PolyRing<F>>) -> Result<Ideal<F>, PolyError> {
    let gens = ring
        .variables()
        .iter()
        .filter(|v| !PLANE_VARS.contains(&v.as_str()))
        .map(|v| Polynomial::named(ring, v))
        .collect();
    Ideal::new(ring, gens)
}

/// `(Ghat + F's zero coordinates) + (Ghat + F′'s zero coordinates)` in `P^13`.
pub fn fano_union<F: Field>(field: &F) -> Result<Ideal<F>, VarietyError> {
    let ghat = build_presentation(field, Presentation::Ghat)?.pfaffian_ideal();
    let f = linear_section(&ghat, &vars(ghat.ring(), &F_ZERO)?)?;
    let fp = linear_section(&ghat, &vars(ghat.ring(), &FPRIME_ZERO)?)?;
    Ok(f.sum(&fp)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::DEFAULT_PRIME;

    fn fp() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    #[test]
    fn minors_ideal_is_p1_times_p5_cone() {
        let m = minors_ideal(&fp()).unwrap();
        assert_eq!(m.generators().len(), 15);
        let h = hilbert_data(&m, &GbOptions::default()).unwrap();
        // Segre P1 x P5 has dimension 6 and degree 6; it spans P^11, and a hyperplane cuts it to dim 5
        assert_eq!((h.dim, h.degree), (5, Some(6)));
    }

    #[test]
    fn restriction_drops_variables() {
        let f = fp();
        let ring = PolyRing::new(&["x", "y", "z"], f, MonomialOrder::Grevlex).unwrap();
        let i = Ideal::parse(&ring, &["x*y + z^2", "x"]).unwrap();
        let r = restrict_to_zero(&i, &["x"]).unwrap();
        assert_eq!(r.ring().variables(), &["y".to_string(), "z".to_string()]);
        assert_eq!(r.generators().len(), 1);
        assert_eq!(r.generators()[0].to_string(), "z^2");
        assert!(restrict_to_zero(&i, &["w"]).is_err());
    }

    #[test]
    fn fano_slices() {
        let f = fp();
        let opts = GbOptions::default();
        for s in [fano_f(&f, &opts).unwrap(), fano_fprime(&f, &opts).unwrap()] {
            assert_eq!(s.relation, IdealRelation::Equal);
            assert_eq!((s.hilbert.dim, s.hilbert.degree), (4, Some(5)));
            assert_eq!(s.slice.ring().nvars(), 8);
        }
        let u = fano_union(&f).unwrap();
        let plane = plane_ideal(u.ring()).unwrap();
        assert_eq!(ideal_equal(&u, &plane, &opts).unwrap(), IdealRelation::Equal);
        let h = hilbert_data(&u, &opts).unwrap();
        assert_eq!((h.dim, h.degree), (2, Some(1)));
    }

    #[test]
    fn sections_reject_inhomogeneous_forms() {
        let f = fp();
        let ring = PolyRing::new(&["x", "y"], f, MonomialOrder::Grevlex).unwrap();
        let i = Ideal::zero(&ring);
        let bad = parse_polynomial("x + 1", &ring).unwrap();
        assert!(linear_section(&i, &[bad]).is_err());
    }
}

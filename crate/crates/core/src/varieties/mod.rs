//! The concrete varieties: skew presentations of `G2` and its degenerations,
//! the space curves whose quadric systems parametrize them, and the checks
//! run on them (projections, linear sections, singular locus, nodes).

mod curves;
mod probe;
mod sections;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::error::PolyError;
use crate::exterior::{self, basis_masks, plucker_pairs, ExteriorError, MultiVector};
use crate::field::{Field, Rationals};
use crate::groebner::{GbOptions, GroebnerError, Ideal};
use crate::hilbert::{hilbert_data, HilbertData, HilbertError};
use crate::linalg::{kernel, Matrix};
use crate::poly::{parse_polynomial, MonomialOrder, PolyRing, Polynomial};

pub use curves::{
    curve_ideal, curve_lambda, image_ideal, printed_coordinates, quadrics_through, same_span, CurveVariant, P5_VARS,
};
pub use probe::{
    jacobian_rank, node_count, on_plane, sample_g2_point, sample_parametrized_point, sample_plane_point,
    smoothness_probe, NodeCount, PointProbe,
};
pub use sections::{
    divisor_d, fano_f, fano_fprime, fano_union, linear_section, minors_ideal, plane_ideal, projection_check,
    restrict_to_zero, FanoSlice, ProjectionCheck, PLANE_VARS,
};

/// Coordinates `a..n` on the linear span `P^13`.
pub const SPAN_VARS: [&str; 14] = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarietyError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error("malformed matrix file: {0}")]
    BadMatrixFile(String),
    #[error("{which}: presentation has {presentation:?}, isotropic variety has {intrinsic:?}")]
    CrossValidation {
        which: String,
        presentation: Box<HilbertData>,
        intrinsic: Box<HilbertData>,
    },
    #[error("point {0} does not lie on the variety")]
    NotOnVariety(usize),
    #[error("no generic section after {0} attempts")]
    NonGeneric(usize),
    #[error("{0}")]
    Invalid(String),
}

/// The printed presentations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Presentation {
    G2,
    Ghat,
    FamilyT(i64),
    FamilyLambda(i64),
}

impl Presentation {
    fn source(&self) -> &'static str {
        match self {
            Presentation::G2 => include_str!("../../data/g2.matrix"),
            Presentation::Ghat => include_str!("../../data/ghat.matrix"),
            Presentation::FamilyT(_) => include_str!("../../data/family_t.matrix"),
            Presentation::FamilyLambda(_) => include_str!("../../data/family_lambda.matrix"),
        }
    }

    fn parameter(&self) -> Option<i64> {
        match *self {
            Presentation::FamilyT(t) | Presentation::FamilyLambda(t) => Some(t),
            _ => None,
        }
    }

    /// The 4-form whose isotropic variety this presentation describes, when there is one.
    pub fn isotropic_form(&self) -> Option<MultiVector<i64>> {
        match *self {
            Presentation::G2 => Some(exterior::omega()),
            Presentation::Ghat => Some(exterior::omega0()),
            Presentation::FamilyT(t) => Some(exterior::omega_t(t)),
            Presentation::FamilyLambda(_) => None,
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Presentation::G2 => f.write_str("G2"),
            Presentation::Ghat => f.write_str("Ghat"),
            Presentation::FamilyT(t) => write!(f, "family_t({t})"),
            Presentation::FamilyLambda(l) => write!(f, "family_lambda({l})"),
        }
    }
}

/// A matrix file: `vars:` and optional `param:` headers followed by comma-separated rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFile {
    pub vars: Vec<String>,
    pub param: Option<String>,
    pub rows: Vec<Vec<String>>,
}

pub fn parse_matrix_file(text: &str) -> Result<MatrixFile, VarietyError> {
    let mut vars = None;
    let mut param = None;
    let mut rows = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let split = |s: &str| s.split(',').map(|v| v.trim().to_string()).collect::<Vec<_>>();
        if let Some(rest) = line.strip_prefix("vars:") {
            vars = Some(split(rest));
        } else if let Some(rest) = line.strip_prefix("param:") {
            param = Some(rest.trim().to_string());
        } else {
            rows.push(split(line));
        }
        if rows.last().is_some_and(|r: &Vec<String>| r.iter().any(|e| e.is_empty())) {
            return Err(VarietyError::BadMatrixFile(format!("line {}: empty entry", n + 1)));
        }
    }
    let vars = vars.ok_or_else(|| VarietyError::BadMatrixFile("missing `vars:` header".into()))?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(VarietyError::BadMatrixFile("matrix is not square".into()));
    }
    Ok(MatrixFile { vars, param, rows })
}

impl MatrixFile {
    /// Entries as polynomials over `field`, with the parameter (if any) specialized to `value`.
    pub fn entries<F: Field>(&self, field: &F, value: Option<i64>) -> Result<(Arc<PolyRing<F>>, Matrix<Polynomial<F>>), VarietyError> {
        let ring = PolyRing::new(&self.vars, field.clone(), MonomialOrder::Grevlex)?;
        let mut all = self.vars.clone();
        all.extend(self.param.iter().cloned());
        let with_param = PolyRing::new(&all, field.clone(), MonomialOrder::Grevlex)?;
        let mut images: Vec<Polynomial<F>> = (0..ring.nvars()).map(|i| Polynomial::var(&ring, i)).collect();
        if self.param.is_some() {
            let v = value.ok_or_else(|| VarietyError::Invalid("parameter value required".into()))?;
            images.push(Polynomial::constant(&ring, field.from_i64(v)));
        }
        let m = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| Ok(parse_polynomial(e, &with_param)?.substitute(&images)?))
                    .collect::<Result<Vec<_>, VarietyError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((ring, m))
    }
}

/// A skew-symmetric matrix of linear forms.
#[derive(Clone, Debug)]
pub struct SkewPresentation<F: Field> {
    ring: Arc<PolyRing<F>>,
    entries: Matrix<Polynomial<F>>,
    discrepancies: Vec<String>,
}

impl<F: Field> SkewPresentation<F> {
    /// Skew matrix determined by the strict upper triangle of `printed`.
    ///
    /// Entries of the printed lower triangle that disagree with `-M^T` are
    /// recorded in [`Self::discrepancies`]; a nonzero diagonal is too.
    pub fn from_printed(ring: &Arc<PolyRing<F>>, printed: &Matrix<Polynomial<F>>) -> Result<Self, PolyError> {
        let n = printed.len();
        let mut entries = vec![vec![Polynomial::zero(ring); n]; n];
        let mut discrepancies = Vec::new();
        for i in 0..n {
            if printed[i].len() != n {
                return Err(PolyError::InvalidRing("matrix is not square".into()));
            }
            if !printed[i][i].is_zero() {
                discrepancies.push(format!("({}, {}) printed as {}, set to 0", i + 1, i + 1, printed[i][i]));
            }
            for j in i + 1..n {
                if printed[i][j].ring().as_ref() != ring.as_ref() {
                    return Err(PolyError::RingMismatch);
                }
                entries[i][j] = printed[i][j].clone();
                entries[j][i] = -&printed[i][j];
                if printed[j][i] != entries[j][i] {
                    discrepancies.push(format!(
                        "({}, {}) printed as {}, skew-symmetry gives {}",
                        j + 1,
                        i + 1,
                        printed[j][i],
                        entries[j][i]
                    ));
                }
            }
        }
        Ok(SkewPresentation {
            ring: ring.clone(),
            entries,
            discrepancies,
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &Matrix<Polynomial<F>> {
        &self.entries
    }

    /// Printed entries that disagree with the reconstructed matrix.
    pub fn discrepancies(&self) -> &[String] {
        &self.discrepancies
    }

    /// `m_ij m_kl − m_ik m_jl + m_il m_jk` for 0-based `i < j < k < l`.
    pub fn pfaffian(&self, [i, j, k, l]: [usize; 4]) -> Polynomial<F> {
        let m = &self.entries;
        &(&(&m[i][j] * &m[k][l]) - &(&m[i][k] * &m[j][l])) + &(&m[i][l] * &m[j][k])
    }

    /// All principal 4×4 Pfaffians, labelled by 1-based row indices, zeros included.
    pub fn pfaffians(&self) -> Vec<([usize; 4], Polynomial<F>)> {
        let n = self.size();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        out.push(([i + 1, j + 1, k + 1, l + 1], self.pfaffian([i, j, k, l])));
                    }
                }
            }
        }
        out
    }

    /// The ideal of 4×4 Pfaffians, zero Pfaffians dropped.
    pub fn pfaffian_ideal(&self) -> Ideal<F> {
        let gens = self.pfaffians().into_iter().map(|(_, p)| p).collect();
        Ideal::new(&self.ring, gens).expect("entries live in the presentation ring")
    }

    /// Apply a ring map to every entry.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<SkewPresentation<F>, PolyError> {
        let target = images
            .first()
            .map(|p| p.ring().clone())
            .ok_or(PolyError::ArityMismatch { expected: self.ring.nvars(), got: 0 })?;
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.substitute(images)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SkewPresentation {
            ring: target,
            entries,
            discrepancies: self.discrepancies.clone(),
        })
    }

    /// The principal submatrix on the given 0-based rows.
    pub fn submatrix(&self, rows: &[usize]) -> SkewPresentation<F> {
        SkewPresentation {
            ring: self.ring.clone(),
            entries: rows.iter().map(|&i| rows.iter().map(|&j| self.entries[i][j].clone()).collect()).collect(),
            discrepancies: Vec::new(),
        }
    }

    /// For a 7×7 matrix of linear forms: the bivector `Σ_{i<j} ∂M_ij/∂x · e_ij` of each variable `x`.
    pub fn span_vectors(&self) -> Result<Vec<Vec<F::Elem>>, VarietyError> {
        if self.size() != exterior::DIM {
            return Err(VarietyError::Invalid("span vectors need a 7×7 matrix".into()));
        }
        let field = self.ring.field();
        let pairs = plucker_pairs();
        let point = vec![field.zero(); self.ring.nvars()];
        Ok((0..self.ring.nvars())
            .map(|v| {
                pairs
                    .iter()
                    .map(|&(i, j)| self.entries[i - 1][j - 1].derivative(v).eval(&point))
                    .collect()
            })
            .collect())
    }

    /// Basis of the 4-forms `ω` with `p ∧ ω = 0` for every `p` in the span of the matrix.
    pub fn annihilating_forms(&self) -> Result<Vec<MultiVector<F::Elem>>, VarietyError> {
        let field = self.ring.field();
        let pairs = plucker_pairs();
        let spans = self.span_vectors()?;
        let four = basis_masks(4);
        let fours: Vec<MultiVector<F::Elem>> = four
            .iter()
            .map(|&m| MultiVector::from_terms(field, 4, vec![(mask_indices(m), field.one())]))
            .collect::<Result<_, _>>()?;
        let mut rows: Matrix<F::Elem> = Vec::new();
        for v in &spans {
            let terms: Vec<(Vec<usize>, F::Elem)> = pairs
                .iter()
                .zip(v)
                .filter(|(_, c)| !field.is_zero(c))
                .map(|(&(i, j), c)| (vec![i, j], c.clone()))
                .collect();
            let p = MultiVector::from_terms(field, 2, terms)?;
            let images: Vec<MultiVector<F::Elem>> = fours.iter().map(|w| p.wedge(w, field)).collect::<Result<_, _>>()?;
            for six in basis_masks(6) {
                let idx = mask_indices(six);
                rows.push(images.iter().map(|im| im.coefficient(&idx).cloned().unwrap_or_else(|| field.zero())).collect());
            }
        }
        kernel(field, &rows, four.len())
            .into_iter()
            .map(|k| {
                let terms = four.iter().zip(k).filter(|(_, c)| !field.is_zero(c)).map(|(&m, c)| (mask_indices(m), c)).collect();
                Ok(MultiVector::from_terms(field, 4, terms)?)
            })
            .collect()
    }
}

fn mask_indices(m: u8) -> Vec<usize> {
    (0..8).filter(|b| m & (1 << b) != 0).map(|b| b + 1).collect()
}

/// The printed matrix of `which` over `field`, parameters specialized.
pub fn build_presentation<F: Field>(field: &F, which: Presentation) -> Result<SkewPresentation<F>, VarietyError> {
    let file = parse_matrix_file(which.source())?;
    let (ring, printed) = file.entries(field, which.parameter())?;
    Ok(SkewPresentation::from_printed(&ring, &printed)?)
}

/// Hilbert data of a presentation next to that of the isotropic variety of its 4-form.
#[derive(Clone, Debug, Serialize)]
pub struct CrossValidation {
    pub presentation: HilbertData,
    pub intrinsic: HilbertData,
}

/// Compare the Pfaffian ideal of `which` with the intrinsic isotropic-variety construction.
///
/// Unequal Hilbert data is an error carrying both sides.
pub fn cross_validate<F: Field>(field: &F, which: Presentation, opts: &GbOptions) -> Result<CrossValidation, VarietyError> {
    let form = which
        .isotropic_form()
        .ok_or_else(|| VarietyError::Invalid(format!("{which} has no isotropic 4-form")))?;
    let pres = build_presentation(field, which)?;
    let presentation = hilbert_data(&pres.pfaffian_ideal(), opts)?;
    let iso = exterior::isotropic_variety_ideal(field, &exterior::to_field(field, &form))?;
    let intrinsic = hilbert_data(&iso.ideal, opts)?;
    if presentation != intrinsic {
        return Err(VarietyError::CrossValidation {
            which: which.to_string(),
            presentation: Box::new(presentation),
            intrinsic: Box::new(intrinsic),
        });
    }
    Ok(CrossValidation { presentation, intrinsic })
}

/// A Pfaffian that failed to vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PfaffianCertificate {
    pub rows: [usize; 4],
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParametrizationCheck {
    pub holds: bool,
    /// Every coordinate was zero, so the identity says nothing.
    pub vacuous: bool,
    pub pfaffians_checked: usize,
    pub counterexample: Option<PfaffianCertificate>,
}

/// Substitute `coords` (indexed like the presentation ring) and test every Pfaffian for zero.
pub fn verify_parametrization(
    pres: &SkewPresentation<Rationals>,
    coords: &[Polynomial<Rationals>],
) -> Result<ParametrizationCheck, VarietyError> {
    let sub = pres.substitute(coords)?;
    let pfs = sub.pfaffians();
    let counterexample = pfs.iter().find(|(_, p)| !p.is_zero()).map(|(rows, p)| PfaffianCertificate {
        rows: *rows,
        value: p.to_string(),
    });
    Ok(ParametrizationCheck {
        holds: counterexample.is_none(),
        vacuous: coords.iter().all(|c| c.is_zero()),
        pfaffians_checked: pfs.len(),
        counterexample,
    })
}

/// The printed `Ghat` matrix with the quadrics substituted, over `x, y, z, t, u, v`.
pub fn substituted_matrix<F: Field>(field: &F) -> Result<SkewPresentation<F>, VarietyError> {
    let file = parse_matrix_file(include_str!("../../data/substituted.matrix"))?;
    let (ring, printed) = file.entries(field, None)?;
    Ok(SkewPresentation::from_printed(&ring, &printed)?)
}

/// Coordinates read off a substituted matrix: wherever `pres` has the entry `c·x`, the
/// substituted entry divided by `c` is the image of `x`.
///
/// Returns the images (indexed like `pres.ring()`) and a message for every entry that
/// disagrees with the first occurrence of its variable.
pub fn coordinates_from_matrix<F: Field>(
    pres: &SkewPresentation<F>,
    substituted: &SkewPresentation<F>,
) -> Result<(Vec<Polynomial<F>>, Vec<String>), VarietyError> {
    let field = pres.ring().field();
    let n = pres.size();
    if substituted.size() != n {
        return Err(VarietyError::Invalid("matrix sizes differ".into()));
    }
    let mut images: Vec<Option<Polynomial<F>>> = vec![None; pres.ring().nvars()];
    let mut conflicts = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let e = &pres.entries()[i][j];
            if e.len() != 1 || e.degree() != Some(1) {
                continue;
            }
            let t = &e.terms()[0];
            let var = t.mono.exponents().iter().position(|&x| x == 1).expect("linear monomial");
            let inv = field.inv(&t.coeff).expect("nonzero coefficient");
            let value = substituted.entries()[i][j].scale(&inv);
            match &images[var] {
                None => images[var] = Some(value),
                Some(prev) if *prev != value => conflicts.push(format!(
                    "{} is {} at ({}, {}) but {} earlier",
                    pres.ring().variables()[var],
                    value,
                    i + 1,
                    j + 1,
                    prev
                )),
                Some(_) => {}
            }
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(k, im)| im.ok_or_else(|| VarietyError::Invalid(format!("{} never appears alone", pres.ring().variables()[k]))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((images, conflicts))
}

/// The coordinates `(a, ..., n)` of the parametrization of `Ghat`, read off the substituted matrix.
pub fn parametrization_coordinates<F: Field>(field: &F) -> Result<Vec<Polynomial<F>>, VarietyError> {
    let (coords, conflicts) = coordinates_from_matrix(&build_presentation(field, Presentation::Ghat)?, &substituted_matrix(field)?)?;
    if !conflicts.is_empty() {
        return Err(VarietyError::Invalid(conflicts.join("; ")));
    }
    Ok(coords)
}

/// Parse generator lines (after an optional `ring:` header) into `ring`.
pub(crate) fn parse_generators<F: Field>(text: &str, ring: &Arc<PolyRing<F>>) -> Result<Vec<Polynomial<F>>, PolyError> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty() && !l.starts_with("ring:"))
        .map(|l| parse_polynomial(l, ring))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::linalg::pfaffian;
    use crate::DEFAULT_PRIME;
    use proptest::prelude::*;

    #[test]
    fn generic_block_pfaffian() {
        let ring = PolyRing::new(&["a", "b", "c", "d", "e", "f"], Rationals, MonomialOrder::Grevlex).unwrap();
        let p = |s: &str| parse_polynomial(s, &ring).unwrap();
        let printed = vec![
            vec![p("0"), p("a"), p("b"), p("c")],
            vec![p("-a"), p("0"), p("d"), p("e")],
            vec![p("-b"), p("-d"), p("0"), p("f")],
            vec![p("-c"), p("-e"), p("-f"), p("0")],
        ];
        let m = SkewPresentation::from_printed(&ring, &printed).unwrap();
        assert!(m.discrepancies().is_empty());
        let ideal = m.pfaffian_ideal();
        assert_eq!(ideal.generators().len(), 1);
        assert_eq!(ideal.generators()[0], p("a*f - b*e + c*d"));

        let zero = SkewPresentation::from_printed(&ring, &vec![vec![p("0"); 5]; 5]).unwrap();
        assert!(zero.pfaffian_ideal().is_zero());
    }

    #[test]
    fn printed_matrices_parse() {
        for which in [Presentation::G2, Presentation::Ghat, Presentation::FamilyT(3), Presentation::FamilyLambda(2)] {
            let m = build_presentation(&Rationals, which).unwrap();
            assert_eq!(m.size(), 7);
            assert_eq!(m.pfaffians().len(), 35);
            for i in 0..7 {
                for j in 0..7 {
                    assert_eq!(m.entries()[i][j], -&m.entries()[j][i]);
                    assert!(m.entries()[i][j].is_zero() || m.entries()[i][j].degree() == Some(1));
                }
            }
        }
    }

    #[test]
    fn known_lower_triangle_discrepancies() {
        let ghat = build_presentation(&Rationals, Presentation::Ghat).unwrap();
        assert_eq!(ghat.discrepancies().len(), 1);
        assert!(ghat.discrepancies()[0].starts_with("(6, 3)"));
        assert!(build_presentation(&Rationals, Presentation::G2).unwrap().discrepancies().is_empty());
    }

    #[test]
    fn family_t_at_zero_is_ghat_matrix() {
        let a = build_presentation(&Rationals, Presentation::FamilyT(0)).unwrap();
        let b = build_presentation(&Rationals, Presentation::Ghat).unwrap();
        assert_eq!(a.entries(), b.entries());
    }

    #[test]
    fn span_has_one_annihilating_form() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        for which in [Presentation::G2, Presentation::Ghat, Presentation::FamilyT(5)] {
            let m = build_presentation(&f, which).unwrap();
            let spans = m.span_vectors().unwrap();
            assert_eq!(crate::linalg::rank(&f, &spans), 14);
            let forms = m.annihilating_forms().unwrap();
            assert_eq!(forms.len(), 1, "{which}");
        }
    }

    #[test]
    fn parametrization_of_ghat() {
        let ghat = build_presentation(&Rationals, Presentation::Ghat).unwrap();
        let coords = parametrization_coordinates(&Rationals).unwrap();
        let ring = coords[0].ring().clone();
        let check = verify_parametrization(&ghat, &coords).unwrap();
        assert!(check.holds && !check.vacuous);
        assert_eq!(check.pfaffians_checked, 35);

        let mut bad = coords.clone();
        bad[2] = parse_polynomial("y*t + x^2", &ring).unwrap();
        let check = verify_parametrization(&ghat, &bad).unwrap();
        assert!(!check.holds);
        let cert = check.counterexample.unwrap();
        assert!(cert.rows.contains(&3) || cert.rows.contains(&7));

        let zeros = vec![Polynomial::zero(&ring); 14];
        let check = verify_parametrization(&ghat, &zeros).unwrap();
        assert!(check.holds && check.vacuous);
    }

    #[test]
    fn substituted_matrix_is_the_substitution() {
        let ghat = build_presentation(&Rationals, Presentation::Ghat).unwrap();
        let coords = parametrization_coordinates(&Rationals).unwrap();
        let printed = substituted_matrix(&Rationals).unwrap();
        assert!(printed.discrepancies().is_empty());
        let sub = ghat.substitute(&coords).unwrap();
        assert_eq!(sub.entries(), printed.entries());
    }

    #[test]
    fn printed_list_differs_only_in_the_sign_of_n() {
        let coords = parametrization_coordinates(&Rationals).unwrap();
        let ring = coords[0].ring().clone();
        let list = printed_coordinates(&ring).unwrap();
        let differing: Vec<usize> = (0..14).filter(|&k| coords[k] != list[k]).collect();
        assert_eq!(differing, vec![13]);
        assert_eq!(coords[13], -&list[13]);
        let ghat = build_presentation(&Rationals, Presentation::Ghat).unwrap();
        let check = verify_parametrization(&ghat, &list).unwrap();
        assert!(!check.holds);
        assert!(check.counterexample.unwrap().rows.contains(&5));
    }

    #[test]
    fn matrix_file_errors() {
        assert!(matches!(parse_matrix_file("0, a\n-a, 0"), Err(VarietyError::BadMatrixFile(_))));
        assert!(matches!(parse_matrix_file("vars: a\n0, a\n-a"), Err(VarietyError::BadMatrixFile(_))));
        assert!(matches!(parse_matrix_file("vars: a\n0, \n-a, 0"), Err(VarietyError::BadMatrixFile(_))));
    }

    fn skew_from(upper: &[i64], n: usize) -> Matrix<num_rational::BigRational> {
        let mut m = vec![vec![num_rational::BigRational::from_integer(0.into()); n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                m[i][j] = num_rational::BigRational::from_integer(upper[k].into());
                m[j][i] = -m[i][j].clone();
                k += 1;
            }
        }
        m
    }

    proptest! {
        #[test]
        fn pfaffian_convention_squares_to_determinant(upper in proptest::collection::vec(-4i64..5, 21), perm in Just((0..7usize).collect::<Vec<_>>()).prop_shuffle()) {
            let ring = PolyRing::new(&["x"], Rationals, MonomialOrder::Grevlex).unwrap();
            let m = skew_from(&upper, 7);
            let printed: Matrix<Polynomial<Rationals>> = m.iter().map(|r| r.iter().map(|c| Polynomial::constant(&ring, c.clone())).collect()).collect();
            let pres = SkewPresentation::from_printed(&ring, &printed).unwrap();
            for (rows, pf) in pres.pfaffians() {
                let sub: Matrix<_> = rows.iter().map(|&i| rows.iter().map(|&j| m[i - 1][j - 1].clone()).collect()).collect();
                let det = crate::linalg::determinant(&Rationals, &sub);
                let c = pf.coefficient_of(&crate::Monomial::one(1));
                prop_assert_eq!(&c * &c, det);
                prop_assert_eq!(c, pfaffian(&Rationals, &sub));
            }
            // simultaneous permutation of rows and columns gives the same ideal up to sign
            let permuted: Matrix<Polynomial<Rationals>> = perm.iter().map(|&i| perm.iter().map(|&j| printed[i][j].clone()).collect()).collect();
            let q = SkewPresentation::from_printed(&ring, &permuted).unwrap();
            let mut a: Vec<_> = pres.pfaffians().into_iter().map(|(_, p)| p.coefficient_of(&crate::Monomial::one(1))).map(|c| if c < num_rational::BigRational::from_integer(0.into()) { -c } else { c }).collect();
            let mut b: Vec<_> = q.pfaffians().into_iter().map(|(_, p)| p.coefficient_of(&crate::Monomial::one(1))).map(|c| if c < num_rational::BigRational::from_integer(0.into()) { -c } else { c }).collect();
            a.sort();
            b.sort();
            prop_assert_eq!(a, b);
        }
    }
}

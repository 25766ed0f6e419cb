use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{plane_ideal, SkewPresentation, VarietyError, PLANE_VARS};
use crate::exterior::{plucker_coordinates, sample_isotropic_plane, MultiVector};
use crate::field::{Field, PrimeField};
use crate::groebner::{GbOptions, Ideal};
use crate::hilbert::{hilbert_data, HilbertData};
use crate::linalg::{kernel, rank, Matrix};
use crate::poly::{PolyRing, Polynomial, Term};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointProbe {
    pub rank: usize,
    pub smooth: bool,
}

/// Rank of the Jacobian matrix of `gens` at `point`.
pub fn jacobian_rank<F: Field>(gens: &[Polynomial<F>], point: &[F::Elem]) -> usize {
    let Some(ring) = gens.first().map(|g| g.ring().clone()) else {
        return 0;
    };
    let m: Matrix<F::Elem> = gens
        .iter()
        .map(|g| (0..ring.nvars()).map(|i| g.derivative(i).eval(point)).collect())
        .collect();
    rank(ring.field(), &m)
}

/// Classify each point by the Jacobian rank of the generators of `ideal`: smooth iff the rank is `expected_codim`.
pub fn smoothness_probe<F: Field>(
    ideal: &Ideal<F>,
    expected_codim: usize,
    points: &[Vec<F::Elem>],
) -> Result<Vec<PointProbe>, VarietyError> {
    let field = ideal.ring().field();
    points
        .iter()
        .enumerate()
        .map(|(n, pt)| {
            if pt.len() != ideal.ring().nvars() || pt.iter().all(|x| field.is_zero(x)) {
                return Err(VarietyError::Invalid(format!("point {n} is not a projective point")));
            }
            if ideal.generators().iter().any(|g| !field.is_zero(&g.eval(pt))) {
                return Err(VarietyError::NotOnVariety(n));
            }
            let rank = jacobian_rank(ideal.generators(), pt);
            Ok(PointProbe {
                rank,
                smooth: rank == expected_codim,
            })
        })
        .collect()
}

fn random_point<R: Rng>(p: u32, n: usize, rng: &mut R) -> Vec<u32> {
    loop {
        let v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// Push a random point of `P^5` through the quadrics `coords`.
pub fn sample_parametrized_point<R: Rng>(coords: &[Polynomial<PrimeField>], rng: &mut R) -> Vec<u32> {
    let ring = coords[0].ring();
    let p = ring.field().modulus();
    loop {
        let x = random_point(p, ring.nvars(), rng);
        let img: Vec<u32> = coords.iter().map(|q| q.eval(&x)).collect();
        if img.iter().any(|&c| c != 0) {
            return img;
        }
    }
}

/// Whether every coordinate other than `c, k, f` vanishes.
pub fn on_plane<F: Field>(ring: &PolyRing<F>, point: &[F::Elem]) -> bool {
    ring.variables()
        .iter()
        .zip(point)
        .all(|(v, x)| PLANE_VARS.contains(&v.as_str()) || ring.field().is_zero(x))
}

/// A random point of the plane `c, k, f`.
pub fn sample_plane_point<R: Rng>(ring: &PolyRing<PrimeField>, rng: &mut R) -> Vec<u32> {
    let p = ring.field().modulus();
    let vals = random_point(p, PLANE_VARS.len(), rng);
    ring.variables()
        .iter()
        .map(|v| PLANE_VARS.iter().position(|w| w == v).map_or(0, |k| vals[k]))
        .collect()
}

/// A random point on the variety of a 7×7 presentation, from an isotropic plane of its annihilating 4-form.
pub fn sample_g2_point<R: Rng>(pres: &SkewPresentation<PrimeField>, rng: &mut R) -> Result<Vec<u32>, VarietyError> {
    let field = pres.ring().field();
    let forms = pres.annihilating_forms()?;
    let [form]: [MultiVector<u32>; 1] = forms
        .try_into()
        .map_err(|f: Vec<_>| VarietyError::Invalid(format!("span has {} annihilating forms", f.len())))?;
    let (v1, v2) = sample_isotropic_plane(field, &form, rng, 50)
        .ok_or_else(|| VarietyError::Invalid("no isotropic plane found".into()))?;
    let p = plucker_coordinates(field, &v1, &v2);
    let spans = pres.span_vectors()?;
    let n = spans.len();
    // columns: span vectors, then -p; a kernel vector with last entry 1 gives the coordinates
    let m: Matrix<u32> = (0..p.len())
        .map(|r| spans.iter().map(|s| s[r]).chain(std::iter::once(field.neg(&p[r]))).collect())
        .collect();
    let sol = kernel(field, &m, n + 1)
        .into_iter()
        .find(|k| k[n] != 0)
        .ok_or_else(|| VarietyError::Invalid("isotropic plane outside the span".into()))?;
    let inv = field.inv(&sol[n]).expect("nonzero");
    Ok(sol[..n].iter().map(|x| field.mul(x, &inv)).collect())
}

fn random_form<R: Rng>(ring: &Arc<PolyRing<PrimeField>>, degree: u32, rng: &mut R) -> Polynomial<PrimeField> {
    let p = ring.field().modulus();
    let terms = ring
        .monomials_of_degree(degree)
        .into_iter()
        .map(|mono| Term { coeff: rng.gen_range(0..p), mono })
        .collect();
    Polynomial::from_terms(ring, terms)
}

/// Evidence for the node count of a section `X = V ∩ H ∩ Q` of `Ghat`.
#[derive(Clone, Debug, Serialize)]
pub struct NodeCount {
    pub seed: u64,
    /// Number of `(H, Q)` draws until a generic one was found.
    pub attempts: usize,
    pub section: HilbertData,
    /// `plane ∩ H ∩ Q`.
    pub plane_section: HilbertData,
    /// The binary quadric `Q|_{plane ∩ H}` has distinct roots.
    pub discriminant_nonzero: bool,
    /// Jacobian ranks of `(V, H, Q)` at sample points of the line `plane ∩ H`.
    pub line_ranks: Vec<usize>,
    pub expected_codim: usize,
    pub count: u64,
}

const MAX_SECTION_ATTEMPTS: usize = 5;
const LINE_SAMPLES: u32 = 20;

/// Count the nodes of a generic hyperplane-and-quadric section of `ideal` (the Pfaffian ideal of `Ghat`).
///
/// The singular points of `X` on the singular plane are `plane ∩ H ∩ Q`. Along the
/// line `L = plane ∩ H` every 10 × 10 minor of the Jacobian of `(V, H, Q)` restricts
/// to a polynomial of degree at most 10, so rank at most 9 at 20 points of `L`
/// forces rank deficiency on all of `L`. The count is then the degree of
/// `plane ∩ H ∩ Q`, reduced when the discriminant is nonzero.
pub fn node_count(ideal: &Ideal<PrimeField>, seed: u64, opts: &GbOptions) -> Result<NodeCount, VarietyError> {
    let ring = ideal.ring().clone();
    let field = ring.field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = hilbert_data(ideal, opts)?;
    let expected_codim = ring.nvars() - 1 - base.dim as usize + 2;
    let plane_idx: Vec<usize> = PLANE_VARS.iter().map(|v| ring.var_index(v).expect("plane coordinate")).collect();
    for attempt in 1..=MAX_SECTION_ATTEMPTS {
        let h = random_form(&ring, 1, &mut rng);
        let q = random_form(&ring, 2, &mut rng);
        let hc: Vec<u32> = plane_idx.iter().map(|&i| h.derivative(i).eval(&vec![0; ring.nvars()])).collect();
        let line = kernel(&field, &vec![hc], 3);
        if line.len() != 2 {
            continue;
        }
        let embed = |w: &[u32]| -> Vec<u32> {
            let mut pt = vec![0u32; ring.nvars()];
            for (k, &i) in plane_idx.iter().enumerate() {
                pt[i] = w[k];
            }
            pt
        };
        let (u1, u2) = (embed(&line[0]), embed(&line[1]));
        // Q(λ u1 + μ u2) = A λ² + B λμ + C μ²
        let qa = q.eval(&u1);
        let qc = q.eval(&u2);
        let sum: Vec<u32> = u1.iter().zip(&u2).map(|(a, b)| field.add(a, b)).collect();
        let qb = field.sub(&field.sub(&q.eval(&sum), &qa), &qc);
        let disc = field.sub(&field.mul(&qb, &qb), &field.mul(&field.from_i64(4), &field.mul(&qa, &qc)));
        let section = hilbert_data(&ideal.plus(&[h.clone(), q.clone()])?, opts)?;
        if section.dim != base.dim - 2 || field.is_zero(&disc) {
            continue;
        }
        let plane_section = hilbert_data(&plane_ideal(&ring)?.plus(&[h.clone(), q.clone()])?, opts)?;
        let mut gens = ideal.generators().to_vec();
        gens.push(h.clone());
        gens.push(q.clone());
        let mut line_ranks = Vec::new();
        for s in 0..LINE_SAMPLES {
            let sv = field.from_i64(s as i64);
            let pt: Vec<u32> = u1.iter().zip(&u2).map(|(a, b)| field.add(a, &field.mul(&sv, b))).collect();
            if ideal.generators().iter().any(|g| g.eval(&pt) != 0) {
                return Err(VarietyError::NotOnVariety(s as usize));
            }
            line_ranks.push(jacobian_rank(&gens, &pt));
        }
        let singular = line_ranks.iter().all(|&r| r < expected_codim);
        let count = if singular && plane_section.dim == 0 { plane_section.degree.unwrap_or(0) } else { 0 };
        return Ok(NodeCount {
            seed,
            attempts: attempt,
            section,
            plane_section,
            discriminant_nonzero: true,
            line_ranks,
            expected_codim,
            count,
        });
    }
    Err(VarietyError::NonGeneric(MAX_SECTION_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, MonomialOrder};
    use crate::varieties::{build_presentation, parametrization_coordinates, Presentation};
    use crate::DEFAULT_PRIME;

    #[test]
    fn jacobian_of_cone() {
        let f = PrimeField::new(7).unwrap();
        let ring = PolyRing::new(&["x", "y", "z"], f, MonomialOrder::Grevlex).unwrap();
        let g = vec![parse_polynomial("x*y - z^2", &ring).unwrap()];
        assert_eq!(jacobian_rank(&g, &[0, 0, 0]), 0);
        assert_eq!(jacobian_rank(&g, &[1, 0, 0]), 1);
        let ideal = Ideal::new(&ring, g).unwrap();
        assert!(matches!(smoothness_probe(&ideal, 1, &[vec![1, 1, 0]]), Err(VarietyError::NotOnVariety(0))));
        assert!(smoothness_probe(&ideal, 1, &[vec![0, 1, 0]]).unwrap()[0].smooth);
    }

    #[test]
    fn parametrized_points_lie_on_ghat() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let ghat = build_presentation(&f, Presentation::Ghat).unwrap().pfaffian_ideal();
        let coords = parametrization_coordinates(&f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts: Vec<Vec<u32>> = (0..10).map(|_| sample_parametrized_point(&coords, &mut rng)).collect();
        assert!(smoothness_probe(&ghat, 8, &pts).unwrap().iter().all(|p| p.smooth));
        let plane: Vec<Vec<u32>> = (0..5).map(|_| sample_plane_point(ghat.ring(), &mut rng)).collect();
        assert!(plane.iter().all(|p| on_plane(ghat.ring(), p)));
        assert!(smoothness_probe(&ghat, 8, &plane).unwrap().iter().all(|p| p.rank <= 7));
    }

    #[test]
    fn g2_points_are_smooth() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let pres = build_presentation(&f, Presentation::G2).unwrap();
        let ideal = pres.pfaffian_ideal();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pts: Vec<Vec<u32>> = (0..3).map(|_| sample_g2_point(&pres, &mut rng).unwrap()).collect();
        assert!(smoothness_probe(&ideal, 8, &pts).unwrap().iter().all(|p| p.smooth));
    }
}

//! Exact lattice polytopes: convex hulls, polar duals, face lattices, lattice
//! points, normalized volumes and the classification of 2-faces that locates
//! conifold strata of the associated toric variety.
//!
//! All arithmetic is over `BigRational`; vertices of polar duals may be rational.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, Rationals};
use crate::groebner::{GbOptions, GroebnerError, Ideal};
use crate::linalg::{determinant, kernel, rank, Matrix};
use crate::poly::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("no points given")]
    Empty,
    #[error("rows have different lengths")]
    Ragged,
    #[error("points span an affine space of dimension {rank} in rank {ambient}")]
    Degenerate { rank: usize, ambient: usize },
    #[error("the origin is not an interior point")]
    OriginNotInterior,
    #[error("polytope has non-integral vertices")]
    NotLattice,
    #[error("input is not a list of monomials of one degree")]
    NotMonomial,
    #[error("line {0}: expected whitespace-separated integers")]
    Parse(usize),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

type Point = Vec<BigRational>;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn is_integral(p: &[BigRational]) -> bool {
    p.iter().all(|x| x.is_integer())
}

/// Scale a nonzero rational vector to a primitive integer vector with the same direction.
fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| x / &g).collect()
}

/// Affine dimension of a point set.
fn affine_rank(points: &[&Point]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let diffs: Matrix<BigRational> = points[1..]
        .iter()
        .map(|p| p.iter().zip(points[0]).map(|(a, b)| a - b).collect())
        .collect();
    rank(&Rationals, &diffs)
}

/// A facet inequality `⟨normal, x⟩ ≥ rhs` with a primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Facet {
    #[serde(serialize_with = "ints_as_strings")]
    pub normal: Vec<BigInt>,
    #[serde(serialize_with = "rational_as_string")]
    pub rhs: BigRational,
}

fn ints_as_strings<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn rational_as_string<S: serde::Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl Facet {
    fn value(&self, x: &[BigRational]) -> BigRational {
        self.normal.iter().zip(x).map(|(a, b)| BigRational::from_integer(a.clone()) * b).sum::<BigRational>() - &self.rhs
    }
}

/// A full-dimensional convex polytope.
#[derive(Clone, Debug)]
pub struct Polytope {
    ambient: usize,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
    lattice: OnceLock<Vec<Vec<i64>>>,
}

impl Polytope {
    /// Convex hull of integer points.
    pub fn from_points(rows: &[Vec<i64>]) -> Result<Self, ToricError> {
        let pts: Vec<Point> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Polytope::from_rational_points(&pts)
    }

    /// Convex hull by brute force over affinely independent subsets: every
    /// hyperplane through `d` of the points with all points on one side is a facet.
    pub fn from_rational_points(points: &[Point]) -> Result<Self, ToricError> {
        let d = points.first().ok_or(ToricError::Empty)?.len();
        if points.iter().any(|p| p.len() != d) {
            return Err(ToricError::Ragged);
        }
        let mut pts: Vec<Point> = points.to_vec();
        pts.sort();
        pts.dedup();
        let refs: Vec<&Point> = pts.iter().collect();
        let r = affine_rank(&refs);
        if r < d || d == 0 {
            return Err(ToricError::Degenerate { rank: r, ambient: d });
        }
        let mut facets: Vec<Facet> = Vec::new();
        let mut seen = BTreeSet::new();
        for subset in combinations(pts.len(), d) {
            let rows: Matrix<BigRational> = subset
                .iter()
                .map(|&i| pts[i].iter().cloned().chain(std::iter::once(BigRational::one())).collect())
                .collect();
            let ker = kernel(&Rationals, &rows, d + 1);
            if ker.len() != 1 {
                continue;
            }
            let (a, beta) = ker[0].split_at(d);
            let vals: Vec<BigRational> = pts.iter().map(|p| dot(a, p) + &beta[0]).collect();
            let sign = if vals.iter().all(|v| !v.is_negative()) {
                BigRational::one()
            } else if vals.iter().all(|v| !v.is_positive()) {
                -BigRational::one()
            } else {
                continue;
            };
            let oriented: Vec<BigRational> = a.iter().map(|x| x * &sign).collect();
            let normal = primitive(&oriented);
            let on = pts.iter().find(|p| vals[pts.iter().position(|x| x == *p).expect("own point")].is_zero()).expect("hyperplane passes through subset");
            let rhs: BigRational = normal.iter().zip(on).map(|(a, b)| BigRational::from_integer(a.clone()) * b).sum();
            if seen.insert((normal.clone(), rhs.clone())) {
                facets.push(Facet { normal, rhs });
            }
        }
        facets.sort_by(|x, y| (&x.normal, &x.rhs).cmp(&(&y.normal, &y.rhs)));
        let vertices = pts
            .into_iter()
            .filter(|p| {
                let tight: Matrix<BigRational> = facets
                    .iter()
                    .filter(|f| f.value(p).is_zero())
                    .map(|f| f.normal.iter().map(|a| BigRational::from_integer(a.clone())).collect())
                    .collect();
                rank(&Rationals, &tight) == d
            })
            .collect();
        Ok(Polytope { ambient: d, vertices, facets, lattice: OnceLock::new() })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|v| is_integral(v))
    }

    /// Integer vertices, if all are integral.
    pub fn integer_vertices(&self) -> Result<Vec<Vec<i64>>, ToricError> {
        self.vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| if x.is_integer() { x.to_integer().to_i64().ok_or(ToricError::NotLattice) } else { Err(ToricError::NotLattice) })
                    .collect()
            })
            .collect()
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        self.facets.iter().all(|f| !f.value(x).is_negative())
    }

    pub fn contains_origin_in_interior(&self) -> bool {
        self.facets.iter().all(|f| f.rhs.is_negative())
    }

    /// `P* = {y : ⟨x, y⟩ ≥ −1 for all x ∈ P}`.
    pub fn dual(&self) -> Result<Polytope, ToricError> {
        if !self.contains_origin_in_interior() {
            return Err(ToricError::OriginNotInterior);
        }
        let mut vertices: Vec<Point> = self
            .facets
            .iter()
            .map(|f| f.normal.iter().map(|a| BigRational::from_integer(a.clone()) / -&f.rhs).collect())
            .collect();
        vertices.sort();
        let mut facets: Vec<Facet> = self
            .vertices
            .iter()
            .map(|v| {
                let normal = primitive(v);
                // ⟨v, y⟩ ≥ −1 with v = s · normal
                let idx = normal.iter().position(|a| !a.is_zero()).expect("vertex is not the origin");
                let s = &v[idx] / BigRational::from_integer(normal[idx].clone());
                Facet { normal, rhs: -BigRational::one() / s }
            })
            .collect();
        facets.sort_by(|x, y| (&x.normal, &x.rhs).cmp(&(&y.normal, &y.rhs)));
        Ok(Polytope {
            ambient: self.ambient,
            vertices,
            facets,
            lattice: OnceLock::new(),
        })
    }

    /// Reflexive: the origin is interior and the dual is a lattice polytope.
    pub fn is_reflexive(&self) -> bool {
        self.is_lattice() && self.dual().is_ok_and(|d| d.is_lattice())
    }

    /// Recompute the hull of the dual's vertices from scratch, dualize again and compare with `self`.
    pub fn double_dual_matches(&self) -> Result<bool, ToricError> {
        let dual = Polytope::from_rational_points(self.dual()?.vertices())?;
        let back = Polytope::from_rational_points(dual.dual()?.vertices())?;
        Ok(back.vertices == self.vertices && back.facets == self.facets)
    }

    /// Image under `x ↦ U x + b`.
    pub fn transform(&self, u: &[Vec<i64>], b: &[i64]) -> Result<Polytope, ToricError> {
        let pts: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| (0..self.ambient).map(|i| u[i].iter().zip(v).map(|(&a, x)| q(a) * x).sum::<BigRational>() + q(b[i])).collect())
            .collect();
        Polytope::from_rational_points(&pts)
    }

    /// Largest `r` such that a lattice translate of `P / r` is a lattice polytope.
    pub fn lattice_index(&self) -> Result<i64, ToricError> {
        let v = self.integer_vertices()?;
        let g = v[1..]
            .iter()
            .flat_map(|w| w.iter().zip(&v[0]).map(|(a, b)| a - b))
            .fold(0i64, |acc, x| acc.gcd(&x));
        Ok(g.max(1))
    }

    /// `(P − v₀) / r` for the first vertex `v₀` and `r` the lattice index.
    pub fn primitive_multiple(&self) -> Result<(i64, Polytope), ToricError> {
        let r = self.lattice_index()?;
        let v = self.integer_vertices()?;
        let rows: Vec<Vec<i64>> = v.iter().map(|w| w.iter().zip(&v[0]).map(|(a, b)| (a - b) / r).collect()).collect();
        Ok((r, Polytope::from_points(&rows)?))
    }

    /// Translate by `-c`.
    pub fn translate_to(&self, c: &[BigRational]) -> Result<Polytope, ToricError> {
        let pts: Vec<Point> = self.vertices.iter().map(|v| v.iter().zip(c).map(|(x, y)| x - y).collect()).collect();
        Polytope::from_rational_points(&pts)
    }

    fn bounding_box(&self, k: i64) -> Vec<(i64, i64)> {
        (0..self.ambient)
            .map(|i| {
                let lo = self.vertices.iter().map(|v| &v[i] * q(k)).min().expect("nonempty");
                let hi = self.vertices.iter().map(|v| &v[i] * q(k)).max().expect("nonempty");
                (lo.ceil().to_integer().to_i64().expect("small"), hi.floor().to_integer().to_i64().expect("small"))
            })
            .collect()
    }

    /// Lattice points of the dilation `k P`, in lexicographic order.
    pub fn lattice_points_dilated(&self, k: i64) -> Vec<Vec<i64>> {
        let bbox = self.bounding_box(k);
        let mut out = Vec::new();
        if bbox.iter().any(|(lo, hi)| lo > hi) {
            return out;
        }
        // ⟨a, x⟩ · den ≥ num · k with small integers
        let ineqs: Vec<(Vec<i64>, i64, i64)> = self
            .facets
            .iter()
            .map(|f| {
                let a = f.normal.iter().map(|x| x.to_i64().expect("small normal")).collect();
                let num = f.rhs.numer().to_i64().expect("small rhs") * k;
                let den = f.rhs.denom().to_i64().expect("small rhs");
                (a, num, den)
            })
            .collect();
        let mut cur: Vec<i64> = bbox.iter().map(|b| b.0).collect();
        loop {
            if ineqs.iter().all(|(a, num, den)| a.iter().zip(&cur).map(|(x, y)| x * y).sum::<i64>() * den >= *num) {
                out.push(cur.clone());
            }
            let mut i = self.ambient;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < bbox[i].1 {
                    cur[i] += 1;
                    break;
                }
                cur[i] = bbox[i].0;
            }
        }
    }

    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        self.lattice.get_or_init(|| self.lattice_points_dilated(1)).clone()
    }

    /// Lattice points not on any facet.
    pub fn interior_lattice_points(&self) -> Vec<Vec<i64>> {
        self.lattice_points()
            .into_iter()
            .filter(|p| {
                let x: Point = p.iter().map(|&c| q(c)).collect();
                self.facets.iter().all(|f| f.value(&x).is_positive())
            })
            .collect()
    }

    fn facet_vertex_sets(&self) -> Vec<BTreeSet<usize>> {
        self.facets
            .iter()
            .map(|f| (0..self.vertices.len()).filter(|&i| f.value(&self.vertices[i]).is_zero()).collect())
            .collect()
    }

    /// Faces by dimension (`faces[k]` = faces of dimension `k`), as sorted vertex index sets.
    pub fn faces(&self) -> Vec<Vec<BTreeSet<usize>>> {
        let d = self.ambient;
        let facet_sets = self.facet_vertex_sets();
        let mut by_dim: Vec<Vec<BTreeSet<usize>>> = vec![Vec::new(); d + 1];
        by_dim[d] = vec![(0..self.vertices.len()).collect()];
        by_dim[d - 1] = facet_sets.clone();
        for k in (1..d).rev() {
            let mut next: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
            for g in &by_dim[k] {
                for f in &facet_sets {
                    let meet: BTreeSet<usize> = g.intersection(f).copied().collect();
                    if meet.len() < k || meet == *g {
                        continue;
                    }
                    let pts: Vec<&Point> = meet.iter().map(|&i| &self.vertices[i]).collect();
                    if affine_rank(&pts) == k - 1 {
                        next.insert(meet);
                    }
                }
            }
            by_dim[k - 1] = next.into_iter().collect();
        }
        by_dim
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces().iter().map(|f| f.len()).collect()
    }

    /// Normalized volume `d! vol(P)` from a pulling triangulation; `reverse` pulls the last vertex first.
    pub fn normalized_volume_with(&self, reverse: bool) -> BigRational {
        let faces = self.faces();
        let mut memo: HashMap<BTreeSet<usize>, Vec<Vec<usize>>> = HashMap::new();
        let top = faces[self.ambient][0].clone();
        let simplices = pull(&top, self.ambient, &faces, reverse, &mut memo);
        simplices
            .iter()
            .map(|s| {
                let m: Matrix<BigRational> = s[1..]
                    .iter()
                    .map(|&i| self.vertices[i].iter().zip(&self.vertices[s[0]]).map(|(a, b)| a - b).collect())
                    .collect();
                determinant(&Rationals, &m).abs()
            })
            .sum()
    }

    pub fn normalized_volume(&self) -> BigRational {
        self.normalized_volume_with(false)
    }

    /// Lattice points of `P` lying in the face with the given vertex indices.
    pub fn face_lattice_points(&self, face: &BTreeSet<usize>) -> Vec<Vec<i64>> {
        let tight: Vec<&Facet> = self
            .facets
            .iter()
            .filter(|f| face.iter().all(|&i| f.value(&self.vertices[i]).is_zero()))
            .collect();
        self.lattice_points()
            .into_iter()
            .filter(|p| {
                let x: Point = p.iter().map(|&c| q(c)).collect();
                tight.iter().all(|f| f.value(&x).is_zero())
            })
            .collect()
    }

    /// The face of the dual polytope dual to `face` (vertex indices of `P*`, i.e. facet indices of `P`).
    pub fn dual_face(&self, face: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut dual_vertices: Vec<(Point, usize)> = self
            .facets
            .iter()
            .enumerate()
            .map(|(k, f)| (f.normal.iter().map(|a| BigRational::from_integer(a.clone()) / -&f.rhs).collect(), k))
            .collect();
        dual_vertices.sort();
        dual_vertices
            .iter()
            .enumerate()
            .filter(|(_, (_, k))| face.iter().all(|&i| self.facets[*k].value(&self.vertices[i]).is_zero()))
            .map(|(pos, _)| pos)
            .collect()
    }
}

fn pull(
    face: &BTreeSet<usize>,
    dim: usize,
    faces: &[Vec<BTreeSet<usize>>],
    reverse: bool,
    memo: &mut HashMap<BTreeSet<usize>, Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if let Some(s) = memo.get(face) {
        return s.clone();
    }
    let out = if dim == 0 {
        vec![face.iter().copied().collect()]
    } else {
        let apex = if reverse { *face.iter().next_back().expect("nonempty") } else { *face.iter().next().expect("nonempty") };
        let mut out = Vec::new();
        for sub in faces[dim - 1].iter().filter(|s| s.is_subset(face) && !s.contains(&apex)) {
            for mut simplex in pull(sub, dim - 1, faces, reverse, memo) {
                simplex.insert(0, apex);
                out.push(simplex);
            }
        }
        out
    };
    memo.insert(face.clone(), out.clone());
    out
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Lattice points and normalized volume.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EhrhartInvariants {
    pub lattice_points: usize,
    #[serde(serialize_with = "rational_as_string")]
    pub normalized_volume: BigRational,
}

pub fn ehrhart_invariants(p: &Polytope) -> Result<EhrhartInvariants, ToricError> {
    if !p.is_lattice() {
        return Err(ToricError::NotLattice);
    }
    Ok(EhrhartInvariants {
        lattice_points: p.lattice_points().len(),
        normalized_volume: p.normalized_volume(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoFaceKind {
    UnimodularTriangle,
    UnitParallelogram,
    Other,
}

/// One 2-face of `P` and the dual 2-face of `P*` (for 5-dimensional `P`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoFace {
    pub vertices: Vec<Vec<String>>,
    pub kind: TwoFaceKind,
    pub lattice_points: usize,
    /// Normalized area `2i + b − 2` of the dual face, when it is a lattice polygon.
    pub dual_face_area: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceReport {
    pub f_vector: Vec<usize>,
    pub unimodular_triangles: usize,
    pub unit_parallelograms: usize,
    pub other: usize,
    pub two_faces: Vec<TwoFace>,
}

/// Normalized area of a lattice polygon from its lattice points: `2i + b − 2`.
fn polygon_area(p: &Polytope, face: &BTreeSet<usize>, edges: &[BTreeSet<usize>]) -> usize {
    let pts = p.face_lattice_points(face);
    let boundary: BTreeSet<Vec<i64>> = edges
        .iter()
        .filter(|e| e.is_subset(face))
        .flat_map(|e| p.face_lattice_points(e))
        .collect();
    let b = boundary.len();
    let i = pts.len() - b;
    2 * i + b - 2
}

fn classify(p: &Polytope, face: &BTreeSet<usize>) -> (TwoFaceKind, usize) {
    let n = p.face_lattice_points(face).len();
    let v: Vec<&Point> = face.iter().map(|&i| &p.vertices[i]).collect();
    let kind = match (v.len(), n) {
        (3, 3) => TwoFaceKind::UnimodularTriangle,
        (4, 4) => {
            let sum = |a: &Point, b: &Point| a.iter().zip(b).map(|(x, y)| x + y).collect::<Point>();
            let parallel = [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)].iter().any(|&(a, b, c, d)| sum(v[a], v[b]) == sum(v[c], v[d]));
            if parallel {
                TwoFaceKind::UnitParallelogram
            } else {
                TwoFaceKind::Other
            }
        }
        _ => TwoFaceKind::Other,
    };
    (kind, n)
}

/// Classify the 2-faces of a lattice polytope; triangles and parallelograms without extra lattice points.
pub fn two_face_classification(p: &Polytope) -> Result<FaceReport, ToricError> {
    if !p.is_lattice() {
        return Err(ToricError::NotLattice);
    }
    let faces = p.faces();
    let dual = if p.is_reflexive() { Some(p.dual()?) } else { None };
    let dual_faces = dual.as_ref().map(|d| d.faces());
    let mut two_faces = Vec::new();
    for face in faces.get(2).into_iter().flatten() {
        let (kind, lattice_points) = classify(p, face);
        let dual_face_area = match (&dual, &dual_faces) {
            (Some(d), Some(df)) if p.ambient == 5 => Some(polygon_area(d, &p.dual_face(face), &df[1])),
            _ => None,
        };
        two_faces.push(TwoFace {
            vertices: face.iter().map(|&i| p.vertices[i].iter().map(|x| x.to_string()).collect()).collect(),
            kind,
            lattice_points,
            dual_face_area,
        });
    }
    let count = |k: TwoFaceKind| two_faces.iter().filter(|f| f.kind == k).count();
    Ok(FaceReport {
        f_vector: faces.iter().map(|f| f.len()).collect(),
        unimodular_triangles: count(TwoFaceKind::UnimodularTriangle),
        unit_parallelograms: count(TwoFaceKind::UnitParallelogram),
        other: count(TwoFaceKind::Other),
        two_faces,
    })
}

/// A codimension-3 torus orbit closure with a conifold singularity: the cone over a unit
/// parallelogram 2-face of `P`, and the dual 2-face of `Δ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConifoldStratum {
    pub parallelogram: Vec<Vec<i64>>,
    /// Lattice points of the dual face, in the coordinates of `Δ`.
    pub face_points: Vec<Vec<i64>>,
    /// Normalized area of the dual face in `Δ`: the degree of the stratum.
    pub degree: usize,
}

#[derive(Clone, Debug)]
pub struct ToricStrata {
    /// `P* = index · Δ` up to translation.
    pub index: i64,
    pub delta: Polytope,
    pub strata: Vec<ConifoldStratum>,
}

impl ToricStrata {
    /// Nodes of a generic section by a hyperplane and a quadric: each stratum of degree `d` meets it in `2d` points.
    pub fn node_count(&self) -> usize {
        self.strata.iter().map(|s| 2 * s.degree).sum()
    }
}

/// Conifold strata of the toric variety whose fan is spanned by the faces of the reflexive polytope `P`.
pub fn conifold_strata(p: &Polytope) -> Result<ToricStrata, ToricError> {
    let report = two_face_classification(p)?;
    let dual = p.dual()?;
    let dv = dual.integer_vertices()?;
    let (index, delta) = dual.primitive_multiple()?;
    let faces = p.faces();
    let to_delta = |y: &[i64]| -> Option<Vec<i64>> {
        let diff: Vec<i64> = y.iter().zip(&dv[0]).map(|(a, b)| a - b).collect();
        diff.iter().all(|x| x % index == 0).then(|| diff.iter().map(|x| x / index).collect())
    };
    let mut strata = Vec::new();
    for (face, info) in faces[2].iter().zip(&report.two_faces) {
        if info.kind != TwoFaceKind::UnitParallelogram {
            continue;
        }
        let dual_face = p.dual_face(face);
        let mut face_points: Vec<Vec<i64>> = dual.face_lattice_points(&dual_face).iter().filter_map(|y| to_delta(y)).collect();
        face_points.sort();
        let area = info.dual_face_area.ok_or(ToricError::NotLattice)?;
        strata.push(ConifoldStratum {
            parallelogram: face.iter().map(|&i| p.vertices[i].iter().map(|x| x.to_integer().to_i64().expect("lattice")).collect()).collect(),
            face_points,
            degree: area / (index * index) as usize,
        });
    }
    Ok(ToricStrata { index, delta, strata })
}

/// Exponent vectors of monomials of one degree `k`, in the affine lattice `{e : Σ e = k}` with
/// coordinates `e_1..e_{n-1}`.
pub fn exponent_polytope(monomials: &[Monomial]) -> Result<Polytope, ToricError> {
    let first = monomials.first().ok_or(ToricError::Empty)?;
    let n = first.nvars();
    if n < 2 || monomials.iter().any(|m| m.nvars() != n || m.degree() != first.degree()) {
        return Err(ToricError::NotMonomial);
    }
    let rows: Vec<Vec<i64>> = monomials.iter().map(|m| (0..n - 1).map(|i| m.exponent(i) as i64).collect()).collect();
    Polytope::from_points(&rows)
}

/// Result of a search for a unimodular affine map between two lattice polytopes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Equivalence {
    /// `x ↦ U x + b` maps `P` onto `Q`.
    Found { matrix: Vec<Vec<i64>>, translation: Vec<i64>, nodes: u64 },
    NotEquivalent { nodes: u64 },
    BudgetExhausted { nodes: u64 },
}

pub const EQUIVALENCE_BUDGET: u64 = 1_000_000;

/// Backtracking over images of an affine frame of `P`'s vertices.
pub fn lattice_equivalent(p: &Polytope, q: &Polytope, budget: u64) -> Result<Equivalence, ToricError> {
    let pv = p.integer_vertices()?;
    let qv = q.integer_vertices()?;
    let d = p.ambient;
    if d != q.ambient || pv.len() != qv.len() || p.facets.len() != q.facets.len() {
        return Ok(Equivalence::NotEquivalent { nodes: 0 });
    }
    // facet degree of each vertex is invariant
    let degree = |poly: &Polytope, vs: &[Vec<i64>]| -> Vec<usize> {
        vs.iter()
            .map(|v| {
                let x: Point = v.iter().map(|&c| q_of(c)).collect();
                poly.facets.iter().filter(|f| f.value(&x).is_zero()).count()
            })
            .collect()
    };
    let (pdeg, qdeg) = (degree(p, &pv), degree(q, &qv));
    let mut a = pdeg.clone();
    let mut b = qdeg.clone();
    a.sort();
    b.sort();
    if a != b {
        return Ok(Equivalence::NotEquivalent { nodes: 0 });
    }
    let frame = affine_frame(&pv).ok_or(ToricError::Degenerate { rank: 0, ambient: d })?;
    let v_mat: Matrix<BigRational> = (0..d).map(|i| (1..=d).map(|k| q_of(pv[frame[k]][i] - pv[frame[0]][i])).collect()).collect();
    let v_inv = invert(&v_mat).expect("frame is affinely independent");
    let qset: BTreeSet<Vec<i64>> = qv.iter().cloned().collect();
    let mut nodes = 0u64;
    let mut chosen: Vec<usize> = Vec::new();
    let mut used = vec![false; qv.len()];
    let result = search(&pv, &qv, &pdeg, &qdeg, &frame, &v_inv, &qset, &mut chosen, &mut used, &mut nodes, budget);
    Ok(match result {
        Some(Some((matrix, translation))) => Equivalence::Found { matrix, translation, nodes },
        Some(None) => Equivalence::NotEquivalent { nodes },
        None => Equivalence::BudgetExhausted { nodes },
    })
}

impl Equivalence {
    /// Preimage of `y` under the found map.
    pub fn preimage(&self, y: &[i64]) -> Option<Vec<i64>> {
        let Equivalence::Found { matrix, translation, .. } = self else {
            return None;
        };
        let u: Matrix<BigRational> = matrix.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let inv = invert(&u)?;
        let shifted: Vec<BigRational> = y.iter().zip(translation).map(|(a, b)| q(a - b)).collect();
        inv.iter()
            .map(|r| {
                let v = dot(r, &shifted);
                v.is_integer().then(|| v.to_integer().to_i64()).flatten()
            })
            .collect()
    }
}

fn q_of(n: i64) -> BigRational {
    q(n)
}

type AffineMap = (Vec<Vec<i64>>, Vec<i64>);

/// `Some(Some(map))` found, `Some(None)` exhausted the tree, `None` ran out of budget.
#[allow(clippy::too_many_arguments)]
fn search(
    pv: &[Vec<i64>],
    qv: &[Vec<i64>],
    pdeg: &[usize],
    qdeg: &[usize],
    frame: &[usize],
    v_inv: &Matrix<BigRational>,
    qset: &BTreeSet<Vec<i64>>,
    chosen: &mut Vec<usize>,
    used: &mut [bool],
    nodes: &mut u64,
    budget: u64,
) -> Option<Option<AffineMap>> {
    if chosen.len() == frame.len() {
        let d = pv[0].len();
        let w: Matrix<BigRational> = (0..d).map(|i| (1..=d).map(|k| q_of(qv[chosen[k]][i] - qv[chosen[0]][i])).collect()).collect();
        let u = mat_mul(&w, v_inv);
        if u.iter().flatten().any(|x| !x.is_integer()) || determinant(&Rationals, &u).abs() != BigRational::one() {
            return Some(None);
        }
        let ui: Vec<Vec<i64>> = u.iter().map(|r| r.iter().map(|x| x.to_integer().to_i64().expect("small")).collect()).collect();
        let apply = |x: &[i64]| -> Vec<i64> { (0..d).map(|i| (0..d).map(|j| ui[i][j] * x[j]).sum::<i64>()).collect() };
        let base = apply(&pv[frame[0]]);
        let b: Vec<i64> = (0..d).map(|i| qv[chosen[0]][i] - base[i]).collect();
        let all = pv.iter().all(|x| {
            let y: Vec<i64> = apply(x).iter().zip(&b).map(|(a, c)| a + c).collect();
            qset.contains(&y)
        });
        return Some(if all { Some((ui, b)) } else { None });
    }
    let src = frame[chosen.len()];
    for t in 0..qv.len() {
        if used[t] || qdeg[t] != pdeg[src] {
            continue;
        }
        *nodes += 1;
        if *nodes > budget {
            return None;
        }
        used[t] = true;
        chosen.push(t);
        let r = search(pv, qv, pdeg, qdeg, frame, v_inv, qset, chosen, used, nodes, budget);
        chosen.pop();
        used[t] = false;
        match r {
            Some(Some(m)) => return Some(Some(m)),
            Some(None) => {}
            None => return None,
        }
    }
    Some(None)
}

fn affine_frame(vs: &[Vec<i64>]) -> Option<Vec<usize>> {
    let d = vs[0].len();
    let pts: Vec<Point> = vs.iter().map(|v| v.iter().map(|&c| q(c)).collect()).collect();
    let mut frame = vec![0usize];
    for i in 1..vs.len() {
        let mut trial = frame.clone();
        trial.push(i);
        let refs: Vec<&Point> = trial.iter().map(|&k| &pts[k]).collect();
        if affine_rank(&refs) == trial.len() - 1 {
            frame = trial;
        }
        if frame.len() == d + 1 {
            return Some(frame);
        }
    }
    None
}

fn mat_mul(a: &Matrix<BigRational>, b: &Matrix<BigRational>) -> Matrix<BigRational> {
    (0..a.len())
        .map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

fn invert(m: &Matrix<BigRational>) -> Option<Matrix<BigRational>> {
    let n = m.len();
    let mut aug: Matrix<BigRational> = m
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().cloned().chain((0..n).map(|j| if i == j { q(1) } else { q(0) })).collect())
        .collect();
    let pivots = crate::linalg::rref(&Rationals, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Every element of the reduced Gröbner basis has at most two terms.
pub fn is_binomial<F: Field>(ideal: &Ideal<F>, opts: &GbOptions) -> Result<bool, ToricError> {
    Ok(ideal.groebner(opts)?.basis().iter().all(|g| g.len() <= 2))
}

/// Polytope file: one integer vector per line, whitespace separated; `#` comments.
pub fn parse_polytope_file(text: &str) -> Result<Vec<Vec<i64>>, ToricError> {
    let mut rows = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| ToricError::Parse(n + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ToricError::Empty);
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(ToricError::Ragged);
    }
    Ok(rows)
}

pub fn write_polytope_file(rows: &[Vec<i64>]) -> String {
    let mut s = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}

/// The printed 9-vertex polytope.
pub fn polytope_t1() -> Vec<Vec<i64>> {
    parse_polytope_file(include_str!("../data/polytope_T1.txt")).expect("golden file")
}

/// The printed 10-vertex polytope.
pub fn polytope_t2() -> Vec<Vec<i64>> {
    parse_polytope_file(include_str!("../data/polytope_T2.txt")).expect("golden file")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::{parse_polynomial, MonomialOrder, PolyRing};
    use proptest::prelude::*;

    fn simplex(d: usize) -> Vec<Vec<i64>> {
        let mut rows = vec![vec![0; d]];
        for i in 0..d {
            let mut r = vec![0; d];
            r[i] = 1;
            rows.push(r);
        }
        rows
    }

    #[test]
    fn unit_simplex() {
        let p = Polytope::from_points(&simplex(5)).unwrap();
        assert_eq!(p.vertices().len(), 6);
        assert_eq!(p.facets().len(), 6);
        let e = ehrhart_invariants(&p).unwrap();
        assert_eq!(e.lattice_points, 6);
        assert_eq!(e.normalized_volume, q(1));
        assert_eq!(two_face_classification(&p).unwrap().unit_parallelograms, 0);
        assert_eq!(p.f_vector(), vec![6, 15, 20, 15, 6, 1]);
    }

    #[test]
    fn square_and_diamond() {
        let sq = Polytope::from_points(&[vec![-1, -1], vec![1, -1], vec![-1, 1], vec![1, 1], vec![0, 0]]).unwrap();
        assert_eq!(sq.vertices().len(), 4);
        let d = sq.dual().unwrap();
        let expected: Vec<Point> = vec![vec![q(-1), q(0)], vec![q(0), q(-1)], vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(d.vertices(), expected.as_slice());
        assert!(sq.is_reflexive());
        assert!(sq.double_dual_matches().unwrap());
        assert_eq!(sq.normalized_volume(), q(8));
        assert_eq!(sq.lattice_points().len(), 9);
        assert_eq!(sq.lattice_points_dilated(2).len(), 25);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(Polytope::from_points(&[vec![0, 0], vec![1, 1], vec![2, 2]]), Err(ToricError::Degenerate { rank: 1, ambient: 2 })));
        let off = Polytope::from_points(&[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        assert!(matches!(off.dual(), Err(ToricError::OriginNotInterior)));
        assert!(matches!(parse_polytope_file("1 2\n3"), Err(ToricError::Ragged)));
        assert!(matches!(parse_polytope_file("1 x"), Err(ToricError::Parse(1))));
    }

    #[test]
    fn veronese_segment() {
        let r = PolyRing::new(&["x", "y"], Rationals, MonomialOrder::Grevlex).unwrap();
        let monos: Vec<Monomial> = ["x^2", "x*y", "y^2"].iter().map(|s| parse_polynomial(s, &r).unwrap().leading_monomial().unwrap()).collect();
        let p = exponent_polytope(&monos).unwrap();
        assert_eq!(p.vertices(), &[vec![q(0)], vec![q(2)]]);
        assert_eq!(p.lattice_points().len(), 3);
        assert_eq!(p.normalized_volume(), q(2));
    }

    #[test]
    fn square_versus_triangle() {
        let sq = Polytope::from_points(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let tri = Polytope::from_points(&[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        assert!(matches!(lattice_equivalent(&sq, &tri, EQUIVALENCE_BUDGET).unwrap(), Equivalence::NotEquivalent { .. }));
        assert!(matches!(lattice_equivalent(&sq, &sq, EQUIVALENCE_BUDGET).unwrap(), Equivalence::Found { .. }));
    }

    #[test]
    fn binomial_check() {
        let f = PrimeField::new(101).unwrap();
        let r = PolyRing::new(&["x", "y", "z"], f, MonomialOrder::Grevlex).unwrap();
        assert!(is_binomial(&Ideal::parse(&r, &["x^2 - y*z"]).unwrap(), &GbOptions::default()).unwrap());
        assert!(!is_binomial(&Ideal::parse(&r, &["x^2 - y*z + z^2"]).unwrap(), &GbOptions::default()).unwrap());
    }

    #[test]
    fn golden_polytopes_have_printed_sizes() {
        assert_eq!(polytope_t1().len(), 9);
        assert_eq!(polytope_t2().len(), 10);
        assert!(polytope_t1().iter().chain(&polytope_t2()).all(|r| r.len() == 5));
        assert_eq!(parse_polytope_file(&write_polytope_file(&polytope_t1())).unwrap(), polytope_t1());
    }

    fn unimodular(ops: &[(usize, usize, i64)], d: usize) -> Vec<Vec<i64>> {
        let mut u: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
        for &(i, j, c) in ops {
            if i % d == j % d {
                u.swap(i % d, (j + 1) % d);
                continue;
            }
            for k in 0..d {
                let add = c * u[j % d][k];
                u[i % d][k] += add;
            }
        }
        u
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn invariants_survive_unimodular_maps(ops in proptest::collection::vec((0usize..5, 0usize..5, -1i64..2), 1..5), b in proptest::collection::vec(-3i64..4, 5), second in any::<bool>()) {
            let rows = if second { polytope_t2() } else { polytope_t1() };
            let p = Polytope::from_points(&rows).unwrap();
            let u = unimodular(&ops, 5);
            let img = p.transform(&u, &b).unwrap();
            prop_assert_eq!(img.lattice_points().len(), p.lattice_points().len());
            prop_assert_eq!(img.normalized_volume(), p.normalized_volume());
            prop_assert_eq!(img.f_vector(), p.f_vector());
            let (a, c) = (two_face_classification(&img).unwrap(), two_face_classification(&p).unwrap());
            prop_assert_eq!((a.unimodular_triangles, a.unit_parallelograms, a.other), (c.unimodular_triangles, c.unit_parallelograms, c.other));
            let found = lattice_equivalent(&p, &img, EQUIVALENCE_BUDGET).unwrap();
            prop_assert!(matches!(found, Equivalence::Found { .. }), "{:?}", found);
        }
    }
}

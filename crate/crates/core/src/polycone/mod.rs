//! Exact rational polyhedral geometry.
//!
//! Cones are given by generators in `ℤ^l`, polyhedra by integer inequality
//! systems `{u : ⟨u, v_i⟩ ≥ -φ_i}`. Inequality and generator descriptions
//! are converted into each other by double description ([`dd`]).

pub mod dd;
mod hilbert;
mod lattice;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmat::{self, dot, primitive, IntMatrix, RatVector};

pub use hilbert::{hilbert_basis, hilbert_basis_with, HilbertBasis};
pub use lattice::{lattice_points, lattice_points_with};

/// The cone `ℝ≥0 · generators` in `ℝ^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCone {
    dim: usize,
    generators: Vec<Vec<BigInt>>,
}

impl RationalCone {
    /// Zero generators are dropped.
    pub fn new(dim: usize, generators: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.len(),
            });
        }
        let generators = generators
            .into_iter()
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .collect();
        Ok(Self { dim, generators })
    }

    pub fn from_i64(dim: usize, generators: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            dim,
            generators.iter().map(|g| exactmat::to_bigint_vec(g)).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// Lineality basis and extreme rays of the dual cone.
    pub fn dual_generators(&self) -> dd::ConeGenerators {
        dd::cone_from_inequalities(self.dim, &self.generators)
    }

    /// Inequalities `h·x ≥ 0` cutting out this cone.
    pub fn inequalities(&self) -> Vec<Vec<BigInt>> {
        self.dual_generators().all()
    }
}

/// `{u ∈ ℝ^dim : ⟨u, v_i⟩ ≥ -φ_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    dim: usize,
    rows: Vec<(Vec<BigInt>, BigInt)>,
}

impl Polyhedron {
    pub fn new(dim: usize, rows: Vec<(Vec<BigInt>, BigInt)>) -> Result<Self> {
        if let Some((v, _)) = rows.iter().find(|(v, _)| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        Ok(Self { dim, rows })
    }

    pub fn from_i64(dim: usize, rows: &[(Vec<i64>, i64)]) -> Result<Self> {
        Self::new(
            dim,
            rows.iter()
                .map(|(v, c)| (exactmat::to_bigint_vec(v), BigInt::from(*c)))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[(Vec<BigInt>, BigInt)] {
        &self.rows
    }

    pub fn normals(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|(v, _)| v.clone()).collect()
    }

    pub fn contains(&self, u: &[BigInt]) -> bool {
        self.rows.iter().all(|(v, phi)| dot(u, v) >= -phi)
    }
}

/// Outcome of a half-space containment test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HalfspaceResult {
    /// Every vector pairs nonnegatively with this primitive nonzero normal.
    ContainedWith(Vec<BigInt>),
    NotContained,
}

impl HalfspaceResult {
    pub fn is_contained(&self) -> bool {
        matches!(self, HalfspaceResult::ContainedWith(_))
    }
}

/// Whether `w` is a nonnegative combination of the generators of `cone`.
pub fn cone_contains(cone: &RationalCone, w: &[BigInt]) -> Result<bool> {
    if w.len() != cone.dim {
        return Err(Error::DimensionMismatch {
            expected: cone.dim,
            found: w.len(),
        });
    }
    Ok(satisfies(&cone.inequalities(), w))
}

fn satisfies(inequalities: &[Vec<BigInt>], w: &[BigInt]) -> bool {
    inequalities.iter().all(|h| !dot(h, w).is_negative())
}

/// The dual cone `{u : ⟨u, v⟩ ≥ 0 ∀ v ∈ C}`, generated by its extreme rays
/// (sorted) followed by `±` a lineality basis.
pub fn dual_cone(cone: &RationalCone) -> RationalCone {
    RationalCone {
        dim: cone.dim,
        generators: cone.dual_generators().all(),
    }
}

/// Given `C ⊆ H_u`, decides whether `ℝ≥0(C ∪ ws)` still lies in a half-space.
///
/// The vectors are added one at a time. A vector already in the current
/// cone is skipped; otherwise the new cone's facet normals are recomputed
/// and one orthogonal to the added vector becomes the running normal.
pub fn is_in_halfspace_extend(
    ws: &[Vec<BigInt>],
    cone: &RationalCone,
    u: &RatVector,
) -> HalfspaceResult {
    let dim = cone.dim;
    let mut generators = cone.generators.clone();
    let mut normal = u.to_primitive_integer();
    let mut facets: Option<Vec<Vec<BigInt>>> = None;

    for w in ws {
        if w.iter().all(Zero::is_zero) {
            continue;
        }
        let current = facets.get_or_insert_with(|| dd::cone_from_inequalities(dim, &generators).all());
        if satisfies(current, w) {
            continue;
        }
        generators.push(w.clone());
        let dual = dd::cone_from_inequalities(dim, &generators).all();
        let Some(next) = dual
            .iter()
            .find(|h| dot(h, w).is_zero())
            .or_else(|| dual.first())
        else {
            return HalfspaceResult::NotContained;
        };
        normal = next.clone();
        facets = Some(dual);
    }
    HalfspaceResult::ContainedWith(normal)
}

/// Decides whether all of `vectors` (in `ℝ^dim`) lie in one closed
/// half-space, i.e. whether `⟨u, v_i⟩ ≥ 0 ∀ i` has a nonzero solution.
///
/// Rank-deficient sets are contained in the half-space of any normal to their
/// span. Otherwise `l` independent vectors seed a simplicial cone and one of
/// its facet normals, and the rest are added by [`is_in_halfspace_extend`].
pub fn rays_in_halfspace(dim: usize, vectors: &[Vec<BigInt>]) -> HalfspaceResult {
    if dim == 0 {
        return HalfspaceResult::NotContained;
    }
    let mut chosen: Vec<usize> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut trial: Vec<&[BigInt]> = chosen.iter().map(|&j| vectors[j].as_slice()).collect();
        trial.push(v);
        if exactmat::rank_of_vectors(&trial) == trial.len() {
            chosen.push(i);
            if chosen.len() == dim {
                break;
            }
        }
    }
    if chosen.len() < dim {
        let rows = IntMatrix::from_rows(vectors, dim).expect("vectors share the ambient dimension");
        let kernel = rows.kernel_basis();
        return HalfspaceResult::ContainedWith(sign_normalized(kernel.column(0)));
    }

    let basis: Vec<Vec<BigInt>> = chosen.iter().map(|&i| vectors[i].clone()).collect();
    let as_columns = IntMatrix::from_columns(&basis, dim).expect("square basis");
    let (det, adj) = exactmat::det_and_scaled_inverse(&as_columns).expect("independent basis");
    // Row 0 of adj pairs with basis vector j as det·δ_0j.
    let mut seed = adj.row_vec(0);
    if det.is_negative() {
        seed.iter_mut().for_each(|x| *x = -std::mem::take(x));
    }
    let rest: Vec<Vec<BigInt>> = vectors
        .iter()
        .enumerate()
        .filter(|(i, _)| !chosen.contains(i))
        .map(|(_, v)| v.clone())
        .collect();
    let cone = RationalCone::new(dim, basis).expect("dimensions checked");
    is_in_halfspace_extend(&rest, &cone, &RatVector::from_integers(&seed))
}

/// Primitive, with the first nonzero coordinate positive.
fn sign_normalized(v: Vec<BigInt>) -> Vec<BigInt> {
    let mut v = primitive(v);
    if v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
        v.iter_mut().for_each(|x| *x = -std::mem::take(x));
    }
    v
}

/// Bounded iff the recession cone `{u : ⟨u, v_i⟩ ≥ 0}` is `{0}`.
pub fn is_bounded(p: &Polyhedron) -> bool {
    !rays_in_halfspace(p.dim, &p.normals()).is_contained()
}

/// Lattice data of an unbounded `P_φ = P + C^∨`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopePart {
    /// `{x : (x, 1) ∈ H}`; their convex hull is the polytope `P`.
    pub points: Vec<Vec<BigInt>>,
    /// `{x : (x, 0) ∈ H}`, a Hilbert basis of the recession cone.
    pub cone_basis: Vec<Vec<BigInt>>,
    /// The Hilbert basis `H` of the homogenized cone's dual.
    pub hilbert: HilbertBasis,
}

impl PolytopePart {
    pub fn recession_cone(&self, dim: usize) -> RationalCone {
        RationalCone::new(dim, self.cone_basis.clone()).expect("dimensions are consistent")
    }
}

/// Splits `P ∩ ℤ^l` as `points + ℕ·cone_basis` by homogenizing.
///
/// `C̄ = cone{(v_i, φ_i)} ∪ {(0, 1)}` has dual
/// `{(x, λ) : λ ≥ 0, ⟨x, v_i⟩ + λφ_i ≥ 0}`, whose height-1 slice is `P`. A
/// height-1 lattice point is one height-1 Hilbert basis element plus
/// height-0 ones.
pub fn polytope_part(p: &Polyhedron) -> Result<PolytopePart> {
    let dim = p.dim;
    let mut generators: Vec<Vec<BigInt>> = p
        .rows
        .iter()
        .map(|(v, phi)| {
            let mut g = v.clone();
            g.push(phi.clone());
            g
        })
        .collect();
    let mut top = vec![BigInt::zero(); dim + 1];
    top[dim] = BigInt::from(1);
    generators.push(top);

    let lifted = RationalCone::new(dim + 1, generators)?;
    let hilbert = hilbert_basis(&dual_cone(&lifted));
    let at_height = |h: i64| -> Vec<Vec<BigInt>> {
        hilbert
            .elements
            .iter()
            .filter(|e| e[dim] == BigInt::from(h))
            .map(|e| e[..dim].to_vec())
            .collect()
    };
    let points = at_height(1);
    if points.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    let cone_basis = at_height(0);
    Ok(PolytopePart {
        points,
        cone_basis,
        hilbert,
    })
}

fn homogenize(points: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    points
        .iter()
        .map(|p| {
            let mut h = p.clone();
            h.push(BigInt::from(1));
            h
        })
        .collect()
}

/// Inequality description of the convex hull of finitely many points.
pub fn convex_hull(dim: usize, points: &[Vec<BigInt>]) -> Result<Polyhedron> {
    let facets = dd::cone_from_inequalities(dim + 1, &homogenize(points)).all();
    Polyhedron::new(
        dim,
        facets
            .into_iter()
            .map(|mut f| {
                let c = f.pop().expect("homogenized facet");
                (f, c)
            })
            .collect(),
    )
}

/// Vertices of the convex hull of `points`, sorted.
pub fn hull_vertices(dim: usize, points: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut unique = points.to_vec();
    unique.sort();
    unique.dedup();
    if unique.len() <= 1 {
        return unique;
    }
    let facets = dd::cone_from_inequalities(dim + 1, &homogenize(&unique)).all();
    let extreme = dd::cone_from_inequalities(dim + 1, &facets);
    debug_assert!(extreme.lineality.is_empty());
    let mut vertices: Vec<Vec<BigInt>> = extreme
        .rays
        .into_iter()
        .map(|mut r| {
            debug_assert_eq!(r[dim], BigInt::from(1));
            r.pop();
            r
        })
        .collect();
    vertices.sort();
    vertices
}

/// Lattice points of `conv(points) + {Σ α_i w_i : 0 ≤ α_i ≤ 1}`.
pub fn zonotope_sum_lattice_points(
    dim: usize,
    points: &[Vec<BigInt>],
    zonotope: &[Vec<BigInt>],
) -> Result<Vec<Vec<BigInt>>> {
    let mut vertices = hull_vertices(dim, points);
    for w in zonotope {
        let shifted = vertices
            .iter()
            .map(|v| v.iter().zip(w).map(|(a, b)| a + b).collect::<Vec<BigInt>>());
        let mut both = vertices.clone();
        both.extend(shifted);
        vertices = hull_vertices(dim, &both);
    }
    if vertices.is_empty() {
        return Ok(Vec::new());
    }
    lattice_points(&convex_hull(dim, &vertices)?)
}

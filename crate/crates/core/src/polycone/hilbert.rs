//! Hilbert bases of rational cones.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{dd, RationalCone};
use crate::exactmat::{det_and_scaled_inverse, dot, rank_of_vectors, IntMatrix};
use crate::par::{self, Execution};

/// The unique minimal generating set of the monoid `C ∩ ℤ^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasis {
    /// Sorted; contains `±b` for every vector `b` of `lineality`.
    pub elements: Vec<Vec<BigInt>>,
    /// A ℤ-basis of the lattice points of the largest linear subspace of `C`.
    pub lineality: Vec<Vec<BigInt>>,
}

impl HilbertBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Hilbert basis of `cone ∩ ℤ^dim`, using the default execution mode.
pub fn hilbert_basis(cone: &RationalCone) -> HilbertBasis {
    hilbert_basis_with(cone, Execution::default())
}

/// Hilbert basis of `cone ∩ ℤ^dim`.
///
/// The cone is moved into coordinates of its saturated span lattice, where it
/// is full-dimensional, and then into the quotient by its lineality lattice,
/// where it is pointed. The pointed cone is triangulated; every irreducible
/// lies in the fundamental parallelepiped of some simplicial piece or is an
/// extreme ray, and the irreducibles among those candidates are kept.
pub fn hilbert_basis_with(cone: &RationalCone, exec: Execution) -> HilbertBasis {
    let dim = cone.dim();
    let gens = cone.generators();
    if gens.is_empty() {
        return HilbertBasis {
            elements: Vec::new(),
            lineality: Vec::new(),
        };
    }

    // Span lattice: x = lift_span · y with y ∈ ℤ^k.
    let as_columns = IntMatrix::from_columns(gens, dim).expect("generators share dimension");
    let snf = as_columns.smith();
    let k = snf.rank();
    let u_inv = unimodular_inverse(&snf.u);
    let lift_span = u_inv.select(&(0..dim).collect::<Vec<_>>(), &(0..k).collect::<Vec<_>>());
    let to_span = |x: &[BigInt]| -> Vec<BigInt> {
        let y = snf.u.mul_vec(x).expect("dimension checked");
        y[..k].to_vec()
    };
    let gens_y: Vec<Vec<BigInt>> = gens.iter().map(|g| to_span(g)).collect();

    // Facets of the full-dimensional cone in ℝ^k; lineality is their kernel.
    let facets = dd::cone_from_inequalities(k, &gens_y).rays;
    let (lift_quotient, lineality_y) = if facets.is_empty() {
        (IntMatrix::zeros(k, 0), IntMatrix::identity(k).to_columns())
    } else {
        let f = IntMatrix::from_rows(&facets, k).expect("facets share dimension");
        let kb = f.kernel_basis();
        let q = kb.cols();
        // kb is saturated, so U_K⁻¹ = [kb·V_K | complement] is unimodular.
        let ksnf = kb.smith();
        let vf = unimodular_inverse(&ksnf.u);
        let rows: Vec<usize> = (0..k).collect();
        (
            vf.select(&rows, &(q..k).collect::<Vec<_>>()),
            vf.select(&rows, &(0..q).collect::<Vec<_>>()).to_columns(),
        )
    };
    let kq = lift_quotient.cols();
    let quotient_facets: Vec<Vec<BigInt>> = facets
        .iter()
        .map(|f| (0..kq).map(|j| dot(f, &lift_quotient.column(j))).collect())
        .collect();

    let pointed = pointed_hilbert_basis(kq, &quotient_facets, exec);

    let lift = |alpha: &[BigInt]| -> Vec<BigInt> {
        let y = lift_quotient.mul_vec(alpha).expect("quotient coordinates");
        lift_span.mul_vec(&y).expect("span coordinates")
    };
    let lineality: Vec<Vec<BigInt>> = lineality_y
        .iter()
        .map(|b| lift_span.mul_vec(b).expect("span coordinates"))
        .collect();
    let mut elements: Vec<Vec<BigInt>> = pointed.iter().map(|a| lift(a)).collect();
    for b in &lineality {
        elements.push(b.clone());
        elements.push(b.iter().map(|x| -x).collect());
    }
    elements.sort();
    elements.dedup();
    HilbertBasis {
        elements,
        lineality,
    }
}

fn unimodular_inverse(u: &IntMatrix) -> IntMatrix {
    let (d, adj) = det_and_scaled_inverse(u).expect("unimodular matrix");
    debug_assert!(d.abs().is_one());
    adj.scale(&d)
}

/// Hilbert basis of the pointed full-dimensional cone `{α : F·α ≥ 0}`.
fn pointed_hilbert_basis(dim: usize, facets: &[Vec<BigInt>], exec: Execution) -> Vec<Vec<BigInt>> {
    if dim == 0 {
        return Vec::new();
    }
    let extreme = dd::cone_from_inequalities(dim, facets);
    debug_assert!(extreme.lineality.is_empty());
    let rays = extreme.rays;
    let all: Vec<usize> = (0..rays.len()).collect();
    let simplices = triangulate(&rays, &all, dim);

    let mut candidates = par::flat_map(exec, simplices, |s| {
        let basis: Vec<Vec<BigInt>> = s.iter().map(|&i| rays[i].clone()).collect();
        parallelepiped_points(&basis)
    });
    candidates.extend(rays.iter().cloned());
    candidates.sort();
    candidates.dedup();

    let values: Vec<Vec<BigInt>> = candidates
        .iter()
        .map(|c| facets.iter().map(|f| dot(f, c)).collect())
        .collect();
    let keep = par::map(exec, (0..candidates.len()).collect(), |i| {
        !(0..candidates.len())
            .any(|j| j != i && values[j].iter().zip(&values[i]).all(|(a, b)| a <= b))
    });
    candidates
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect()
}

/// Pulling triangulation of `cone(rays[idx])`, a cone of dimension `d`.
///
/// The first ray is the apex; it is joined to a triangulation of every facet
/// that does not contain it.
fn triangulate(rays: &[Vec<BigInt>], idx: &[usize], d: usize) -> Vec<Vec<usize>> {
    if idx.len() == d {
        return vec![idx.to_vec()];
    }
    let ambient = rays[idx[0]].len();
    let vectors: Vec<Vec<BigInt>> = idx.iter().map(|&i| rays[i].clone()).collect();
    let dual = dd::cone_from_inequalities(ambient, &vectors);
    let apex = idx[0];
    let mut out = Vec::new();
    for h in &dual.rays {
        if !dot(h, &rays[apex]).is_zero() {
            let face: Vec<usize> = idx.iter().copied().filter(|&i| dot(h, &rays[i]).is_zero()).collect();
            let face_vectors: Vec<&[BigInt]> = face.iter().map(|&i| rays[i].as_slice()).collect();
            debug_assert_eq!(rank_of_vectors(&face_vectors), d - 1);
            for mut s in triangulate(rays, &face, d - 1) {
                s.push(apex);
                out.push(s);
            }
        }
    }
    out
}

/// Nonzero lattice points of `{Σ λ_i b_i : 0 ≤ λ_i < 1}` for a basis `b`.
fn parallelepiped_points(basis: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = basis.len();
    let r = IntMatrix::from_columns(basis, n).expect("square basis");
    let (det, adj) = det_and_scaled_inverse(&r).expect("simplicial cone");
    let det_abs = det.abs();
    if det_abs.is_one() {
        return Vec::new();
    }
    // ℤ^n / Rℤ^n ≅ ⊕ ℤ/f_i via U·R·V = S, so U⁻¹·c enumerates coset representatives.
    let snf = r.smith();
    let u_inv = unimodular_inverse(&snf.u);
    let factors = snf.invariant_factors();

    let reduce = |x: Vec<BigInt>| -> Vec<BigInt> {
        let coeffs = adj.mul_vec(&x).expect("square");
        let floors: Vec<BigInt> = coeffs.iter().map(|c| c.div_floor(&det)).collect();
        let shift = r.mul_vec(&floors).expect("square");
        x.iter().zip(&shift).map(|(a, b)| a - b).collect()
    };

    let mut out = Vec::new();
    let mut c = vec![BigInt::zero(); n];
    loop {
        if c.iter().any(|x| !x.is_zero()) {
            out.push(reduce(u_inv.mul_vec(&c).expect("square")));
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            c[i] += 1;
            if c[i] < factors[i] {
                break;
            }
            c[i] = BigInt::zero();
            i += 1;
        }
    }
}

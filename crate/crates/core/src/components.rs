//! Graded components `S_a` of the Laurent polynomial ring.
//!
//! With a representative `φ` of `a`, the monomials of degree `a` are
//! `x^{φ + ω(u)}` for the lattice points `u` of
//! `P_φ = {u : ⟨u, v_i⟩ ≥ -φ_i, i < r}`. A positive grading makes `P_φ` a
//! polytope; otherwise `S_a` is described by generators over `S_0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmat::{self, IntMatrix};
use crate::grading::{
    associated_vectors, find_representative, ActionSpec, DegreeVector, KernelData, Monomial,
    DEFAULT_SEARCH_BOUND,
};
use crate::par::{self, Execution};
use crate::polycone::{
    dual_cone, hilbert_basis_with, lattice_points_with, HilbertBasis, polytope_part, zonotope_sum_lattice_points,
    Polyhedron, RationalCone,
};
use crate::positivity::{positivity_test, PositivityVerdict};

/// `ω(u) = K·u`, the exponent of the degree-zero monomial attached to `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaMap {
    kernel: KernelData,
}

impl OmegaMap {
    pub fn new(kernel: KernelData) -> Self {
        Self { kernel }
    }

    pub fn apply(&self, u: &[BigInt]) -> Result<Vec<BigInt>> {
        self.kernel.omega(u)
    }

    /// `x^{φ + ω(u)}`.
    pub fn shifted(&self, phi: &[BigInt], u: &[BigInt]) -> Result<Monomial> {
        let w = self.apply(u)?;
        Ok(Monomial(phi.iter().zip(&w).map(|(a, b)| a + b).collect()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    /// A monomial basis of a finite-dimensional `S_a`, sorted.
    FiniteBasis(Vec<Monomial>),
    /// `S_0 = k[s0_gens]` and `S_a = Σ S_0 · sa_gens`, both sorted.
    ModuleGenerators {
        s0_gens: Vec<Monomial>,
        sa_gens: Vec<Monomial>,
    },
    /// No monomial of this degree was found. `certified` means `a` is not
    /// in the image of the degree map at all; otherwise the representative
    /// search was exhausted and the answer is inconclusive.
    NotInQ { certified: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDescription {
    pub degree: DegreeVector,
    /// `φ ∈ ℕ^r × ℤ^s` with `deg(φ) = a`, absent for [`ComponentKind::NotInQ`].
    pub representative: Option<Vec<BigInt>>,
    pub kind: ComponentKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

/// `P_φ = {u ∈ ℝ^l : ⟨u, v_i⟩ ≥ -φ_i, i < r}`; the Laurent rows impose nothing.
pub fn build_polytope(kd: &KernelData, r: usize, phi: &[BigInt]) -> Polyhedron {
    Polyhedron::new(
        kd.l(),
        (0..r).map(|i| (kd.row(i).to_vec(), phi[i].clone())).collect(),
    )
    .expect("kernel rows have length l")
}

/// The cone `𝒞^∨ = {u : ⟨u, v_i⟩ ≥ 0, i < r}` as a generated cone.
fn recession_cone(kd: &KernelData) -> RationalCone {
    dual_cone(&RationalCone::new(kd.l(), kd.rays()).expect("rays have length l"))
}

/// A spec together with its kernel data and positivity verdict, so that
/// many components can be computed without repeating that work.
#[derive(Clone, Debug)]
pub struct GradedRing {
    spec: ActionSpec,
    kernel: KernelData,
    verdict: PositivityVerdict,
    exec: Execution,
    prune: bool,
}

impl GradedRing {
    pub fn new(spec: ActionSpec) -> Result<Self> {
        Self::with_execution(spec, Execution::default())
    }

    pub fn with_execution(spec: ActionSpec, exec: Execution) -> Result<Self> {
        let kernel = associated_vectors(&spec)?;
        let verdict = positivity_test(&spec);
        Ok(Self {
            spec,
            kernel,
            verdict,
            exec,
            prune: false,
        })
    }

    /// Drops module generators that are another generator times a
    /// degree-zero monomial. Off by default.
    pub fn with_pruning(mut self, prune: bool) -> Self {
        self.prune = prune;
        self
    }

    pub fn spec(&self) -> &ActionSpec {
        &self.spec
    }

    pub fn kernel(&self) -> &KernelData {
        &self.kernel
    }

    pub fn verdict(&self) -> &PositivityVerdict {
        &self.verdict
    }

    pub fn is_positive(&self) -> bool {
        self.verdict.positive
    }

    /// Degree-zero monomials generating `S_0` as a ring; empty when positive.
    pub fn s0_generators(&self) -> Vec<Monomial> {
        if self.is_positive() {
            return Vec::new();
        }
        self.s0_from(&hilbert_basis_with(&recession_cone(&self.kernel), self.exec))
    }

    fn s0_from(&self, hb: &HilbertBasis) -> Vec<Monomial> {
        let omega = OmegaMap::new(self.kernel.clone());
        let zero = vec![BigInt::zero(); self.spec.n()];
        let mut gens: Vec<Monomial> = hb
            .elements
            .iter()
            .map(|w| omega.shifted(&zero, w).expect("l coordinates"))
            .collect();
        gens.sort();
        gens
    }

    /// Lattice points of `P + B` for an unbounded `P_φ`, computed modulo the
    /// lineality lattice `Λ` of `𝒞^∨` and lifted back.
    ///
    /// Modulo `Λ` the height-1 Hilbert basis elements are canonical, so the
    /// result does not depend on the complement chosen for `Λ` or on `φ`.
    fn module_points(&self, polytope: &Polyhedron, lineality: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
        let l = self.kernel.l();
        let part = polytope_part(polytope)?;
        assert!(!part.cone_basis.is_empty(), "unbounded P_φ has a nonzero recession cone");
        if lineality.is_empty() {
            return zonotope_sum_lattice_points(l, &part.points, &part.cone_basis);
        }
        let q = lineality.len();
        // Λ is saturated, so U⁻¹ = [Λ-basis | complement] is unimodular.
        let u = IntMatrix::from_columns(lineality, l)?.smith().u;
        let (det, adj) = exactmat::det_and_scaled_inverse(&u)?;
        let u_inv = adj.scale(&det);
        let project = |x: &Vec<BigInt>| -> Vec<BigInt> { u.mul_vec(x).expect("l coordinates")[q..].to_vec() };
        let points: Vec<Vec<BigInt>> = part.points.iter().map(project).collect();
        let mut zonotope: Vec<Vec<BigInt>> = part
            .cone_basis
            .iter()
            .map(project)
            .filter(|w| w.iter().any(|x| !x.is_zero()))
            .collect();
        zonotope.sort();
        zonotope.dedup();
        let quotient = zonotope_sum_lattice_points(l - q, &points, &zonotope)?;
        Ok(quotient
            .into_iter()
            .map(|y| {
                let mut full = vec![BigInt::zero(); q];
                full.extend(y);
                u_inv.mul_vec(&full).expect("l coordinates")
            })
            .collect())
    }

    /// Describes `S_a`, searching representatives in the box `[-B, B]^l`.
    /// A degree with no representative yields [`ComponentKind::NotInQ`].
    pub fn component(&self, a: &DegreeVector, search_bound: u32) -> Result<ComponentDescription> {
        match find_representative(&self.spec, &self.kernel, a, search_bound) {
            Ok(phi) => self.component_with_representative(a, &phi),
            Err(Error::NotInQ { certified }) => Ok(ComponentDescription {
                degree: a.clone(),
                representative: None,
                kind: ComponentKind::NotInQ { certified },
            }),
            Err(e) => Err(e),
        }
    }

    /// Describes `S_a` from a given representative `φ` of `a`.
    pub fn component_with_representative(
        &self,
        a: &DegreeVector,
        phi: &[BigInt],
    ) -> Result<ComponentDescription> {
        let spec = &self.spec;
        if phi.len() != spec.n() {
            return Err(Error::DimensionMismatch {
                expected: spec.n(),
                found: phi.len(),
            });
        }
        if !spec.is_admissible(phi) || spec.degree_from_lift(&spec.weights().mul_vec(phi)?)? != *a {
            return Err(Error::NotInQ { certified: false });
        }
        let omega = OmegaMap::new(self.kernel.clone());
        let polytope = build_polytope(&self.kernel, spec.r(), phi);
        let shift = |points: Vec<Vec<BigInt>>| -> Vec<Monomial> {
            let mut out: Vec<Monomial> = points
                .iter()
                .map(|u| omega.shifted(phi, u).expect("l coordinates"))
                .collect();
            out.sort();
            out
        };
        let kind = if self.is_positive() {
            ComponentKind::FiniteBasis(shift(lattice_points_with(&polytope, self.exec)?))
        } else {
            let hb = hilbert_basis_with(&recession_cone(&self.kernel), self.exec);
            let units = UnitLattice::new(
                hb.lineality
                    .iter()
                    .map(|b| omega.apply(b).expect("l coordinates"))
                    .collect(),
            );
            let mut sa_gens: Vec<Monomial> = shift(self.module_points(&polytope, &hb.lineality)?)
                .into_iter()
                .map(|m| Monomial(units.reduce(m.0)))
                .collect();
            sa_gens.sort();
            sa_gens.dedup();
            if self.prune {
                sa_gens = prune_generators(sa_gens, spec.r());
            }
            ComponentKind::ModuleGenerators {
                s0_gens: self.s0_from(&hb),
                sa_gens,
            }
        };
        Ok(ComponentDescription {
            degree: a.clone(),
            representative: Some(phi.to_vec()),
            kind,
        })
    }

    /// Components of many degrees, evaluated concurrently in parallel mode.
    pub fn components(
        &self,
        degrees: &[DegreeVector],
        search_bound: u32,
    ) -> Vec<Result<ComponentDescription>> {
        par::map(self.exec, degrees.to_vec(), |a| self.component(&a, search_bound))
    }

    /// `dim_k S_a`; fails with `NotInQ` when no representative is found.
    pub fn dimension(&self, a: &DegreeVector) -> Result<Dimension> {
        let phi = find_representative(&self.spec, &self.kernel, a, DEFAULT_SEARCH_BOUND)?;
        if !self.is_positive() {
            return Ok(Dimension::Infinite);
        }
        let polytope = build_polytope(&self.kernel, self.spec.r(), &phi);
        Ok(Dimension::Finite(lattice_points_with(&polytope, self.exec)?.len()))
    }
}

/// The exponents of the units of `S_0`, in echelon form with positive pivots.
///
/// Reducing each pivot coordinate into `[0, pivot)` picks one exponent per
/// coset, so `reduce` is a canonical form for multiplication by units.
struct UnitLattice {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl UnitLattice {
    fn new(mut vectors: Vec<Vec<BigInt>>) -> Self {
        let mut rows = Vec::new();
        let width = vectors.first().map_or(0, Vec::len);
        for c in 0..width {
            vectors.retain(|v| v.iter().any(|x| !x.is_zero()));
            // Euclid on column c until one vector carries its gcd.
            loop {
                let mut live: Vec<usize> = (0..vectors.len()).filter(|&i| !vectors[i][c].is_zero()).collect();
                if live.len() <= 1 {
                    break;
                }
                live.sort_by(|&a, &b| vectors[a][c].abs().cmp(&vectors[b][c].abs()));
                let pivot = vectors[live[0]].clone();
                for &i in &live[1..] {
                    let k = vectors[i][c].div_floor(&pivot[c]);
                    for (x, y) in vectors[i].iter_mut().zip(&pivot) {
                        *x -= &k * y;
                    }
                }
            }
            if let Some(i) = vectors.iter().position(|v| !v[c].is_zero()) {
                let mut row = vectors.swap_remove(i);
                if row[c].is_negative() {
                    row.iter_mut().for_each(|x| *x = -std::mem::take(x));
                }
                rows.push((c, row));
            }
        }
        Self { rows }
    }

    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        for (c, row) in &self.rows {
            let k = v[*c].div_floor(&row[*c]);
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &k * y;
            }
        }
        v
    }
}

/// Keeps `g` unless some other `h` of the same degree has `h ≤ g` on the
/// polynomial exponents, so that `g / h` lies in `S_0`. Among generators
/// dividing each other the smallest is kept.
fn prune_generators(gens: Vec<Monomial>, r: usize) -> Vec<Monomial> {
    let divides = |h: &Monomial, g: &Monomial| (0..r).all(|i| h.0[i] <= g.0[i]);
    gens.iter()
        .filter(|g| {
            !gens
                .iter()
                .any(|h| h != *g && divides(h, g) && (!divides(g, h) || h < *g))
        })
        .cloned()
        .collect()
}

/// Describes `S_a`, searching representatives in the box `[-B, B]^l`.
pub fn component(spec: &ActionSpec, a: &DegreeVector, search_bound: u32) -> Result<ComponentDescription> {
    GradedRing::new(spec.clone())?.component(a, search_bound)
}

/// Ring generators `x^{ω(w)}` of `S_0`, `w` ranging over the Hilbert basis
/// of `𝒞^∨`; empty for a positive grading.
pub fn s0_generators(spec: &ActionSpec) -> Result<Vec<Monomial>> {
    Ok(GradedRing::new(spec.clone())?.s0_generators())
}

pub fn component_dimension(spec: &ActionSpec, a: &DegreeVector) -> Result<Dimension> {
    GradedRing::new(spec.clone())?.dimension(a)
}

//! The acting group, its weight matrix, the degree map and the kernel lattice.
//!
//! An action of `H = (k^×)^p × ℤ/d_1 × … × ℤ/d_t` on `k^r × (k^×)^s` is given
//! by an `m × n` integer matrix `L` (`m = p + t`, `n = r + s`) whose columns
//! are the weights of the variables. The first `p` rows are torus weights,
//! the last `t` rows are read modulo `d_1, …, d_t`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmat::{self, IntMatrix};

/// Default box radius used when searching for a representative of a degree.
pub const DEFAULT_SEARCH_BOUND: u32 = 16;

/// A diagonal action given by its weight matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSpec {
    r: usize,
    s: usize,
    p: usize,
    torsion: Vec<BigInt>,
    weights: IntMatrix,
}

impl ActionSpec {
    /// Validates shapes, torsion orders (each at least 2) and faithfulness
    /// (`rank L = p + t`).
    pub fn new(
        r: usize,
        s: usize,
        p: usize,
        torsion: Vec<BigInt>,
        weights: IntMatrix,
    ) -> Result<Self> {
        let m = p + torsion.len();
        if weights.rows() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: weights.rows(),
            });
        }
        if weights.cols() != r + s {
            return Err(Error::DimensionMismatch {
                expected: r + s,
                found: weights.cols(),
            });
        }
        if let Some(d) = torsion.iter().find(|d| **d < BigInt::from(2)) {
            return Err(Error::InvalidTorsion(d.to_string()));
        }
        let rank = weights.rank();
        if rank != m {
            return Err(Error::NotFaithful { rank, expected: m });
        }
        Ok(Self {
            r,
            s,
            p,
            torsion,
            weights,
        })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(r: usize, s: usize, p: usize, torsion: &[i64], rows: &[Vec<i64>]) -> Result<Self> {
        let weights = IntMatrix::from_rows(rows, r + s)?;
        Self::new(r, s, p, exactmat::to_bigint_vec(torsion), weights)
    }

    /// Number of polynomial variables.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of Laurent variables.
    pub fn s(&self) -> usize {
        self.s
    }

    /// Torus rank.
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn t(&self) -> usize {
        self.torsion.len()
    }

    pub fn n(&self) -> usize {
        self.r + self.s
    }

    pub fn m(&self) -> usize {
        self.p + self.torsion.len()
    }

    /// Rank of the kernel lattice, `n - p`.
    pub fn l(&self) -> usize {
        self.n() - self.p
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn weights(&self) -> &IntMatrix {
        &self.weights
    }

    /// Same action data with a replaced weight matrix; re-validated.
    pub fn with_weights(&self, weights: IntMatrix) -> Result<Self> {
        Self::new(self.r, self.s, self.p, self.torsion.clone(), weights)
    }

    /// The zero element of the degree group.
    pub fn zero_degree(&self) -> DegreeVector {
        DegreeVector {
            free: vec![BigInt::zero(); self.p],
            torsion: vec![BigInt::zero(); self.t()],
        }
    }

    /// Reads an integer vector of length `m` as a degree, reducing the torsion
    /// coordinates.
    pub fn degree_from_lift(&self, lift: &[BigInt]) -> Result<DegreeVector> {
        if lift.len() != self.m() {
            return Err(Error::DimensionMismatch {
                expected: self.m(),
                found: lift.len(),
            });
        }
        Ok(DegreeVector {
            free: lift[..self.p].to_vec(),
            torsion: lift[self.p..]
                .iter()
                .zip(&self.torsion)
                .map(|(c, d)| c.mod_floor(d))
                .collect(),
        })
    }

    /// Whether `λ` lies in `ℕ^r × ℤ^s`.
    pub fn is_admissible(&self, exponents: &[BigInt]) -> bool {
        exponents.len() == self.n() && exponents[..self.r].iter().all(|x| !x.is_negative())
    }
}

/// An element of `A = ℤ^p ⊕ ℤ/d_1 ⊕ … ⊕ ℤ/d_t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeVector {
    pub free: Vec<BigInt>,
    /// Residues in `[0, d_i)`.
    pub torsion: Vec<BigInt>,
}

impl DegreeVector {
    /// The canonical integer lift: free part followed by residues.
    pub fn lift(&self) -> Vec<BigInt> {
        self.free.iter().chain(&self.torsion).cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", exactmat::VecDisplay(&self.lift()))
    }
}

/// Exponent vector of a Laurent monomial `x^λ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<BigInt>);

impl Monomial {
    pub fn exponents(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Monomial {
    /// Renders as `x1^2*x3^-1`; exponent 1 is omitted, the empty product is `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, e) in self.0.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if !e.is_one() {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// `deg(λ) = L·λ` with the torsion coordinates reduced.
pub fn degree(spec: &ActionSpec, exponents: &[BigInt]) -> Result<DegreeVector> {
    let lift = spec.weights.mul_vec(exponents)?;
    spec.degree_from_lift(&lift)
}

/// The kernel lattice `{λ : deg(λ) = 0}` with a basis matrix `K` (`n × l`)
/// and the associated ray vectors (the first `r` rows of `K`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelData {
    k: IntMatrix,
    r: usize,
}

impl KernelData {
    pub fn basis(&self) -> &IntMatrix {
        &self.k
    }

    pub fn l(&self) -> usize {
        self.k.cols()
    }

    /// Row `i` of `K`, i.e. the vector `v_{i+1} ∈ ℤ^l`.
    pub fn row(&self, i: usize) -> &[BigInt] {
        self.k.row(i)
    }

    /// The ray set `v_1, …, v_r`.
    pub fn rays(&self) -> Vec<Vec<BigInt>> {
        (0..self.r).map(|i| self.k.row_vec(i)).collect()
    }

    /// `ω(u) = K·u`.
    pub fn omega(&self, u: &[BigInt]) -> Result<Vec<BigInt>> {
        self.k.mul_vec(u)
    }
}

/// `[L | -D̃]` where `D̃` places `diag(d)` on the torsion rows.
fn augmented_weights(spec: &ActionSpec) -> IntMatrix {
    let (m, n, t) = (spec.m(), spec.n(), spec.t());
    let mut a = IntMatrix::zeros(m, n + t);
    for i in 0..m {
        for j in 0..n {
            a[(i, j)] = spec.weights[(i, j)].clone();
        }
    }
    for (i, d) in spec.torsion.iter().enumerate() {
        a[(spec.p + i, n + i)] = -d.clone();
    }
    a
}

/// Computes a ℤ-basis `K` of the kernel lattice and the rays `v_1, …, v_r`.
///
/// The kernel of `λ ↦ Lλ mod (0, D)` is the projection onto the first `n`
/// coordinates of the integer kernel of `[L | -D̃]`; that projection is
/// injective, so the projected Smith basis is a basis of the lattice. With no
/// torsion this is exactly `K = V·[0; I]` from the Smith form `U·L·V`.
pub fn associated_vectors(spec: &ActionSpec) -> Result<KernelData> {
    let rank = spec.weights.rank();
    if rank != spec.m() {
        return Err(Error::NotFaithful {
            rank,
            expected: spec.m(),
        });
    }
    let aug = augmented_weights(spec);
    let kernel = aug.kernel_basis();
    debug_assert_eq!(kernel.cols(), spec.l());
    let rows: Vec<usize> = (0..spec.n()).collect();
    let cols: Vec<usize> = (0..kernel.cols()).collect();
    Ok(KernelData {
        k: kernel.select(&rows, &cols),
        r: spec.r,
    })
}

/// Finds `φ ∈ ℕ^r × ℤ^s` with `deg(φ) = a`.
///
/// Solves `L·φ₀ = a` (modulo the torsion orders) through the Smith form,
/// then scans shifts `φ₀ + K·z` for `z` in the box `[-B, B]^l` in shells of
/// growing max-norm, lexicographically inside each shell, and returns the
/// first admissible one. If that box is exhausted, the same search is
/// repeated around the coset point nearest the origin. `NotInQ { certified: true }` means `a` is not even
/// in the image of the degree map; `certified: false` only says the box was
/// exhausted.
pub fn find_representative(
    spec: &ActionSpec,
    kd: &KernelData,
    a: &DegreeVector,
    search_bound: u32,
) -> Result<Vec<BigInt>> {
    if a.free.len() != spec.p || a.torsion.len() != spec.t() {
        return Err(Error::DimensionMismatch {
            expected: spec.m(),
            found: a.free.len() + a.torsion.len(),
        });
    }
    let target: Vec<BigInt> = a
        .free
        .iter()
        .cloned()
        .chain(a.torsion.iter().zip(&spec.torsion).map(|(c, d)| c.mod_floor(d)))
        .collect();
    let Some(sol) = exactmat::solve_integer(&augmented_weights(spec), &target)? else {
        return Err(Error::NotInQ { certified: true });
    };
    let phi0 = &sol[..spec.n()];
    if let Some(phi) = box_search(spec, kd, phi0, search_bound)? {
        return Ok(phi);
    }
    let reduced = reduce_by_kernel(phi0, kd, spec.r)?;
    if reduced != phi0 {
        if let Some(phi) = box_search(spec, kd, &reduced, search_bound)? {
            return Ok(phi);
        }
    }
    Err(Error::NotInQ { certified: false })
}

/// First admissible `φ₀ + K·z`, `z` in `[-B, B]^l` by shells, then lexicographically.
fn box_search(spec: &ActionSpec, kd: &KernelData, phi0: &[BigInt], search_bound: u32) -> Result<Option<Vec<BigInt>>> {
    let l = kd.l();
    let to_i128 = |x: &BigInt| x.to_i128().ok_or_else(|| Error::Overflow(x.to_string()));
    let base: Vec<i128> = phi0[..spec.r].iter().map(to_i128).collect::<Result<_>>()?;
    let rows: Vec<Vec<i128>> = (0..spec.r)
        .map(|i| kd.row(i).iter().map(to_i128).collect::<Result<_>>())
        .collect::<Result<_>>()?;

    let mut z = vec![0i128; l];
    for radius in 0..=i128::from(search_bound) {
        if shell_search(&base, &rows, radius, 0, false, &mut z) {
            let shift: Vec<BigInt> = z.iter().map(|&x| BigInt::from(x)).collect();
            let moved = kd.omega(&shift)?;
            return Ok(Some(phi0.iter().zip(moved).map(|(a, b)| a + b).collect()));
        }
        if l == 0 {
            break;
        }
    }
    Ok(None)
}

/// Moves `φ₀` within its coset `φ₀ + K·ℤ^l` to `φ₀ − K·round(z*)`, where `z*`
/// minimizes `‖(φ₀ + K·z)_{<r}‖₂` (or the full norm when the first `r` rows of
/// `K` have rank below `l`), so the search box is centered near the origin.
fn reduce_by_kernel(phi0: &[BigInt], kd: &KernelData, r: usize) -> Result<Vec<BigInt>> {
    let l = kd.l();
    if l == 0 {
        return Ok(phi0.to_vec());
    }
    let k = kd.basis();
    let cols: Vec<usize> = (0..l).collect();
    let polynomial: Vec<usize> = (0..r).collect();
    let rows: Vec<usize> = if k.select(&polynomial, &cols).rank() == l {
        polynomial
    } else {
        (0..k.rows()).collect()
    };
    let kr = k.select(&rows, &cols);
    let gram = kr.transpose().mul(&kr)?;
    let inv = exactmat::rational_inverse(&gram)?;
    let rhs = kr.transpose().mul_vec(&rows.iter().map(|&i| phi0[i].clone()).collect::<Vec<_>>())?;
    let z: Vec<BigInt> = inv
        .iter()
        .map(|row| {
            let x: BigRational = row.iter().zip(&rhs).map(|(a, b)| a * BigRational::from(b.clone())).sum();
            x.round().to_integer()
        })
        .collect();
    let shift = k.mul_vec(&z)?;
    Ok(phi0.iter().zip(shift).map(|(a, b)| a - b).collect())
}

/// Depth-first lexicographic search over `z ∈ [-radius, radius]^l` with
/// `max |z_i| = radius`, for `base + rows·z ≥ 0` coordinatewise.
fn shell_search(
    base: &[i128],
    rows: &[Vec<i128>],
    radius: i128,
    depth: usize,
    on_shell: bool,
    z: &mut [i128],
) -> bool {
    let l = z.len();
    if depth == l {
        return on_shell || radius == 0;
    }
    for value in -radius..=radius {
        z[depth] = value;
        let reached = on_shell || value.abs() == radius;
        if depth + 1 == l && !reached {
            continue;
        }
        let feasible = base.iter().zip(rows).all(|(b, row)| {
            let fixed: i128 = row[..=depth].iter().zip(&z[..=depth]).map(|(k, x)| k * x).sum();
            let slack: i128 = row[depth + 1..].iter().map(|k| k.abs() * radius).sum();
            b + fixed + slack >= 0
        });
        if feasible && shell_search(base, rows, radius, depth + 1, reached, z) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::to_bigint_vec;

    fn spec(r: usize, s: usize, p: usize, torsion: &[i64], rows: &[Vec<i64>]) -> ActionSpec {
        ActionSpec::from_i64(r, s, p, torsion, rows).unwrap()
    }

    fn bi(v: &[i64]) -> Vec<BigInt> {
        to_bigint_vec(v)
    }

    #[test]
    fn degree_examples() {
        let std = spec(2, 0, 1, &[], &[vec![1, 1]]);
        assert!(degree(&std, &bi(&[0, 0])).unwrap().is_zero());
        assert_eq!(degree(&std, &bi(&[1, 1])).unwrap().free, bi(&[2]));

        let z2 = spec(2, 0, 0, &[2], &[vec![1, 1]]);
        assert_eq!(degree(&z2, &bi(&[1, 3])).unwrap().torsion, bi(&[0]));
        assert_eq!(
            degree(&z2, &bi(&[1])),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            ActionSpec::from_i64(2, 0, 1, &[2], &[vec![1, 1], vec![2, 2]]),
            Err(Error::NotFaithful { rank: 1, expected: 2 })
        ));
        assert!(matches!(
            ActionSpec::from_i64(2, 0, 0, &[1], &[vec![1, 1]]),
            Err(Error::InvalidTorsion(_))
        ));
        assert!(matches!(
            ActionSpec::from_i64(3, 0, 1, &[], &[vec![1, 1]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kernel_of_standard_grading() {
        let std = spec(2, 0, 1, &[], &[vec![1, 1]]);
        let kd = associated_vectors(&std).unwrap();
        assert_eq!(kd.l(), 1);
        let rays = kd.rays();
        assert_eq!(rays[1], rays[0].iter().map(|x| -x).collect::<Vec<_>>());
        assert!(!rays[0][0].is_zero());
    }

    #[test]
    fn kernel_with_torsion() {
        let z2 = spec(2, 0, 0, &[2], &[vec![1, 1]]);
        let kd = associated_vectors(&z2).unwrap();
        assert_eq!(kd.basis(), &IntMatrix::from_rows(&[vec![-1, 2], vec![1, 0]], 2).unwrap());
    }

    #[test]
    fn kernel_when_smith_rows_mix() {
        // The Smith transform swaps the torus and the torsion row here.
        let s = spec(2, 0, 1, &[2], &[vec![0, 1], vec![1, 0]]);
        let kd = associated_vectors(&s).unwrap();
        assert_eq!(kd.l(), 1);
        let col = kd.basis().column(0);
        assert!(degree(&s, &col).unwrap().is_zero());
        assert_eq!(col.iter().map(|x| x.abs()).collect::<Vec<_>>(), bi(&[2, 0]));
    }

    #[test]
    fn trivial_kernel() {
        let id = spec(3, 0, 3, &[], &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let kd = associated_vectors(&id).unwrap();
        assert_eq!(kd.l(), 0);
        assert!(kd.rays().iter().all(Vec::is_empty));
    }

    #[test]
    fn representatives() {
        let std = spec(2, 0, 1, &[], &[vec![1, 1]]);
        let kd = associated_vectors(&std).unwrap();
        let zero = find_representative(&std, &kd, &std.zero_degree(), 4).unwrap();
        assert_eq!(zero, bi(&[0, 0]));
        let a = std.degree_from_lift(&bi(&[2])).unwrap();
        assert_eq!(find_representative(&std, &kd, &a, 4).unwrap(), bi(&[2, 0]));
        let neg = std.degree_from_lift(&bi(&[-1])).unwrap();
        assert_eq!(
            find_representative(&std, &kd, &neg, 8),
            Err(Error::NotInQ { certified: false })
        );

        let opp = spec(2, 0, 1, &[], &[vec![1, -1]]);
        let kd = associated_vectors(&opp).unwrap();
        let a = opp.degree_from_lift(&bi(&[-1])).unwrap();
        assert_eq!(find_representative(&opp, &kd, &a, 3).unwrap(), bi(&[0, 1]));
    }

    #[test]
    fn representative_outside_image() {
        let even = spec(2, 0, 1, &[], &[vec![2, 2]]);
        let kd = associated_vectors(&even).unwrap();
        let a = even.degree_from_lift(&bi(&[3])).unwrap();
        assert_eq!(
            find_representative(&even, &kd, &a, 5),
            Err(Error::NotInQ { certified: true })
        );
    }

    #[test]
    fn monomial_rendering() {
        assert_eq!(Monomial(bi(&[2, 0, -1])).to_string(), "x1^2*x3^-1");
        assert_eq!(Monomial(bi(&[1, 1])).to_string(), "x1*x2");
        assert_eq!(Monomial(bi(&[0, 0])).to_string(), "1");
    }
}

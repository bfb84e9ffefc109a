//! Positivity of the grading: whether the only degree-zero monomials are
//! constants.
//!
//! The weight matrix is first brought into the block form
//! `Γ·L·Δ = [[L1, d·I_p], [L3, L4]]`. The signs of the entries of `L1` on
//! the polynomial rows then give a chain of column sets, and a half-space
//! test seeded from that chain decides whether the rays `v_1, …, v_r` span
//! `ℝ^l` as a cone.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmat::{self, det_and_scaled_inverse, IntMatrix, RatVector};
use crate::grading::{associated_vectors, ActionSpec};
use crate::polycone::{is_in_halfspace_extend, HalfspaceResult, RationalCone};

/// `Γ·L·Δ = [[l1, d·I_p], [l3, l4]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialForm {
    /// `p × l`.
    pub l1: IntMatrix,
    /// `t × l`.
    pub l3: IntMatrix,
    /// `t × p`.
    pub l4: IntMatrix,
    /// `|det L2|` of the selected `p × p` block, positive.
    pub d: BigInt,
    /// `m × m`, block diagonal `[[Γ2, 0], [0, I_t]]` with `Γ2·L2 = d·I_p`.
    pub gamma: IntMatrix,
    /// `n × n` permutation matrix fixing every Laurent column.
    pub delta: IntMatrix,
    /// `column_order[j]` is the column of `L` moved to position `j`.
    pub column_order: Vec<usize>,
}

impl SpecialForm {
    /// `Γ·L·Δ`.
    pub fn transformed(&self, spec: &ActionSpec) -> IntMatrix {
        self.gamma
            .mul(spec.weights())
            .and_then(|g| g.mul(&self.delta))
            .expect("shapes agree by construction")
    }
}

/// Whether the torus weights of the Laurent variables are linearly independent.
pub fn laurent_weights_independent(spec: &ActionSpec) -> bool {
    let columns = torus_columns(spec, &(spec.r()..spec.n()).collect::<Vec<_>>());
    let refs: Vec<&[BigInt]> = columns.iter().map(Vec::as_slice).collect();
    exactmat::rank_of_vectors(&refs) == spec.s()
}

fn torus_columns(spec: &ActionSpec, cols: &[usize]) -> Vec<Vec<BigInt>> {
    cols.iter()
        .map(|&j| (0..spec.p()).map(|i| spec.weights()[(i, j)].clone()).collect())
        .collect()
}

/// Brings `L` into special form.
///
/// The selected columns are the lexicographically last `p − s` polynomial
/// columns that, together with the Laurent columns, have torus rank `p`; a
/// matrix already in special form is therefore a fixed point. `Δ` lists the
/// unselected polynomial columns, then the selected ones, then the Laurent
/// columns. Rows are not permuted.
pub fn special_matrix(spec: &ActionSpec) -> Result<SpecialForm> {
    let (p, r, s, n, m) = (spec.p(), spec.r(), spec.s(), spec.n(), spec.m());
    if !laurent_weights_independent(spec) {
        return Err(Error::DependentLaurentWeights);
    }
    let need = p.checked_sub(s).ok_or(Error::DependentLaurentWeights)?;
    let laurent: Vec<usize> = (r..n).collect();
    let subsets: Vec<Vec<usize>> = (0..r).combinations(need).collect();
    let selected = subsets
        .into_iter()
        .rev()
        .find(|subset| {
            let cols: Vec<usize> = subset.iter().chain(&laurent).copied().collect();
            let columns = torus_columns(spec, &cols);
            let refs: Vec<&[BigInt]> = columns.iter().map(Vec::as_slice).collect();
            exactmat::rank_of_vectors(&refs) == p
        })
        .ok_or(Error::NotFaithful { rank: 0, expected: p })?;

    let mut column_order: Vec<usize> = (0..r).filter(|j| !selected.contains(j)).collect();
    let l = column_order.len();
    column_order.extend(&selected);
    column_order.extend(&laurent);

    let top: Vec<usize> = (0..p).collect();
    let bottom: Vec<usize> = (p..m).collect();
    let l2 = spec.weights().select(&top, &column_order[l..]);
    let (det, adj) = det_and_scaled_inverse(&l2)?;
    let gamma2 = if det.is_negative() { adj.scale(&BigInt::from(-1)) } else { adj };
    let d = det.abs();

    let mut gamma = IntMatrix::zeros(m, m);
    for i in 0..p {
        for j in 0..p {
            gamma[(i, j)] = gamma2[(i, j)].clone();
        }
    }
    for i in p..m {
        gamma[(i, i)] = BigInt::from(1);
    }
    let mut delta = IntMatrix::zeros(n, n);
    for (j, &c) in column_order.iter().enumerate() {
        delta[(c, j)] = BigInt::from(1);
    }

    let l1 = gamma2
        .mul(&spec.weights().select(&top, &column_order[..l]))
        .expect("p × p times p × l");
    Ok(SpecialForm {
        l1,
        l3: spec.weights().select(&bottom, &column_order[..l]),
        l4: spec.weights().select(&bottom, &column_order[l..]),
        d,
        gamma,
        delta,
        column_order,
    })
}

/// Chain `𝓘_{l+1} ⊆ … ⊆ 𝓘_J` of column sets of `L1` (0-based, ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityChain {
    /// `sets[k]` is built from polynomial rows `0..=k` of `L1`.
    pub sets: Vec<Vec<usize>>,
}

impl PositivityChain {
    /// `𝓘_J`.
    pub fn last(&self) -> &[usize] {
        self.sets.last().map_or(&[], Vec::as_slice)
    }

    /// Number of polynomial rows consumed, `J − l`.
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Builds the chain from the first `polynomial_rows` rows of `L1`.
///
/// Column `i` enters at row `j` when row `j` is its first nonzero row and
/// `−b_{j,i}/d > 0`. The chain stops once every column has met a nonzero
/// entry.
pub fn positivity_set(l1: &IntMatrix, d: &BigInt, polynomial_rows: usize) -> Result<PositivityChain> {
    debug_assert!(d.is_positive());
    let l = l1.cols();
    if let Some(i) = (0..l).find(|&i| (0..l1.rows()).all(|j| l1[(j, i)].is_zero())) {
        return Err(Error::ZeroColumn(i));
    }
    let mut sets = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let mut untouched: Vec<usize> = (0..l).collect();
    for j in 0..polynomial_rows.min(l1.rows()) {
        let entering = untouched.iter().copied().filter(|&i| (-&l1[(j, i)] * d).is_positive());
        current.extend(entering);
        current.sort_unstable();
        sets.push(current.clone());
        untouched.retain(|&i| l1[(j, i)].is_zero());
        if untouched.is_empty() {
            return Ok(PositivityChain { sets });
        }
    }
    Err(Error::Uncovered(untouched[0]))
}

/// `v_1^*, …, v_l^*` with `⟨v_i^*, v_j⟩ = δ_ij` for the first `l` rays.
pub fn dual_basis(rays: &[Vec<BigInt>], l: usize) -> Result<Vec<RatVector>> {
    let m = IntMatrix::from_rows(&rays[..l], l)?;
    let inv = exactmat::rational_inverse(&m)?;
    Ok((0..l)
        .map(|i| RatVector((0..l).map(|k| inv[k][i].clone()).collect()))
        .collect())
}

/// Half-space test for the rays `v_1, …, v_r` (in special-form order),
/// seeded by the chain.
///
/// An empty `𝓘_J` means no half-space exists. Otherwise, for the first
/// nonempty set `𝓘_k` and its smallest element `i`, the cone over
/// `v_1, …, v_{l+k+1}` lies in `H_{v_i^*}`; the remaining rays are added by
/// [`is_in_halfspace_extend`].
pub fn hsp2(chain: &PositivityChain, rays: &[Vec<BigInt>], dual: &[RatVector]) -> HalfspaceResult {
    if chain.last().is_empty() {
        return HalfspaceResult::NotContained;
    }
    let l = dual.len();
    let (k, set) = chain
        .sets
        .iter()
        .enumerate()
        .find(|(_, s)| !s.is_empty())
        .expect("last set is nonempty");
    let seed_end = (l + k + 1).min(rays.len());
    let cone = RationalCone::new(l, rays[..seed_end].to_vec()).expect("rays share dimension");
    let u = &dual[set[0]];
    debug_assert!(rays[..seed_end].iter().all(|v| !u.dot_int(v).is_negative()));
    is_in_halfspace_extend(&rays[seed_end..], &cone, u)
}

/// Why a grading cannot be positive before any cone computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NecessaryCondition {
    /// The torus rank `p` does not exceed the number `s` of Laurent variables.
    TorusRankAtMostLaurent { p: usize, s: usize },
    /// The Laurent torus weights are linearly dependent.
    DependentLaurentWeights,
    /// Column of `L` (0-based) whose special-form column `ρ_i` vanishes.
    ZeroColumn(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    NecessaryCondition(NecessaryCondition),
    /// Negating these polynomial columns of `L` (0-based) yields a positive
    /// grading; every ray pairs nonnegatively with `normal`.
    FlipSet { columns: Vec<usize>, normal: Vec<BigInt> },
    /// Every ray pairs nonnegatively with this primitive normal.
    HalfspaceNormal(Vec<BigInt>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityVerdict {
    pub positive: bool,
    /// `None` exactly when `positive`.
    pub witness: Option<Witness>,
}

impl PositivityVerdict {
    fn positive() -> Self {
        Self {
            positive: true,
            witness: None,
        }
    }

    fn not_positive(witness: Witness) -> Self {
        Self {
            positive: false,
            witness: Some(witness),
        }
    }
}

/// Decides whether the grading is positive.
pub fn positivity_test(spec: &ActionSpec) -> PositivityVerdict {
    let (p, r, s, l) = (spec.p(), spec.r(), spec.s(), spec.l());
    if l == 0 {
        return PositivityVerdict::positive();
    }
    if p <= s {
        return PositivityVerdict::not_positive(Witness::NecessaryCondition(
            NecessaryCondition::TorusRankAtMostLaurent { p, s },
        ));
    }
    let form = match special_matrix(spec) {
        Ok(form) => form,
        Err(_) => {
            return PositivityVerdict::not_positive(Witness::NecessaryCondition(
                NecessaryCondition::DependentLaurentWeights,
            ))
        }
    };
    let kd = associated_vectors(spec).expect("specs are faithful by construction");
    let rays: Vec<Vec<BigInt>> = form.column_order[..r].iter().map(|&c| kd.row(c).to_vec()).collect();
    let dual = dual_basis(&rays, l).expect("first l rays form a basis in special form");

    let chain = match positivity_set(&form.l1, &form.d, p - s) {
        Ok(chain) => chain,
        Err(Error::ZeroColumn(i)) => {
            return PositivityVerdict::not_positive(Witness::NecessaryCondition(
                NecessaryCondition::ZeroColumn(form.column_order[i]),
            ))
        }
        Err(Error::Uncovered(i)) => {
            return PositivityVerdict::not_positive(Witness::HalfspaceNormal(dual[i].to_primitive_integer()))
        }
        Err(e) => unreachable!("positivity_set only fails on columns: {e}"),
    };
    match hsp2(&chain, &rays, &dual) {
        HalfspaceResult::NotContained => PositivityVerdict::positive(),
        HalfspaceResult::ContainedWith(normal) => {
            let mut columns: Vec<usize> = chain.last().iter().map(|&i| form.column_order[i]).collect();
            columns.sort_unstable();
            PositivityVerdict::not_positive(Witness::FlipSet { columns, normal })
        }
    }
}

/// Negates the given polynomial columns (0-based) of `L`.
pub fn flip_matrix(spec: &ActionSpec, columns: &[usize]) -> Result<ActionSpec> {
    let mut w = spec.weights().clone();
    for &j in columns {
        if j >= spec.r() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: spec.r(),
            });
        }
        for i in 0..w.rows() {
            w[(i, j)] = -std::mem::take(&mut w[(i, j)]);
        }
    }
    spec.with_weights(w)
}

/// `⟨v_i^*, v_{l+j}⟩` for `i < l`, `j < r − l`, as exact rationals.
pub fn dual_pairings(rays: &[Vec<BigInt>], dual: &[RatVector]) -> Vec<Vec<BigRational>> {
    let l = dual.len();
    dual.iter()
        .map(|u| rays[l..].iter().map(|v| u.dot_int(v)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::to_bigint_vec;
    use crate::polycone::rays_in_halfspace;

    fn spec(r: usize, s: usize, p: usize, torsion: &[i64], rows: &[Vec<i64>]) -> ActionSpec {
        ActionSpec::from_i64(r, s, p, torsion, rows).unwrap()
    }

    fn block_form_holds(spec: &ActionSpec, f: &SpecialForm) {
        let (p, l) = (spec.p(), spec.l());
        let lp = f.transformed(spec);
        for i in 0..p {
            for j in 0..l {
                assert_eq!(lp[(i, j)], f.l1[(i, j)]);
            }
            for j in 0..p {
                let want = if i == j { f.d.clone() } else { BigInt::zero() };
                assert_eq!(lp[(i, l + j)], want);
            }
        }
        for i in p..spec.m() {
            for j in 0..l {
                assert_eq!(lp[(i, j)], f.l3[(i - p, j)]);
            }
            for j in 0..p {
                assert_eq!(lp[(i, l + j)], f.l4[(i - p, j)]);
            }
        }
        assert!(f.delta.det().unwrap().abs() == BigInt::from(1));
        for j in spec.r()..spec.n() {
            assert_eq!(f.column_order[j], j);
        }
    }

    #[test]
    fn special_form_examples() {
        let s1 = spec(2, 0, 1, &[], &[vec![1, 1]]);
        let f = special_matrix(&s1).unwrap();
        assert_eq!(f.d, BigInt::from(1));
        assert_eq!(f.l1.to_rows(), vec![to_bigint_vec(&[1])]);
        assert_eq!(f.column_order, vec![0, 1]);
        block_form_holds(&s1, &f);

        let s2 = spec(2, 0, 1, &[], &[vec![2, 3]]);
        let f = special_matrix(&s2).unwrap();
        assert_eq!(f.d, BigInt::from(3));
        assert_eq!(f.column_order, vec![0, 1]);
        assert_eq!(f.l1.to_rows(), vec![to_bigint_vec(&[2])]);
        block_form_holds(&s2, &f);

        let s2b = spec(3, 0, 1, &[], &[vec![2, 3, 0]]);
        let f = special_matrix(&s2b).unwrap();
        assert_eq!(f.column_order, vec![0, 2, 1]);
        block_form_holds(&s2b, &f);

        let s3 = spec(3, 1, 2, &[2], &[vec![1, 0, 2, 1], vec![0, 3, -1, 1], vec![1, 1, 0, 1]]);
        let f = special_matrix(&s3).unwrap();
        block_form_holds(&s3, &f);
    }

    #[test]
    fn special_form_fixed_point() {
        let s = spec(2, 0, 1, &[], &[vec![4, 1]]);
        let f = special_matrix(&s).unwrap();
        assert_eq!(f.gamma, IntMatrix::identity(1));
        assert_eq!(f.transformed(&s).to_rows(), vec![to_bigint_vec(&[4, 1])]);
        assert_eq!(f.column_order, vec![0, 1]);
    }

    #[test]
    fn dependent_laurent_weights() {
        let s = spec(1, 2, 2, &[], &[vec![1, 1, 2], vec![0, 1, 2]]);
        assert_eq!(special_matrix(&s), Err(Error::DependentLaurentWeights));
    }

    #[test]
    fn chain_examples() {
        let one = BigInt::from(1);
        let c = positivity_set(&IntMatrix::from_rows(&[vec![-1]], 1).unwrap(), &one, 1).unwrap();
        assert_eq!(c.sets, vec![vec![0]]);
        let c = positivity_set(&IntMatrix::from_rows(&[vec![1]], 1).unwrap(), &one, 1).unwrap();
        assert_eq!(c.sets, vec![Vec::<usize>::new()]);
        let l1 = IntMatrix::from_rows(&[vec![0, 2, -1], vec![-3, 5, 0]], 3).unwrap();
        let c = positivity_set(&l1, &one, 2).unwrap();
        assert_eq!(c.sets, vec![vec![2], vec![0, 2]]);
        let l1 = IntMatrix::from_rows(&[vec![1, 0], vec![0, 0]], 2).unwrap();
        assert_eq!(positivity_set(&l1, &one, 2), Err(Error::ZeroColumn(1)));
        let l1 = IntMatrix::from_rows(&[vec![1, 0], vec![0, 1]], 2).unwrap();
        assert_eq!(positivity_set(&l1, &one, 1), Err(Error::Uncovered(1)));
    }

    #[test]
    fn dual_pairing_relation() {
        for s in [
            spec(3, 0, 1, &[], &[vec![2, 3, 5]]),
            spec(4, 0, 2, &[], &[vec![1, 2, 0, 3], vec![-1, 1, 4, 1]]),
            spec(4, 0, 2, &[3], &[vec![1, 2, 0, 3], vec![-1, 1, 4, 1], vec![1, 0, 2, 1]]),
        ] {
            let f = special_matrix(&s).unwrap();
            let kd = associated_vectors(&s).unwrap();
            let rays: Vec<Vec<BigInt>> = f.column_order[..s.r()].iter().map(|&c| kd.row(c).to_vec()).collect();
            let dual = dual_basis(&rays, s.l()).unwrap();
            let pairings = dual_pairings(&rays, &dual);
            let d = BigRational::from_integer(f.d.clone());
            for (i, row) in pairings.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let b = BigRational::from_integer(f.l1[(j, i)].clone());
                    assert_eq!(*x, -b / &d);
                }
            }
        }
    }

    #[test]
    fn verdict_examples() {
        assert!(positivity_test(&spec(2, 0, 1, &[], &[vec![1, 1]])).positive);
        let v = positivity_test(&spec(1, 1, 1, &[], &[vec![1, 1]]));
        assert_eq!(
            v.witness,
            Some(Witness::NecessaryCondition(NecessaryCondition::TorusRankAtMostLaurent { p: 1, s: 1 }))
        );
        let s = spec(2, 0, 1, &[], &[vec![1, -1]]);
        let v = positivity_test(&s);
        assert!(!v.positive);
        let Some(Witness::FlipSet { columns, normal }) = v.witness else {
            panic!("expected a flip set")
        };
        let kd = associated_vectors(&s).unwrap();
        assert!(kd.rays().iter().all(|r| !exactmat::dot(r, &normal).is_negative()));
        assert!(positivity_test(&flip_matrix(&s, &columns).unwrap()).positive);
    }

    #[test]
    fn trivial_kernel_is_positive() {
        assert!(positivity_test(&spec(1, 0, 1, &[], &[vec![2]])).positive);
        assert!(positivity_test(&spec(0, 1, 1, &[], &[vec![1]])).positive);
    }

    #[test]
    fn torsion_verdicts() {
        assert!(positivity_test(&spec(2, 0, 1, &[2], &[vec![1, 1], vec![1, 0]])).positive);
        assert!(!positivity_test(&spec(2, 0, 1, &[2], &[vec![1, -1], vec![1, 0]])).positive);
    }

    #[test]
    fn agrees_with_plain_halfspace_test() {
        let cases = [
            spec(3, 0, 1, &[], &[vec![1, 2, -1]]),
            spec(3, 0, 1, &[], &[vec![1, 2, 3]]),
            spec(4, 0, 2, &[], &[vec![1, 0, -1, 0], vec![0, 1, 0, 1]]),
            spec(4, 0, 2, &[], &[vec![1, 0, 1, 0], vec![0, 1, 0, -1]]),
            spec(3, 1, 2, &[], &[vec![1, 1, 0, 1], vec![0, 1, 1, 0]]),
            spec(3, 1, 2, &[], &[vec![1, -1, 0, 1], vec![0, 1, 1, 0]]),
        ];
        for s in cases {
            let kd = associated_vectors(&s).unwrap();
            let plain = rays_in_halfspace(s.l(), &kd.rays());
            assert_eq!(positivity_test(&s).positive, !plain.is_contained(), "{s:?}");
        }
    }

    #[test]
    fn flip_matrix_checks() {
        let s = spec(2, 0, 1, &[], &[vec![1, -1]]);
        assert_eq!(flip_matrix(&s, &[]).unwrap(), s);
        assert_eq!(flip_matrix(&s, &[1]).unwrap().weights().to_rows(), vec![to_bigint_vec(&[1, 1])]);
        assert!(matches!(flip_matrix(&s, &[2]), Err(Error::IndexOutOfRange { .. })));
    }
}

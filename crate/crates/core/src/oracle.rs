//! Brute-force ground truth: monomials of a given degree in a box, and
//! minimal generators of finite monomial sets.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::grading::{ActionSpec, DegreeVector, Monomial};
use crate::par::{self, Execution};

/// Machine-word copy of the weights and the target degree.
struct Scanner {
    rows: Vec<Vec<i128>>,
    target: Vec<i128>,
    /// `0` on torus rows, `d_i` on torsion rows.
    modulus: Vec<i128>,
}

fn word(x: &BigInt) -> Result<i128> {
    x.to_i64().map(i128::from).ok_or_else(|| Error::Overflow(x.to_string()))
}

impl Scanner {
    fn new(spec: &ActionSpec, a: &DegreeVector) -> Result<Self> {
        if a.free.len() != spec.p() || a.torsion.len() != spec.t() {
            return Err(Error::DimensionMismatch {
                expected: spec.m(),
                found: a.free.len() + a.torsion.len(),
            });
        }
        let w = spec.weights();
        let rows = (0..w.rows())
            .map(|i| w.row(i).iter().map(word).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let mut modulus = vec![0; spec.p()];
        for d in spec.torsion() {
            modulus.push(word(d)?);
        }
        let target = a
            .free
            .iter()
            .chain(&a.torsion)
            .zip(&modulus)
            .map(|(x, &d)| word(x).map(|x| if d == 0 { x } else { x.rem_euclid(d) }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rows,
            target,
            modulus,
        })
    }

    fn matches(&self, lambda: &[i64]) -> bool {
        self.rows.iter().zip(&self.target).zip(&self.modulus).all(|((row, &t), &d)| {
            let v: i128 = row.iter().zip(lambda).map(|(&w, &x)| w * i128::from(x)).sum();
            if d == 0 {
                v == t
            } else {
                v.rem_euclid(d) == t
            }
        })
    }
}

/// Calls `f` on every point of `lower[i] ≤ λ_i ≤ upper[i]` (`i ≥ 1`) with
/// `λ_0 = first`, in lexicographic order, until `f` returns `true`.
fn scan_slice(first: i64, lower: &[i64], upper: &[i64], mut f: impl FnMut(&[i64]) -> bool) {
    let n = lower.len();
    let mut lambda: Vec<i64> = lower.to_vec();
    lambda[0] = first;
    if (1..n).any(|i| lower[i] > upper[i]) {
        return;
    }
    loop {
        if f(&lambda) {
            return;
        }
        let mut i = n;
        loop {
            if i == 1 {
                return;
            }
            i -= 1;
            if lambda[i] < upper[i] {
                lambda[i] += 1;
                break;
            }
            lambda[i] = lower[i];
        }
    }
}

fn to_monomial(lambda: &[i64]) -> Monomial {
    Monomial(lambda.iter().map(|&x| BigInt::from(x)).collect())
}

/// All `λ` with `lower ≤ λ ≤ upper` coordinatewise and `deg(λ) = a`,
/// sorted lexicographically.
pub fn monomials_in_box(
    spec: &ActionSpec,
    a: &DegreeVector,
    lower: &[i64],
    upper: &[i64],
    exec: Execution,
) -> Result<Vec<Monomial>> {
    let n = spec.n();
    if lower.len() != n || upper.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: lower.len().min(upper.len()),
        });
    }
    let scanner = Scanner::new(spec, a)?;
    if n == 0 {
        return Ok(if scanner.matches(&[]) { vec![Monomial(Vec::new())] } else { Vec::new() });
    }
    let firsts: Vec<i64> = (lower[0]..=upper[0]).collect();
    Ok(par::flat_map(exec, firsts, |x0| {
        let mut out = Vec::new();
        scan_slice(x0, lower, upper, |lambda| {
            if scanner.matches(lambda) {
                out.push(to_monomial(lambda));
            }
            false
        });
        out
    }))
}

/// The box `[0, B]` on polynomial and `[-B, B]` on Laurent coordinates.
pub fn standard_box(spec: &ActionSpec, bound: u32) -> (Vec<i64>, Vec<i64>) {
    let b = i64::from(bound);
    let lower = (0..spec.n()).map(|i| if i < spec.r() { 0 } else { -b }).collect();
    (lower, vec![b; spec.n()])
}

/// All monomials of degree `a` in the standard box of radius `bound`,
/// sorted lexicographically.
pub fn monomials_of_degree(spec: &ActionSpec, a: &DegreeVector, bound: u32) -> Result<Vec<Monomial>> {
    let (lower, upper) = standard_box(spec, bound);
    monomials_in_box(spec, a, &lower, &upper, Execution::default())
}

/// The lexicographically first nonconstant degree-zero monomial in the
/// standard box, if any.
pub fn degree_zero_witness(spec: &ActionSpec, bound: u32) -> Result<Option<Monomial>> {
    let scanner = Scanner::new(spec, &spec.zero_degree())?;
    if spec.n() == 0 {
        return Ok(None);
    }
    let (lower, upper) = standard_box(spec, bound);
    let firsts: Vec<i64> = (lower[0]..=upper[0]).collect();
    Ok(par::find_map_first(Execution::default(), firsts, |x0| {
        let mut found = None;
        scan_slice(x0, &lower, &upper, |lambda| {
            if lambda.iter().any(|&x| x != 0) && scanner.matches(lambda) {
                found = Some(to_monomial(lambda));
                true
            } else {
                false
            }
        });
        found
    }))
}

/// Elements of `set` that are not the product of two nonconstant elements
/// of `set`, restricted to total absolute exponent at most `bound / 2`.
///
/// The restriction discards spurious generators created by truncating a
/// monoid to a box of radius `bound`. Output is sorted.
pub fn minimal_generators(set: &[Monomial], bound: u32) -> Vec<Monomial> {
    let members: HashSet<&[BigInt]> = set.iter().map(|m| m.exponents()).collect();
    let within = |m: &&Monomial| {
        let norm: BigInt = m.exponents().iter().map(Signed::abs).sum();
        norm * 2 <= BigInt::from(bound)
    };
    let candidates: Vec<&Monomial> = set.iter().filter(|m| !m.is_one()).filter(within).collect();
    let keep = par::map(Execution::default(), candidates.clone(), |g| {
        !set.iter().any(|h| {
            if h.is_one() || h == g {
                return false;
            }
            let rest: Vec<BigInt> = g.exponents().iter().zip(h.exponents()).map(|(a, b)| a - b).collect();
            rest.iter().any(|x| !x.is_zero()) && members.contains(rest.as_slice())
        })
    });
    let mut out: Vec<Monomial> = candidates
        .into_iter()
        .zip(keep)
        .filter(|&(_g, k)| k).map(|(g, _k)| g.clone())
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::to_bigint_vec;

    fn spec(r: usize, s: usize, p: usize, torsion: &[i64], rows: &[Vec<i64>]) -> ActionSpec {
        ActionSpec::from_i64(r, s, p, torsion, rows).unwrap()
    }

    fn deg(free: &[i64]) -> DegreeVector {
        DegreeVector {
            free: to_bigint_vec(free),
            torsion: Vec::new(),
        }
    }

    fn monos(rows: &[&[i64]]) -> Vec<Monomial> {
        rows.iter().map(|r| Monomial(to_bigint_vec(r))).collect()
    }

    #[test]
    fn degree_scans() {
        let std = spec(2, 0, 1, &[], &[vec![1, 1]]);
        assert_eq!(monomials_of_degree(&std, &deg(&[0]), 0).unwrap(), monos(&[&[0, 0]]));
        assert_eq!(
            monomials_of_degree(&std, &deg(&[2]), 4).unwrap(),
            monos(&[&[0, 2], &[1, 1], &[2, 0]])
        );
        let neg = spec(2, 0, 1, &[], &[vec![1, -1]]);
        assert_eq!(
            monomials_of_degree(&neg, &deg(&[0]), 2).unwrap(),
            monos(&[&[0, 0], &[1, 1], &[2, 2]])
        );
    }

    #[test]
    fn laurent_and_torsion_scans() {
        let s = spec(1, 1, 1, &[], &[vec![1, 1]]);
        assert_eq!(
            monomials_of_degree(&s, &deg(&[0]), 2).unwrap(),
            monos(&[&[0, 0], &[1, -1], &[2, -2]])
        );
        let z2 = spec(2, 0, 0, &[2], &[vec![1, 1]]);
        let zero = z2.zero_degree();
        assert_eq!(monomials_of_degree(&z2, &zero, 1).unwrap(), monos(&[&[0, 0], &[1, 1]]));
    }

    #[test]
    fn witnesses() {
        assert_eq!(degree_zero_witness(&spec(2, 0, 1, &[], &[vec![1, 1]]), 6).unwrap(), None);
        assert_eq!(
            degree_zero_witness(&spec(2, 0, 1, &[], &[vec![1, -1]]), 6).unwrap(),
            Some(Monomial(to_bigint_vec(&[1, 1])))
        );
        assert_eq!(
            degree_zero_witness(&spec(2, 0, 1, &[], &[vec![2, -3]]), 2).unwrap(),
            None
        );
        assert!(degree_zero_witness(&spec(2, 0, 1, &[], &[vec![2, -3]]), 3).unwrap().is_some());
    }

    #[test]
    fn generator_examples() {
        assert_eq!(minimal_generators(&monos(&[&[0], &[1], &[2], &[3]]), 3), monos(&[&[1]]));
        assert!(minimal_generators(&[], 4).is_empty());
        let z2 = spec(2, 0, 0, &[2], &[vec![1, 1]]);
        let even = monomials_of_degree(&z2, &z2.zero_degree(), 4).unwrap();
        assert_eq!(minimal_generators(&even, 4), monos(&[&[0, 2], &[1, 1], &[2, 0]]));
    }

    #[test]
    fn modes_agree() {
        let s = spec(3, 1, 2, &[], &[vec![1, 2, 0, 1], vec![0, 1, 1, -1]]);
        let (lo, hi) = standard_box(&s, 4);
        let a = deg(&[3, 2]);
        assert_eq!(
            monomials_in_box(&s, &a, &lo, &hi, Execution::Sequential).unwrap(),
            monomials_in_box(&s, &a, &lo, &hi, Execution::Parallel).unwrap()
        );
    }
}

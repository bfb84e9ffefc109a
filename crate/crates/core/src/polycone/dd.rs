//! Double description: from `{x : a·x ≥ 0}` to lineality basis plus extreme rays.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exactmat::{dot, primitive, rank_of_vectors};

/// Generators of a polyhedral cone: the cone equals
/// `span(lineality) + cone(rays)`. Every vector is primitive.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeGenerators {
    pub lineality: Vec<Vec<BigInt>>,
    pub rays: Vec<Vec<BigInt>>,
}

impl ConeGenerators {
    /// Rays followed by `±` each lineality vector.
    pub fn all(&self) -> Vec<Vec<BigInt>> {
        let mut out = self.rays.clone();
        for b in &self.lineality {
            out.push(b.clone());
            out.push(b.iter().map(|x| -x).collect());
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.lineality.is_empty() && self.rays.is_empty()
    }
}

fn unit(dim: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); dim];
    v[i] = BigInt::from(1);
    v
}

/// Incremental (Motzkin) double description of `{x ∈ ℝ^dim : a·x ≥ 0 ∀ a}`.
///
/// Lineality is carried explicitly: while some lineality vector is not
/// orthogonal to the new inequality it is used as a pivot and turned into a
/// ray. Otherwise rays on opposite sides are combined when they are adjacent,
/// which is decided by the algebraic rank test on their common tight set.
pub fn cone_from_inequalities(dim: usize, inequalities: &[Vec<BigInt>]) -> ConeGenerators {
    let mut lineality: Vec<Vec<BigInt>> = (0..dim).map(|i| unit(dim, i)).collect();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut processed: Vec<Vec<BigInt>> = Vec::new();

    for a in inequalities {
        debug_assert_eq!(a.len(), dim);
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        let a = primitive(a.clone());

        if let Some(pos) = lineality.iter().position(|b| !dot(&a, b).is_zero()) {
            let mut pivot = lineality.remove(pos);
            let mut ap = dot(&a, &pivot);
            if ap.is_negative() {
                pivot.iter_mut().for_each(|x| *x = -std::mem::take(x));
                ap = -ap;
            }
            let project = |c: &Vec<BigInt>| {
                let ac = dot(&a, c);
                primitive(c.iter().zip(&pivot).map(|(x, y)| x * &ap - y * &ac).collect())
            };
            lineality = lineality.iter().map(project).collect();
            rays = rays.iter().map(project).collect();
            rays.push(pivot);
        } else {
            let mut kept = Vec::new();
            let mut positive = Vec::new();
            let mut negative = Vec::new();
            for r in rays {
                let v = dot(&a, &r);
                if v.is_negative() {
                    negative.push((r, v));
                } else {
                    if v.is_positive() {
                        positive.push((r.clone(), v));
                    }
                    kept.push(r);
                }
            }
            if let Some(target) = dim.checked_sub(lineality.len() + 2) {
                for (p, ap) in &positive {
                    for (q, aq) in &negative {
                        if adjacent(&processed, p, q, target) {
                            let combined: Vec<BigInt> =
                                q.iter().zip(p).map(|(x, y)| x * ap - y * aq).collect();
                            kept.push(primitive(combined));
                        }
                    }
                }
            }
            rays = kept;
        }
        processed.push(a);
    }

    rays.retain(|r| r.iter().any(|x| !x.is_zero()));
    rays.sort();
    rays.dedup();
    ConeGenerators { lineality, rays }
}

fn adjacent(processed: &[Vec<BigInt>], p: &[BigInt], q: &[BigInt], target: usize) -> bool {
    let tight: Vec<&[BigInt]> = processed
        .iter()
        .filter(|a| dot(a, p).is_zero() && dot(a, q).is_zero())
        .map(Vec::as_slice)
        .collect();
    tight.len() >= target && rank_of_vectors(&tight) == target
}

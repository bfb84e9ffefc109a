//! Lattice points of bounded polyhedra by Fourier–Motzkin projection.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{is_bounded, Polyhedron};
use crate::error::{Error, Result};
use crate::exactmat::gcd_of;
use crate::par::{self, Execution};

/// `a·u + c ≥ 0`.
#[derive(Clone, Debug)]
struct Row {
    a: Vec<BigInt>,
    c: BigInt,
}

/// Divides by the content of `a`, flooring `c`; valid on lattice points.
fn tighten(mut row: Row) -> Row {
    let g = gcd_of(&row.a);
    if !g.is_zero() && g != BigInt::from(1) {
        row.a.iter_mut().for_each(|x| *x = &*x / &g);
        row.c = row.c.div_floor(&g);
    }
    row
}

/// Tightens, then keeps the strongest row per coefficient vector.
fn normalize(rows: Vec<Row>) -> Vec<Row> {
    let mut best: BTreeMap<Vec<BigInt>, BigInt> = BTreeMap::new();
    for row in rows.into_iter().map(tighten) {
        best.entry(row.a)
            .and_modify(|c| {
                if row.c < *c {
                    *c = row.c.clone();
                }
            })
            .or_insert(row.c);
    }
    best.into_iter().map(|(a, c)| Row { a, c }).collect()
}

/// Eliminates the last variable.
fn project(rows: &[Row]) -> Vec<Row> {
    let last = rows[0].a.len() - 1;
    let mut out = Vec::new();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for row in rows {
        let x = &row.a[last];
        if x.is_positive() {
            pos.push(row);
        } else if x.is_negative() {
            neg.push(row);
        } else {
            out.push(Row {
                a: row.a[..last].to_vec(),
                c: row.c.clone(),
            });
        }
    }
    for p in &pos {
        for n in &neg {
            let (sp, sn) = (-&n.a[last], p.a[last].clone());
            let a = (0..last).map(|j| &p.a[j] * &sp + &n.a[j] * &sn).collect();
            out.push(Row {
                a,
                c: &p.c * &sp + &n.c * &sn,
            });
        }
    }
    normalize(out)
}

/// Lattice points of a bounded polyhedron in lexicographic order.
pub fn lattice_points(p: &Polyhedron) -> Result<Vec<Vec<BigInt>>> {
    lattice_points_with(p, Execution::default())
}

/// As [`lattice_points`], splitting the range of the first coordinate
/// across threads when `exec` is parallel.
pub fn lattice_points_with(p: &Polyhedron, exec: Execution) -> Result<Vec<Vec<BigInt>>> {
    let dim = p.dim();
    let rows: Vec<Row> = p
        .rows()
        .iter()
        .map(|(v, phi)| Row {
            a: v.clone(),
            c: phi.clone(),
        })
        .collect();
    if dim == 0 {
        let feasible = rows.iter().all(|r| !r.c.is_negative());
        return Ok(if feasible { vec![Vec::new()] } else { Vec::new() });
    }
    if !is_bounded(p) {
        return Err(Error::Unbounded);
    }

    // systems[i] constrains the first i + 1 coordinates.
    let mut systems = vec![normalize(rows)];
    while systems.last().expect("nonempty")[0].a.len() > 1 {
        let next = project(systems.last().expect("nonempty"));
        if next.is_empty() {
            return Err(Error::Unbounded);
        }
        systems.push(next);
    }
    systems.reverse();
    let constants = project(&systems[0]);
    if constants.iter().any(|r| r.c.is_negative()) {
        return Ok(Vec::new());
    }

    let Some((lo, hi)) = bounds(&systems[0], &[]) else {
        return Ok(Vec::new());
    };
    let mut firsts = Vec::new();
    let mut x = lo;
    while x <= hi {
        firsts.push(x.clone());
        x += 1;
    }
    let points = par::flat_map(exec, firsts, |x0| {
        let mut out = Vec::new();
        let mut prefix = vec![x0];
        scan(&systems, &mut prefix, &mut out);
        out
    });
    Ok(points)
}

/// Integer range of coordinate `prefix.len()` given the earlier coordinates;
/// `None` if it is empty or a row on the prefix alone fails.
fn bounds(rows: &[Row], prefix: &[BigInt]) -> Option<(BigInt, BigInt)> {
    let i = prefix.len();
    let mut lo: Option<BigInt> = None;
    let mut hi: Option<BigInt> = None;
    for row in rows {
        let rest: BigInt = &row.c + row.a[..i].iter().zip(prefix).map(|(a, x)| a * x).sum::<BigInt>();
        let a = &row.a[i];
        if a.is_positive() {
            // a·x ≥ -rest
            let b = (-rest).div_ceil(a);
            if lo.as_ref().is_none_or(|l| b > *l) {
                lo = Some(b);
            }
        } else if a.is_negative() {
            // (-a)·x ≤ rest
            let b = rest.div_floor(&-a);
            if hi.as_ref().is_none_or(|h| b < *h) {
                hi = Some(b);
            }
        } else if rest.is_negative() {
            return None;
        }
    }
    let (lo, hi) = (lo?, hi?);
    (lo <= hi).then_some((lo, hi))
}

fn scan(systems: &[Vec<Row>], prefix: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>) {
    let i = prefix.len();
    if i == systems.len() {
        out.push(prefix.clone());
        return;
    }
    let Some((lo, hi)) = bounds(&systems[i], prefix) else {
        return;
    };
    let mut x = lo;
    while x <= hi {
        prefix.push(x.clone());
        scan(systems, prefix, out);
        prefix.pop();
        x += 1;
    }
}

//! Text and JSON renderings. Both are deterministic for a fixed input.

use std::fmt::Write;

use glaurent::exactmat::VecDisplay;
use glaurent::{
    ComponentDescription, ComponentKind, KernelData, Monomial, NecessaryCondition,
    PositivityVerdict, Witness,
};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::instance::Instance;

fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

fn monomial_json(m: &Monomial) -> Value {
    json!({ "text": m.to_string(), "exponents": ints(m.exponents()) })
}

/// Monomials in descending lexicographic order of exponents.
fn descending(ms: &[Monomial]) -> Vec<&Monomial> {
    let mut v: Vec<&Monomial> = ms.iter().collect();
    v.sort_by(|a, b| b.cmp(a));
    v
}

fn monomials_json(ms: &[Monomial]) -> Value {
    Value::Array(descending(ms).into_iter().map(monomial_json).collect())
}

fn monomial_list(ms: &[Monomial]) -> String {
    descending(ms).iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// Columns of `K` negated so that each has a positive first nonzero entry.
fn normalized_columns(kd: &KernelData) -> Vec<Vec<BigInt>> {
    let mut columns = kd.basis().to_columns();
    for c in &mut columns {
        if c.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            c.iter_mut().for_each(|x| *x = -&*x);
        }
    }
    columns
}

fn to_json_text(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

fn variables(columns: &[usize]) -> String {
    columns.iter().map(|c| format!("x{}", c + 1)).collect::<Vec<_>>().join(", ")
}

pub fn kernel(inst: &Instance, kd: &KernelData, json: bool) -> String {
    let columns = normalized_columns(kd);
    let rays: Vec<Vec<BigInt>> = (0..kd.rays().len())
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect();
    if json {
        return to_json_text(json!({
            "instance": inst.name,
            "l": kd.l(),
            "kernel_basis": Value::Array(columns.iter().map(|c| ints(c)).collect()),
            "rays": Value::Array(rays.iter().map(|r| ints(r)).collect()),
        }));
    }
    let mut out = String::new();
    writeln!(out, "instance: {}", inst.name).unwrap();
    if kd.l() == 0 {
        writeln!(out, "l = 0, kernel trivial").unwrap();
        return out;
    }
    writeln!(out, "l = {}", kd.l()).unwrap();
    writeln!(out, "kernel basis (columns of K):").unwrap();
    for c in &columns {
        writeln!(out, "  {}", VecDisplay(c)).unwrap();
    }
    writeln!(out, "rays:").unwrap();
    for (i, r) in rays.iter().enumerate() {
        writeln!(out, "  v{} = {}", i + 1, VecDisplay(r)).unwrap();
    }
    out
}

fn condition_text(c: &NecessaryCondition) -> String {
    match c {
        NecessaryCondition::TorusRankAtMostLaurent { p, s } => {
            format!("necessary condition p>s fails (p = {p}, s = {s})")
        }
        NecessaryCondition::DependentLaurentWeights => {
            "necessary condition fails: Laurent weights are linearly dependent".to_string()
        }
        NecessaryCondition::ZeroColumn(c) => {
            format!("necessary condition fails: special-form column of x{} is zero", c + 1)
        }
    }
}

fn condition_json(c: &NecessaryCondition) -> Value {
    match c {
        NecessaryCondition::TorusRankAtMostLaurent { p, s } => {
            json!({ "kind": "torus_rank_at_most_laurent", "p": p, "s": s })
        }
        NecessaryCondition::DependentLaurentWeights => json!({ "kind": "dependent_laurent_weights" }),
        NecessaryCondition::ZeroColumn(c) => json!({ "kind": "zero_column", "column": c + 1 }),
    }
}

pub fn positivity(inst: &Instance, verdict: &PositivityVerdict, json: bool) -> String {
    if json {
        let witness = match &verdict.witness {
            None => Value::Null,
            Some(Witness::NecessaryCondition(c)) => json!({ "necessary_condition": condition_json(c) }),
            Some(Witness::FlipSet { columns, normal }) => json!({
                "flip_set": columns.iter().map(|c| c + 1).collect::<Vec<_>>(),
                "halfspace_normal": ints(normal),
            }),
            Some(Witness::HalfspaceNormal(u)) => json!({ "halfspace_normal": ints(u) }),
        };
        return to_json_text(json!({
            "instance": inst.name,
            "positive": verdict.positive,
            "witness": witness,
        }));
    }
    let mut out = String::new();
    writeln!(out, "instance: {}", inst.name).unwrap();
    match &verdict.witness {
        None => writeln!(out, "positive").unwrap(),
        Some(Witness::NecessaryCondition(c)) => writeln!(out, "not positive: {}", condition_text(c)).unwrap(),
        Some(Witness::FlipSet { columns, normal }) => {
            writeln!(out, "not positive").unwrap();
            writeln!(out, "half-space normal: {}", VecDisplay(normal)).unwrap();
            writeln!(out, "flip set: {}", variables(columns)).unwrap();
        }
        Some(Witness::HalfspaceNormal(u)) => {
            writeln!(out, "not positive").unwrap();
            writeln!(out, "half-space normal: {}", VecDisplay(u)).unwrap();
        }
    }
    out
}

pub fn component(inst: &Instance, desc: &ComponentDescription, bound: u32, json: bool) -> String {
    let lift = desc.degree.lift();
    let representative = desc.representative.as_ref().map(|phi| Monomial(phi.clone()));
    if json {
        let kind = match &desc.kind {
            ComponentKind::FiniteBasis(basis) => json!({
                "type": "finite_basis",
                "dimension": basis.len(),
                "monomials": monomials_json(basis),
            }),
            ComponentKind::ModuleGenerators { s0_gens, sa_gens } => json!({
                "type": "module_generators",
                "s0_generators": monomials_json(s0_gens),
                "module_generators": monomials_json(sa_gens),
            }),
            ComponentKind::NotInQ { certified } => json!({
                "type": "not_in_q",
                "certified": certified,
                "search_bound": bound,
            }),
        };
        return to_json_text(json!({
            "instance": inst.name,
            "degree": ints(&lift),
            "representative": representative.as_ref().map_or(Value::Null, monomial_json),
            "kind": kind,
        }));
    }
    let mut out = String::new();
    writeln!(out, "instance: {}", inst.name).unwrap();
    writeln!(out, "degree: {}", VecDisplay(&lift)).unwrap();
    if let Some(m) = &representative {
        writeln!(out, "representative: {m}").unwrap();
    }
    match &desc.kind {
        ComponentKind::FiniteBasis(basis) => {
            writeln!(out, "dim = {}, basis: {}", basis.len(), monomial_list(basis)).unwrap();
        }
        ComponentKind::ModuleGenerators { s0_gens, sa_gens } => {
            writeln!(out, "infinite dimensional").unwrap();
            writeln!(out, "S0 generators: {}", monomial_list(s0_gens)).unwrap();
            writeln!(out, "module generators: {}", monomial_list(sa_gens)).unwrap();
        }
        ComponentKind::NotInQ { certified: true } => {
            writeln!(out, "not in Q: no monomial has this degree").unwrap();
        }
        ComponentKind::NotInQ { certified: false } => {
            writeln!(out, "not in Q within search bound {bound} (inconclusive beyond it)").unwrap();
        }
    }
    out
}

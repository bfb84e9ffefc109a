use std::collections::BTreeSet;

use glaurent::exactmat::{dot, to_bigint_vec};
use glaurent::polycone::{
    cone_contains, hilbert_basis_with, lattice_points_with, rays_in_halfspace, HalfspaceResult, Polyhedron,
    RationalCone,
};
use glaurent::positivity::dual_basis;
use glaurent::{
    associated_vectors, degree, find_representative, flip_matrix, positivity_test, smith_normal_form, ActionSpec,
    ComponentKind, Execution, GradedRing, IntMatrix, Witness, DEFAULT_SEARCH_BOUND,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(m, n)| {
        proptest::collection::vec(proptest::collection::vec(-5i64..=5, n), m)
            .prop_map(move |rows| IntMatrix::from_rows(&rows, n).unwrap())
    })
}

/// Faithful actions with `n ≤ 5`, `s ≤ 1`, `p ≤ 2`, `t ≤ 1`.
fn spec() -> impl Strategy<Value = ActionSpec> {
    (1usize..=5, 0usize..=1, 0usize..=2, 0usize..=1, 2i64..=4)
        .prop_filter("1 ≤ m ≤ n", |&(n, s, p, t, _)| s < n && p + t >= 1 && p + t <= n)
        .prop_flat_map(|(n, s, p, t, d)| {
            proptest::collection::vec(proptest::collection::vec(-5i64..=5, n), p + t).prop_filter_map(
                "faithful",
                move |rows| {
                    let torsion = if t == 1 { vec![d] } else { Vec::new() };
                    ActionSpec::from_i64(n - s, s, p, &torsion, &rows).ok()
                },
            )
        })
}

/// A spec with an admissible exponent vector in `[0, 3]^r × [-3, 3]^s`.
fn spec_and_exponent() -> impl Strategy<Value = (ActionSpec, Vec<BigInt>)> {
    spec().prop_flat_map(|spec| {
        let (r, n) = (spec.r(), spec.n());
        proptest::collection::vec(-3i64..=3, n).prop_map(move |mut v| {
            for x in &mut v[..r] {
                *x = x.abs();
            }
            (spec.clone(), to_bigint_vec(&v))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn smith_form_contract(a in matrix(5, 5)) {
        let f = smith_normal_form(&a);
        prop_assert_eq!(f.u.mul(&a).unwrap().mul(&f.v).unwrap(), f.s.clone());
        prop_assert!(f.u.det().unwrap().abs().is_one());
        prop_assert!(f.v.det().unwrap().abs().is_one());
        let factors = f.invariant_factors();
        prop_assert_eq!(factors.len(), a.rank());
        prop_assert!(factors.iter().all(|x| x.is_positive()));
        for w in factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert_eq!(smith_normal_form(&a), f);
    }

    #[test]
    fn degree_is_additive((spec, x) in spec_and_exponent(), y in proptest::collection::vec(-4i64..=4, 5)) {
        let y = to_bigint_vec(&y[..spec.n()]);
        let sum: Vec<BigInt> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let (dx, dy) = (degree(&spec, &x).unwrap(), degree(&spec, &y).unwrap());
        let lift: Vec<BigInt> = dx.lift().iter().zip(dy.lift()).map(|(a, b)| a + b).collect();
        prop_assert_eq!(degree(&spec, &sum).unwrap(), spec.degree_from_lift(&lift).unwrap());
    }

    #[test]
    fn kernel_columns_have_degree_zero(spec in spec(), u in proptest::collection::vec(-3i64..=3, 5)) {
        let kd = associated_vectors(&spec).unwrap();
        prop_assert_eq!(kd.l(), spec.l());
        prop_assert_eq!(kd.basis().rank(), kd.l());
        for c in kd.basis().to_columns() {
            prop_assert!(degree(&spec, &c).unwrap().is_zero());
        }
        let w = kd.omega(&to_bigint_vec(&u[..kd.l()])).unwrap();
        prop_assert!(degree(&spec, &w).unwrap().is_zero());
    }

    #[test]
    fn representatives_are_admissible((spec, x) in spec_and_exponent()) {
        let kd = associated_vectors(&spec).unwrap();
        let a = degree(&spec, &x).unwrap();
        let phi = find_representative(&spec, &kd, &a, DEFAULT_SEARCH_BOUND).unwrap();
        prop_assert!(spec.is_admissible(&phi));
        prop_assert_eq!(degree(&spec, &phi).unwrap(), a);
    }

    #[test]
    fn positivity_matches_ray_geometry(spec in spec()) {
        let kd = associated_vectors(&spec).unwrap();
        let verdict = positivity_test(&spec);
        let geometric = rays_in_halfspace(kd.l(), &kd.rays());
        prop_assert_eq!(verdict.positive, !geometric.is_contained());
        prop_assert_eq!(verdict.positive, verdict.witness.is_none());
        let normal = match &verdict.witness {
            Some(Witness::FlipSet { normal, .. }) | Some(Witness::HalfspaceNormal(normal)) => Some(normal),
            _ => None,
        };
        if let Some(u) = normal {
            prop_assert!(u.iter().any(|x| !x.is_zero()));
            for v in kd.rays() {
                prop_assert!(!dot(u, &v).is_negative());
            }
        }
        if let HalfspaceResult::ContainedWith(u) = geometric {
            for v in kd.rays() {
                prop_assert!(!dot(&u, &v).is_negative());
            }
        }
    }

    #[test]
    fn flip_sets_make_positive(spec in spec()) {
        if let Some(Witness::FlipSet { columns, .. }) = positivity_test(&spec).witness {
            let flipped = flip_matrix(&spec, &columns).unwrap();
            prop_assert!(positivity_test(&flipped).positive);
            prop_assert!(flip_matrix(&spec, &[spec.r()]).is_err());
        }
    }

    #[test]
    fn dual_basis_pairs_to_identity(a in matrix(3, 3)) {
        let l = a.cols();
        prop_assume!(a.rows() == l && a.rank() == l);
        let rays = a.to_rows();
        let dual = dual_basis(&rays, l).unwrap();
        for (i, d) in dual.iter().enumerate() {
            for (j, v) in rays.iter().enumerate() {
                let expected = if i == j { BigRational::one() } else { BigRational::zero() };
                prop_assert_eq!(d.dot_int(v), expected);
            }
        }
    }

    #[test]
    fn lattice_points_match_brute_force(
        rows in proptest::collection::vec((proptest::collection::vec(-3i64..=3, 2), 0i64..=6), 1..=5)
    ) {
        // Box rows keep the polyhedron inside [-4, 4]^2.
        let mut all = rows.clone();
        all.extend([(vec![1, 0], 4), (vec![-1, 0], 4), (vec![0, 1], 4), (vec![0, -1], 4)]);
        let p = Polyhedron::from_i64(2, &all).unwrap();
        let seq = lattice_points_with(&p, Execution::Sequential).unwrap();
        prop_assert_eq!(&seq, &lattice_points_with(&p, Execution::Parallel).unwrap());
        let mut brute = Vec::new();
        for x in -4i64..=4 {
            for y in -4i64..=4 {
                let u = to_bigint_vec(&[x, y]);
                if p.contains(&u) {
                    brute.push(u);
                }
            }
        }
        prop_assert_eq!(seq, brute);
    }

    #[test]
    fn hilbert_bases_agree_across_modes(
        gens in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 1..=5)
    ) {
        let cone = RationalCone::from_i64(3, &gens).unwrap();
        let seq = hilbert_basis_with(&cone, Execution::Sequential);
        prop_assert_eq!(&seq, &hilbert_basis_with(&cone, Execution::Parallel));
        for h in &seq.elements {
            prop_assert!(cone_contains(&cone, h).unwrap());
        }
    }

    #[test]
    fn finite_components_are_multiplicative((spec, x) in spec_and_exponent(), y_seed in proptest::collection::vec(0i64..=2, 5)) {
        prop_assume!(positivity_test(&spec).positive);
        let ring = GradedRing::new(spec.clone()).unwrap();
        let mut y = to_bigint_vec(&y_seed[..spec.n()]);
        for v in &mut y[spec.r()..] {
            *v = -v.clone();
        }
        let (a, b) = (degree(&spec, &x).unwrap(), degree(&spec, &y).unwrap());
        let sum = spec.degree_from_lift(
            &a.lift().iter().zip(b.lift()).map(|(p, q)| p + q).collect::<Vec<_>>(),
        ).unwrap();
        let basis = |d| match ring.component(d, DEFAULT_SEARCH_BOUND).unwrap().kind {
            ComponentKind::FiniteBasis(m) => m,
            other => panic!("positive grading gave {other:?}"),
        };
        let (sa, sb, sab) = (basis(&a), basis(&b), basis(&sum));
        prop_assert!(sa.iter().any(|m| m.0 == x));
        let target: BTreeSet<_> = sab.iter().map(|m| m.0.clone()).collect();
        for m in &sa {
            prop_assert!(spec.is_admissible(&m.0));
            prop_assert_eq!(degree(&spec, &m.0).unwrap(), a.clone());
            for k in &sb {
                prop_assert!(target.contains(&m.mul(k).0));
            }
        }
    }

    #[test]
    fn module_generators_have_the_degree((spec, x) in spec_and_exponent()) {
        prop_assume!(!positivity_test(&spec).positive && spec.l() <= 3);
        let ring = GradedRing::new(spec.clone()).unwrap();
        // Module generators grow with the zonotope spanned by the S_0 generators.
        prop_assume!(ring.s0_generators().len() <= 8);
        let a = degree(&spec, &x).unwrap();
        let ComponentKind::ModuleGenerators { s0_gens, sa_gens } =
            ring.component(&a, DEFAULT_SEARCH_BOUND).unwrap().kind
        else {
            panic!("non-positive grading gave a finite basis");
        };
        prop_assert!(!s0_gens.is_empty());
        for g in &s0_gens {
            prop_assert!(spec.is_admissible(&g.0) && degree(&spec, &g.0).unwrap().is_zero());
        }
        for g in &sa_gens {
            prop_assert!(spec.is_admissible(&g.0));
            prop_assert_eq!(degree(&spec, &g.0).unwrap(), a.clone());
        }
    }
}

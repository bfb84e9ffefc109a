//! Multigradings of Laurent polynomial rings by diagonal group actions.
//!
//! A weight matrix `L` for a diagonalizable group `A = ℤ^p ⊕ ℤ/d_1 ⊕ … ⊕ ℤ/d_t`
//! acting on `k[x_1, …, x_r, x_{r+1}^±, …, x_n^±]` grades the ring by
//! `deg(x^λ) = L·λ`. This crate decides whether that grading is positive,
//! lists monomial bases of finite-dimensional components, and gives finite
//! generating sets otherwise. All arithmetic is exact.
//!
//! With the `parallel` feature (default) the data-parallel parts run on
//! rayon; [`par::Execution`] selects the mode per call site.

pub mod components;
pub mod error;
pub mod exactmat;
pub mod grading;
pub mod oracle;
pub mod par;
pub mod polycone;
pub mod positivity;

pub use components::{
    build_polytope, component, component_dimension, s0_generators, ComponentDescription,
    ComponentKind, Dimension, GradedRing, OmegaMap,
};
pub use error::{Error, Result};
pub use exactmat::{smith_normal_form, IntMatrix, SmithForm};
pub use grading::{
    associated_vectors, degree, find_representative, ActionSpec, DegreeVector, KernelData,
    Monomial, DEFAULT_SEARCH_BOUND,
};
pub use par::Execution;
pub use positivity::{
    flip_matrix, positivity_test, special_matrix, NecessaryCondition, PositivityVerdict,
    SpecialForm, Witness,
};

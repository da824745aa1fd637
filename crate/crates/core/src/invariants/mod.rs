//! Group specifications, orbit spans, Reynolds averaging, relative invariants
//! and the determinant construction over left translates.

pub mod fmt;
pub mod group_spec;
pub mod orbit;
pub mod reynolds;
pub mod span;

pub use fmt::{
    as_lambda_w_power, fmt_normalize, is_relative_invariant, proposition_gs, proposition_with, PropositionOutcome,
    RelInvariantWitness,
};
pub use group_spec::{det_group_order, n0_for_group, GroupSpec, Sampler};
pub use orbit::{orbit_span, stable_complement, torus_components};
pub use reynolds::{finite_invariants_up_to_degree, invariants_up_to_degree, reynolds, torus_invariants_up_to_degree};
pub use span::LocSpan;

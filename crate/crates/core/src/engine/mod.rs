//! Compiles a functional identity into a linear system over the entries of the
//! unknown maps and solves it exactly.
//!
//! A degree-`n` identity holds for every `X` iff its symmetrized multilinear
//! form vanishes on every multiset of `n` basis vectors (characteristic zero).
//! Each multiset contributes `d` coordinate equations per difference
//! `side_i - side_{i+1}`.

mod binding;
mod compile;
mod eval;
mod predict;
mod solve;
mod verify;

pub use binding::{Binding, CentralValue, SideConstraint};
pub use compile::{compile_constraints, unknown_layout, CompiledSystem, Layout, SparseRow};
pub use eval::{arrangements, multiset_count, multisets};
pub use predict::{predicted_central_multipliers, predicted_central_pairs, predicted_generalized_space};
pub use solve::{scale_first_map, solve_identity, solve_system, SolutionSpace};
pub use verify::{
    verify_solution, Checks, ClosedIdentity, Comparison, Expectation, MapClass, PointwiseOutcome,
    Predicate, PredicateOutcome, Verdict, VerificationReport,
};

//! Decorated dual graphs, stability validation, and integrals of
//! ψ-monomials against pullbacks of stratum classes.
//!
//! A graph `Γ` stands for the pushforward class `gl_*[1]` of its gluing
//! map, or `gl_*` of its decorations. No `1/|Aut(Γ)|` factor is applied
//! anywhere. A ψ-decoration on a node point is a class on the vertex's own
//! moduli space; after pulling back along the forgetful map it becomes
//! `π^*ψ`, not `ψ`, on the larger vertex space.

mod eval;
mod expression;
mod graph;
mod literal;

pub use eval::{
    pullback_integral, pullback_strata, Evaluator, PullbackTally, Stratum, VertexFactor,
    TARGET_GENUS,
};
pub use expression::{expression_integral, StrataExpression};
pub use graph::{
    builtin_delta, builtin_delta0, builtin_gamma_psi, validate_graph, DualGraph, Edge, HalfEdge,
    Leg, ValidationReport, Violation,
};

//! Exact scalar arithmetic and the rational simplex solver.

mod lp;
mod rational;

pub use lp::{
    solve, strictly_feasible, Constraint, LinearProgram, LpOutcome, Relation, Strictness,
};
pub use rational::{
    dot, format_rational, int, is_zero_vec, l1_norm, linf_norm, parse_rational, primitive, rat,
    Rational,
};

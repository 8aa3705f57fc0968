//! Exact arithmetic: rationals, the field ℚ(√N), dense matrices, polynomials
//! and a certifying feasibility solver for quadratic systems.

pub mod feasibility;
pub mod matrix;
pub mod poly;
pub mod rat;
pub mod scalar;

pub use feasibility::{
    replay, staged_feasibility, staged_feasibility_with, Certificate, ConstraintSystem,
    Contradiction, Equation, Feasibility, SolverOptions, Src, Step,
};
pub use matrix::{
    dot, nullspace, solve_consistent, solve_consistent_many, span_projection, Matrix, Vector,
};
pub use poly::{Monomial, Poly};
pub use rat::Rat;
pub use scalar::Scalar;

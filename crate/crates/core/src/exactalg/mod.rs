//! Exact scalar, polynomial and rational-function arithmetic, plus the
//! linear-algebra kernels every other module builds on.

mod matrix;
mod poly;
mod ratfun;
mod rational;

pub use matrix::{rank_of, solve_linear, LinearSolution, Matrix};
pub use poly::{all_rational_roots, discrete_antiderivative, rational_roots, Poly};
pub use ratfun::RationalFunction;
pub use rational::Rational;

//! Exact sparse polynomials over the rationals.

pub mod context;
pub mod matrix;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod polynomial;
pub mod rational;

pub use context::{AuxVar, Var, VarSet, VariableContext};
pub use matrix::{subsets, Minor, SymbolicMatrix};
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderName};
pub use polynomial::{Multidegree, Polynomial};
pub use rational::Rational;

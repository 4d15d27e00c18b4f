//! Exact ideals of camera arrangements.
//!
//! The crate builds the determinantal ideals attached to a pinhole camera
//! arrangement (k-focal, Faugeras, Ma) and its multiview ideal, and checks the
//! identities relating them with a small Groebner engine over the rationals.

pub mod camera;
pub mod error;
pub mod focal;
pub mod ideal;
pub mod linalg;
pub mod multiview;
pub mod poly;

pub use camera::{Arrangement, Camera, ProjectivePoint};
pub use error::{Error, Result};
pub use ideal::{GroebnerBasis, Ideal, IrrelevantIdeal};
pub use linalg::QMatrix;
pub use poly::{Monomial, MonomialOrder, Polynomial, Rational, SymbolicMatrix, Var, VarSet, VariableContext};

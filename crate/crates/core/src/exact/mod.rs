//! Exact scalars, polynomials, linear algebra, linear programming and
//! factored rational differential forms.

pub mod form;
pub mod linear;
pub mod lp;
pub mod matrix;
pub mod poly;
pub mod rational;

pub use form::RationalForm;
pub use linear::LinearFunctional;
pub use matrix::ExactMatrix;
pub use poly::{Monomial, MultiPoly};
pub use rational::Rational;

//! Exact arithmetic over prime fields.

pub mod algebra;
pub mod factor;
pub mod fp;
pub mod linalg;
pub mod place;
pub mod poly;
pub mod ratfun;

pub use algebra::{algebra_inverse, AlgebraElt};
pub use factor::{factor, irreducible_factors, is_irreducible, squarefree};
pub use place::Place;
pub use poly::Poly;
pub use ratfun::RatFun;

//! Ramification of inseparable coverings of curves in characteristic p given
//! by actions of diagonalizable group schemes `D(M)`, for finite abelian
//! p-groups `M`.
//!
//! A covering is an M-graded algebra `A = ⊕ A_0 e_m` over the base with
//! multiplication `e_m e_n = α(m,n) e_{m+n}`. The crate computes stabilizers
//! and ramification multiplicities place by place, cross-checks them against
//! a Smith-normal-form length computation, and assembles the ramification
//! divisor and the Riemann–Hurwitz genus.

pub mod arith;
pub mod covering;
pub mod divisor;
pub mod error;
pub mod gen;
pub mod genus;
pub mod gorenstein;
pub mod pgroup;
pub mod ramification;
pub mod snf;

pub use arith::{algebra_inverse, factor, AlgebraElt, Place, Poly, RatFun};
pub use covering::{Cocycle, Covering, CoveringFile, KummerData};
pub use divisor::{DivPlace, Divisor};
pub use error::{Error, Result};
pub use genus::{predict_genus, GenusReport, GlobalModel};
pub use pgroup::{GElt, PGroup, Subgroup};
pub use snf::oracle_multiplicity;
pub use ramification::{LocalModel, Normality, NormalityPolicy, RamOptions, RamReport};

//! Exact arithmetic: rationals, polynomials and rational functions over Q,
//! quadratic extensions, modular irreducibility tests, integer factoring.

pub mod factor;
pub mod field;
pub mod modp;
pub mod poly;
pub mod polyq;
pub mod quadext;
pub mod rat;
pub mod ratfunc;

pub use factor::{factor_integer, is_probable_prime, FactorBudget, FactoredInt};
pub use field::{BaseField, Field};
pub use modp::{degree_pattern_certificate, irreducibility_witness};
pub use poly::Poly;
pub use polyq::{
    is_nth_power_up_to_constant, nth_root_poly, squarefree_decomposition, PolyQ,
    SquarefreeDecomposition,
};
pub use quadext::QuadExt;
pub use rat::Rat;
pub use ratfunc::RatFunc;

/// Discriminant of a polynomial over Q.
pub fn poly_discriminant(p: &PolyQ) -> crate::error::Result<Rat> {
    poly::discriminant(p)
}

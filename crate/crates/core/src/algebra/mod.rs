//! Exact univariate polynomial and rational-function arithmetic over an
//! abstract coefficient field.

pub mod field;
pub mod gcd;
pub(crate) mod modp;
pub mod poly;
pub mod ratfunc;
pub mod resultant;
pub mod squarefree;

pub use field::{int, rat, Field, Gauss, Rational};
pub use gcd::{poly_gcd, solve_diophantine, xgcd};
pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use resultant::{resultant, sylvester_resultant};
pub use squarefree::{
    is_squarefree, partial_fractions, squarefree_factorize, PartialFractionTerm, PartialFractions,
    SquareFreeFactorization,
};

/// Divides `g` by `b`: `g = quotient·b + remainder`.
pub fn poly_divmod<F: Field>(g: &Poly<F>, b: &Poly<F>) -> crate::Result<(Poly<F>, Poly<F>)> {
    g.divmod(b)
}

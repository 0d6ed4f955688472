//! Exact arithmetic: coefficient fields, monomials and orders, sparse
//! polynomials and quotient-ring presentations.

mod field;
mod monomial;
mod parse;
mod poly;
mod presentation;

pub use field::{Coeff, Field};
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use parse::parse_polynomial;
pub use poly::{PolyRing, Polynomial};
pub use presentation::{Ring, RingPresentation};

/// Weighted homogeneity test with the ring's grading.
pub fn is_homogeneous(p: &Polynomial, ring: &RingPresentation) -> crate::error::Result<(bool, Option<u64>)> {
    match ring.degree_of(p)? {
        Some(d) => Ok((true, d)),
        None => Ok((false, None)),
    }
}

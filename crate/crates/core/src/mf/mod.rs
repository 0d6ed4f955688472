//! Matrix and coherent factorizations of a potential `w`, with the
//! `Z/2`-graded morphism calculus. Conventions: `Φ = δ₁: M¹ -> M⁰`,
//! `Ψ = δ₀: M⁰ -> M¹`; `shift(Φ, Ψ) = (-Ψ, -Φ)`;
//! `dual(Φ, Ψ) = (Ψᵀ, -Φᵀ)` over `-w`.

pub mod cohomology;
pub mod factorization;
pub mod morphism;
pub mod potential;

pub use factorization::{CoherentFactorization, MatrixFactorization, Violation};
pub use morphism::{contracting_homotopy, is_contractible, MFMorphism};
pub use potential::Potential;
pub use cohomology::{hom_cohomology, restrict_to_zero_locus, HomCohomology, PeriodicComplex};

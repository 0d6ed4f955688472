//! Finitely presented modules over ring presentations.

pub mod ideal;
pub mod linalg;
pub mod module;
pub mod ops;
pub mod resolution;

pub use ideal::Ideal;
pub use module::{subquotient, ModuleMap, PresentedModule};
pub use ops::{annihilator, cokernel, image, is_exact_at, is_isomorphism, kernel, prune, Pruned};
pub use resolution::{factor_pair, free_resolution, hypersurface_pair, is_perfect, periodicity_certificate, FreeResolution, NonPerfectCertificate, Perfectness};

//! Functors between factorizations and modules over `S = R/(w)`.

pub mod change;
pub mod complex;
pub mod stabilize;
pub mod support;
pub mod xi;

pub use change::{pullback, pullback_coherent, pushforward, FiniteExtension, RingMap};
pub use complex::ModuleComplex;
pub use stabilize::{stabilize, Stabilization};
pub use support::{support_cat, support_set};
pub use xi::{flat_cover, l_xi, upsilon, upsilon_xi_unit, xi, xi_morphism, CoverStrategy, FlatCover, LXi, XiUnit};

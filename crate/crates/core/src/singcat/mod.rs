//! Certificate-producing verifiers for the equivalence between matrix
//! factorizations and the singularity category of the zero locus.
//!
//! Every verifier returns a report that carries the data behind each
//! verdict (homotopies, lifts, resolutions), so that a pass can be
//! rechecked by recombination and a failure can be inspected.

mod equivalence;
mod periodicity;
mod relative;

pub use equivalence::{shift_square_witness, verify_main_equivalence, Check, CheckKind, EquivalenceReport, Evidence, ShiftSquareWitness};
pub use periodicity::{verify_periodicity, PeriodicityReport};
pub use relative::{relative_perfect_certificate, RelativePerfectness, RelativeWitness};

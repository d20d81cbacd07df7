//! Exact invariants of ideal-adic filtrations in one-dimensional monomial
//! settings: numerical semigroup rings and their monomial ideals, Ratliff-Rush
//! closures, Hilbert coefficients, graded local cohomology length tables and
//! the degree-zero Bockstein kernel/image bookkeeping, together with a seeded
//! explorer over monomial ideals in polynomial rings.

pub mod cohomology;
pub mod explorer;
pub mod filtration;
pub mod monomial;
pub mod oracle;
pub mod policy;
pub mod report;
pub mod semigroup;

pub use policy::{CertStatus, StabilizationPolicy};

//! Harmonic analysis on finite groups: coset actions, character tables and
//! the trace of the right regular representation on vector-valued functions
//! on `Γ\G`, computed along independent routes that must agree.

pub mod algebra;
pub mod catalog;
pub mod chartable;
pub mod coset;
pub mod error;
pub mod group;
pub mod trace;

pub use algebra::{fourier_trace, fourier_trace_pair, FunctionSpec, GroupFunction};
pub use catalog::{catalog, lookup, CatalogEntry, Family};
pub use chartable::{CharacterTable, Irrep, OrthogonalityReport, TableOptions};
pub use coset::CosetSpace;
pub use error::{Error, Result};
pub use group::{ClassData, FiniteGroup, Permutation, Subgroup};
pub use trace::{
    class_sum_expansion_check, plancherel_check, verify_all, CheckResult, IdentityCheck,
    Multiplicity, MultiplicitySpectrum, Tolerances, TraceContext, Verification,
};

pub use num_complex::Complex64;

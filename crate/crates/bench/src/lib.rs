//! Benchmark fixtures shared by the criterion targets.

use fgtrace::{lookup, FiniteGroup};

/// Catalog groups of increasing order used across the benches.
pub const SIZES: [&str; 4] = ["dihedral4", "symmetric4", "alternating5", "symmetric5"];

pub fn group(name: &str) -> FiniteGroup {
    lookup(name)
        .and_then(|e| e.build().ok())
        .unwrap_or_else(|| panic!("no catalog group {name}"))
}

//! Shared fixtures for the criterion benches.

use bohr_core::{FamilyKind, RadiusFamily};

/// The five radius families at `m` with `k = 1` for the harmonic ones.
pub fn table_families(m: u32) -> Vec<RadiusFamily> {
    FamilyKind::ALL
        .iter()
        .map(|&kind| RadiusFamily::new(kind, m, 1.0).expect("valid table family"))
        .collect()
}

//! Built-in species parameters.

use edeco::sensitivity::{SpeciesParams, ATOMIC_MASS_UNIT};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct SpeciesEntry {
    pub name: &'static str,
    pub params: SpeciesParams,
    pub provenance: &'static str,
}

/// Only strontium ships with the tool; other species come from config keys.
pub fn table() -> Vec<SpeciesEntry> {
    vec![SpeciesEntry {
        name: "Sr",
        params: SpeciesParams {
            gamma_sp: 1e-3,
            delta_e: 1.0,
            mass: 87.62 * ATOMIC_MASS_UNIT,
            kappa: 1e-17,
            k3: 1e-41,
            scattering: None,
        },
        provenance: "order-of-magnitude working point for an optical clock transition; \
                     gamma_sp, kappa and k3 are estimates, not measured values",
    }]
}

pub fn lookup(name: &str) -> Option<SpeciesEntry> {
    table().into_iter().find(|s| s.name.eq_ignore_ascii_case(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_are_valid() {
        for s in table() {
            s.params.validate().unwrap();
        }
        assert!(lookup("sr").is_some());
        assert!(lookup("Yb").is_none());
    }
}

//! Sensitivity estimates and the GHZ experiment design.

mod bounds;
mod design;
mod species;

pub use bounds::{
    cosmic_bound, distance_reach, matterwave_bound, single_atom_reach, DistanceReach, Length,
    MatterwaveBound,
};
pub use design::{
    detectable_gamma, ghz_design, ghz_design_grid, heuristic_center, log_grid, DesignRates,
    DesignResult,
};
pub use species::{chi, kappa_from_scattering, ScatteringLengths, SpeciesParams, ATOMIC_MASS_UNIT};

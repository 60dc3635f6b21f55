//! Exact homomorphism-type counting, weighted homomorphism sums and
//! densities, labeled edge-tuple profiles, and neighborhood distributions.

mod balls;
mod hom;
mod profile;
mod weighted;

pub use balls::{ball_distribution, BallDistribution};
pub use hom::{hom_count, ind_count, inj_count, MapKind};
pub use profile::{i_profile, PatternProfile, ProfileEntry};
pub use weighted::{
    log_t_density, log_weighted_hom, t_density, t_density_exact, weighted_hom, weighted_hom_exact,
    LoadedTarget,
    WeightedTarget,
};

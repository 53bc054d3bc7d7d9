//! Closed-form utility bounds, independent oracles for the calibration
//! layer, and the simulation harnesses used to check privacy and utility
//! claims empirically.

mod audit;
mod bounds;
mod montecarlo;
mod oracle;
pub(crate) mod stats;
mod utility;

pub use audit::{
    privacy_audit, tail_audit, AuditConfig, AuditReport, BitAudit, BitClass, TailAudit,
};
pub use bounds::{
    accuracy_bound_private, accuracy_bound_standard, accuracy_bound_vs_standard, fpr_approx,
    fpr_bound, fpr_exact, random_guess_rate, UtilityParams,
};
pub use montecarlo::{mc_w_distribution, occupancy_w_distribution, McWResult, MIN_MC_TRIALS};
pub use oracle::{enumerate_y, enumerate_z};
pub use stats::{empirical_quantile, tv_distance, Proportion};
pub use utility::{
    run_utility_experiment, BudgetSpec, OutcomeCounts, QueryOutcome, UtilityConfig, UtilityReport,
};

/// Universe used by the simulations; large enough that sampled datasets and
/// queries practically never collide by chance.
pub const SIM_UNIVERSE: u64 = 1 << 40;

//! Certified verdicts on the Golod property: sufficient conditions that
//! prove it and two engines that refute it.

mod checks;
mod orchestrator;
mod rho;
mod verdict;

pub use checks::{
    componentwise_linear_check, lofwall_check, product_golod_check, prop_cycle_golod_check, prop_cycle_golod_check_by_cycles,
    sandwich_check, sandwich_product_check, sega_koszulness_check, strongly_golod_check, variable_power_checks,
    VariablePowerReport,
};
pub use orchestrator::{golod_verdict, golod_verdict_traced, Criterion, GolodConfig, TraceEntry, VerdictRun};
pub use rho::{is_variable_ideal, proven_rho, rho_estimate, rho_estimate_with, Rho, RhoEstimate, RhoFailure};
pub use verdict::{GolodStatus, GolodVerdict};

//! Figure- and theorem-level reproductions as data artifacts: parameter
//! sweeps, the two-protocol comparison, the trade-off table, and the
//! closed-form-vs-simulation verification report.

mod compare;
mod report;
mod sweep;
mod verify;

pub use compare::{compare_protocols, Comparison, ComparisonRecord};
pub use report::{tradeoff_report, TradeoffReport, TradeoffRow};
pub use sweep::{sweep_max_rounds, Axis, AxisParam, DeltaConvention, SweepRecord, SweepSpec};
pub use verify::{verify_closed_forms, VerificationReport, VerificationRow};

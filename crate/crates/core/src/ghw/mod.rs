//! Generalized Hamming weights: exhaustive search, period-based zero
//! counts, closed forms and bounds.

pub mod bounds;
pub mod brute;
pub mod closed_form;
pub mod hierarchy;
pub mod oracle;
pub mod subspace;

pub use bounds::{ghw_bounds, BoundChecks, GhwBounds};
pub use brute::{enumeration_cost, ghw_bruteforce, n_zero_direct, BruteForce, DEFAULT_GHW_BUDGET};
pub use closed_form::{corollaries, ghw_closed_form, ClosedFormSource, ClosedFormValue, Corollary};
pub use hierarchy::{
    hierarchy_report, GhwRecord, HierarchyOptions, HierarchyReport, Method, RecordChecks,
};
pub use oracle::{
    class_profile, n_zero_via_periods, period_oracle, ClassProfile, OracleCoverage, OracleTally,
    PeriodFormula,
};
pub use subspace::{
    for_each_subspace, gaussian_binomial, span_nonzero, subspace_iter, Subspace, SubspaceIter,
};

//! Trace codes from defining sets over odd-characteristic finite fields,
//! exact Gauss periods, and generalized Hamming weights by exhaustive
//! subspace enumeration.

pub mod arith;
pub mod codes;
pub mod cyclotomy;
pub mod error;
pub mod field;
pub mod ghw;
pub mod report;
pub mod verify;

pub use arith::Rational;
pub use codes::{build_code, DefiningSet, Family, LinearCode, SkewSpec};
pub use cyclotomy::{CyclotomicInt, CyclotomyParams, GaussPeriod};
pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElement};
pub use ghw::{
    ghw_bruteforce, ghw_closed_form, hierarchy_report, ClassProfile, GhwRecord, HierarchyOptions,
    HierarchyReport, Subspace,
};
pub use verify::{sweep, verify_instance, Instance, InstanceReport, SweepReport, VerifyOptions};

//! Weight hierarchy of one code with every available cross-check.

use serde::Serialize;

use super::bounds::{ghw_bounds, BoundChecks, GhwBounds};
use super::brute::{ghw_bruteforce, DEFAULT_GHW_BUDGET};
use super::closed_form::{corollaries, ghw_closed_form, ClosedFormValue, Corollary};
use super::oracle::{class_profile, period_oracle, OracleCoverage, OracleTally, PeriodFormula};
use super::subspace::Subspace;
use crate::arith::Rational;
use crate::codes::{Family, LinearCode};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HierarchyOptions {
    /// Largest `r` to report; `None` means `m`.
    pub r_max: Option<u32>,
    /// Column-check budget per `r`.
    pub budget: u128,
    /// Fields up to this size get the period oracle on every subspace.
    pub oracle_exhaustive_q: u32,
    /// Subspaces sampled per `r` by the period oracle on larger fields.
    pub oracle_samples: u128,
}

impl Default for HierarchyOptions {
    fn default() -> Self {
        HierarchyOptions {
            r_max: None,
            budget: DEFAULT_GHW_BUDGET,
            oracle_exhaustive_q: 81,
            oracle_samples: 64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Brute,
    ClosedForm,
    /// Over budget and not covered by any closed form.
    None,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RecordChecks {
    pub bounds: Option<BoundChecks>,
    pub closed_form_match: Option<bool>,
    /// Griesmer-like equality is claimed for this value.
    pub griesmer_expected: bool,
    /// Plotkin-like equality is claimed for this value.
    pub plotkin_expected: bool,
    pub oracle: Option<OracleTally>,
    /// Whether this brute-force value exceeds the previous one.
    pub monotone: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GhwRecord {
    pub r: u32,
    pub d_r: Option<u64>,
    pub method: Method,
    pub d_brute: Option<u64>,
    pub d_closed: Option<ClosedFormValue>,
    pub n_zero_max: Option<u64>,
    pub argmax: Option<Subspace>,
    pub max_profile: Option<Vec<u64>>,
    pub visited: Option<u128>,
    pub bounds: Option<GhwBounds>,
    pub checks: RecordChecks,
    pub discrepancies: Vec<String>,
}

impl GhwRecord {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HierarchyReport {
    pub family: Option<Family>,
    pub n: usize,
    pub k: usize,
    pub records: Vec<GhwRecord>,
    /// Dimensions skipped because the budget was exceeded.
    pub over_budget: Vec<u32>,
    pub truncated_at: Option<u32>,
    pub corollaries: Vec<Corollary>,
    /// Largest exact period of order `N1`, when rational.
    #[serde(with = "crate::report::opt_rational")]
    pub max_period_exact: Option<Rational>,
    /// Whether each corollary's period maximum equals the exact one.
    pub max_period_match: Option<bool>,
    pub discrepancies: Vec<String>,
}

impl HierarchyReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty() && self.records.iter().all(GhwRecord::passed)
    }

    /// `d_r` values in order of `r`, where known.
    pub fn values(&self) -> Vec<Option<u64>> {
        self.records.iter().map(|r| r.d_r).collect()
    }
}

/// Brute-force and closed-form hierarchy of `code` for `r = 1..=r_max`,
/// with bounds, the period oracle and monotonicity checked.
pub fn hierarchy_report(code: &LinearCode, opts: HierarchyOptions) -> Result<HierarchyReport> {
    let ctx = code.ctx();
    let (p, m, q) = (ctx.p(), ctx.m(), ctx.q());
    if !code.is_injective() {
        return Err(Error::NotInjective { k: code.k, m });
    }
    let r_max = opts.r_max.unwrap_or(m).min(m);
    let dset = code.defining_set();
    let family = dset.map(|d| d.family);
    let mut report = HierarchyReport {
        family,
        n: code.n,
        k: code.k,
        records: Vec::new(),
        over_budget: Vec::new(),
        truncated_at: None,
        corollaries: Vec::new(),
        max_period_exact: None,
        max_period_match: None,
        discrepancies: Vec::new(),
    };

    let mut formula = None;
    if let Some(ds) = dset {
        match PeriodFormula::new(&ds.params, ds.family) {
            Ok(f) => formula = Some(f),
            Err(e) => report.discrepancies.push(format!("period formula: {e}")),
        }
        if ds.family != Family::C && ds.params.order_ok {
            match corollaries(&ds.params) {
                Ok(c) => report.corollaries = c,
                Err(e) => report.discrepancies.push(format!("corollaries: {e}")),
            }
            let exact_max = formula
                .as_ref()
                .and_then(|f| f.etas().iter().max().copied());
            report.max_period_exact = exact_max;
            if let (Some(mx), false) = (exact_max, report.corollaries.is_empty()) {
                let ok = report.corollaries.iter().all(|c| c.max_period == mx);
                report.max_period_match = Some(ok);
                if !ok {
                    report
                        .discrepancies
                        .push(format!("corollary period maximum differs from exact {mx}"));
                }
            }
        }
    }

    let coverage = if q <= opts.oracle_exhaustive_q {
        OracleCoverage::All
    } else {
        OracleCoverage::Sample(opts.oracle_samples)
    };
    let mut d1: Option<u64> = None;
    let mut last_brute: Option<u64> = None;
    for r in 1..=r_max {
        let mut rec = GhwRecord {
            r,
            d_r: None,
            method: Method::None,
            d_brute: None,
            d_closed: None,
            n_zero_max: None,
            argmax: None,
            max_profile: None,
            visited: None,
            bounds: None,
            checks: RecordChecks::default(),
            discrepancies: Vec::new(),
        };
        match ghw_bruteforce(code, r, opts.budget) {
            Ok(b) => {
                if let Some(ds) = dset {
                    if ds.family != Family::C {
                        rec.max_profile =
                            Some(class_profile(ctx, &b.argmax, ds.params.reduced_index).counts);
                    }
                }
                rec.d_brute = Some(b.d_r);
                rec.n_zero_max = Some(b.n_zero_max);
                rec.argmax = Some(b.argmax);
                rec.visited = Some(b.visited);
                rec.checks.monotone = Some(last_brute.is_none_or(|prev| b.d_r > prev));
                if rec.checks.monotone == Some(false) {
                    rec.discrepancies
                        .push(format!("d_{r} does not exceed d_{}", r - 1));
                }
                last_brute = Some(b.d_r);
            }
            Err(Error::EnumerationBudgetExceeded { .. }) => {
                report.over_budget.push(r);
                report.truncated_at.get_or_insert(r);
            }
            Err(e) => return Err(e),
        }
        if let Some(ds) = dset {
            match ghw_closed_form(&ds.params, ds.family, r) {
                Ok(v) => rec.d_closed = v,
                Err(e) => rec.discrepancies.push(format!("closed form: {e}")),
            }
            if let Some(f) = &formula {
                if rec.d_brute.is_some() {
                    let t = period_oracle(code, f, r, coverage);
                    if !t.passed() {
                        rec.discrepancies.push(format!(
                            "period oracle: {} mismatches, {} spans not scalar-closed",
                            t.mismatches, t.not_scalar_closed
                        ));
                    }
                    rec.checks.oracle = Some(t);
                }
            }
        }
        let closed = rec.d_closed.as_ref().map(|c| c.value);
        if let (Some(b), Some(c)) = (rec.d_brute, closed) {
            rec.checks.closed_form_match = Some(b == c);
            if b != c {
                rec.discrepancies
                    .push(format!("brute force {b} differs from closed form {c}"));
            }
        }
        (rec.d_r, rec.method) = match (rec.d_brute, closed) {
            (Some(b), _) => (Some(b), Method::Brute),
            (None, Some(c)) => (Some(c), Method::ClosedForm),
            _ => (None, Method::None),
        };
        if r == 1 {
            d1 = rec.d_r;
        }
        if let (Some(d), Some(d1)) = (rec.d_r, d1) {
            let bounds = ghw_bounds(code.n as u64, code.k as u32, p as u64, d1, r);
            let checks = bounds.check(d);
            if !checks.all_hold() {
                rec.discrepancies
                    .push(format!("d_{r} = {d} violates {bounds:?}"));
            }
            if let Some(ds) = dset {
                let n1_one = ds.family == Family::A && ds.params.reduced_index == 1;
                rec.checks.griesmer_expected =
                    ds.family == Family::C || (ds.family == Family::A && rec.d_closed.is_some());
                rec.checks.plotkin_expected = n1_one;
            }
            if rec.checks.griesmer_expected && !checks.griesmer_attained {
                rec.discrepancies.push(format!(
                    "d_{r} = {d} misses Griesmer-like {}",
                    bounds.griesmer
                ));
            }
            if rec.checks.plotkin_expected && !checks.plotkin_attained {
                rec.discrepancies.push(format!(
                    "d_{r} = {d} misses Plotkin-like {}",
                    bounds.plotkin
                ));
            }
            rec.bounds = Some(bounds);
            rec.checks.bounds = Some(checks);
        }
        report.records.push(rec);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::codes::{build_code, DefiningSet, SkewSpec};
    use crate::cyclotomy::CyclotomyParams;
    use crate::field::FieldCtx;

    fn code(p: u64, m: u32, n: u64, family: Family, skew: Option<SkewSpec>) -> LinearCode {
        let ctx = Arc::new(FieldCtx::new(p, m).unwrap());
        let params = CyclotomyParams::new(ctx, n).unwrap();
        build_code(&DefiningSet::new(params, family, skew).unwrap())
    }

    #[test]
    fn q9_full_group() {
        let rep =
            hierarchy_report(&code(3, 2, 1, Family::A, None), HierarchyOptions::default()).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.values(), vec![Some(6), Some(8)]);
        assert!(rep
            .records
            .iter()
            .all(|r| r.checks.closed_form_match == Some(true)));
    }

    #[test]
    fn q7_skew() {
        let rep = hierarchy_report(
            &code(7, 1, 2, Family::C, Some(SkewSpec::Canonical)),
            HierarchyOptions::default(),
        )
        .unwrap();
        assert!(rep.passed());
        let c = rep.records[0].checks.bounds.unwrap();
        assert!(c.plotkin_attained && c.griesmer_attained);
        assert_eq!(rep.values(), vec![Some(3)]);
    }

    #[test]
    fn q25_family_b() {
        let rep =
            hierarchy_report(&code(5, 2, 2, Family::B, None), HierarchyOptions::default()).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.values(), vec![Some(2), Some(3)]);
        assert_eq!(rep.records[0].d_closed.as_ref().map(|c| c.value), Some(2));
        assert!(rep.records[1].d_closed.is_none());
    }

    #[test]
    fn truncation_is_reported() {
        let opts = HierarchyOptions {
            budget: 100,
            ..Default::default()
        };
        let rep = hierarchy_report(&code(3, 3, 2, Family::A, None), opts).unwrap();
        assert_eq!(rep.over_budget, vec![1, 2]);
        assert_eq!(rep.truncated_at, Some(1));
        assert_eq!(rep.records[0].method, Method::ClosedForm);
        assert_eq!(rep.values(), vec![Some(9), Some(12), Some(13)]);
    }
}

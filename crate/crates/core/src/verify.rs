//! Full invariant suite for one instance, and sweeps over every valid
//! instance up to a field size.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{divisors, int, is_prime, Rational};
use crate::codes::{
    build_code, check_family_b_weights, is_skew_set, DefiningSet, Family, LinearCode, SkewSpec,
};
use crate::cyclotomy::{
    check_prediction, closed_form_periods_for_order, eval_poly, gauss_periods,
    period_bound_check_from, period_polynomial_from, verify_multiset_lemma, CyclotomicInt,
    CyclotomyParams, GaussPeriod, PeriodPrediction, PredictionCheck,
};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::ghw::{hierarchy_report, HierarchyOptions, HierarchyReport};

/// One `(p, m, N, family)` choice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub p: u64,
    pub m: u32,
    #[serde(rename = "N")]
    pub n: u64,
    pub family: Family,
    pub skew: Option<SkewSpec>,
}

/// Parameters of an instance as reported.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceSummary {
    pub p: u64,
    pub m: u32,
    pub q: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub n1: u64,
    #[serde(rename = "N1")]
    pub reduced_index: u64,
    #[serde(rename = "N2")]
    pub joint_index: u64,
    pub n2: u64,
    pub family: Option<Family>,
    pub skew: Option<SkewSpec>,
    pub order_ok: bool,
    pub modulus: Vec<u32>,
    pub alpha: Vec<u32>,
}

impl InstanceSummary {
    pub fn new(params: &CyclotomyParams, family: Option<Family>, skew: Option<SkewSpec>) -> Self {
        let ctx = params.ctx();
        InstanceSummary {
            p: ctx.p() as u64,
            m: ctx.m(),
            q: ctx.q() as u64,
            n: params.index,
            n1: params.class_size,
            reduced_index: params.reduced_index,
            joint_index: params.joint_index,
            n2: params.coset_count,
            family,
            skew,
            order_ok: params.order_ok,
            modulus: ctx.modulus().to_vec(),
            alpha: ctx.coeffs(ctx.alpha()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodEntry {
    pub index: u64,
    /// Raw trace counts.
    pub counts: Vec<u64>,
    /// Canonical coefficients in `Z[zeta_p]`.
    pub canonical: Vec<i128>,
    #[serde(with = "crate::report::opt_rational")]
    pub value: Option<Rational>,
}

/// Exact periods of one order with their checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodsReport {
    pub order: u64,
    pub entries: Vec<PeriodEntry>,
    pub sum_is_minus_one: bool,
    pub prediction: Option<PeriodPrediction>,
    pub prediction_check: Option<PredictionCheck>,
    pub bound_holds: bool,
    /// Coefficients of the period polynomial, low degree first.
    pub polynomial: Option<Vec<i128>>,
    /// Whether the polynomial vanishes at every rational period.
    pub polynomial_vanishes: Option<bool>,
    pub failures: Vec<String>,
}

impl PeriodsReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Largest order whose period polynomial is expanded.
pub const POLYNOMIAL_MAX_ORDER: u64 = 12;

pub fn periods_report(ctx: &FieldCtx, e: u64, label_prefix: &str) -> Result<PeriodsReport> {
    let periods = gauss_periods(ctx, e)?;
    let (p, m) = (ctx.p(), ctx.m());
    let mut failures = Vec::new();

    let sum = periods
        .iter()
        .try_fold(CyclotomicInt::zero(p), |acc, g| acc.checked_add(&g.value))?;
    let sum_is_minus_one = sum == CyclotomicInt::integer(p, -1);
    if !sum_is_minus_one {
        failures.push(format!("periods of order {e} do not sum to -1"));
    }

    let prediction = closed_form_periods_for_order(p as u64, m, e, label_prefix);
    let (prediction, prediction_check) = match prediction {
        Ok(Some(pred)) => {
            let chk = check_prediction(&pred, &periods);
            if !chk.passed() {
                failures.push(format!(
                    "closed form {:?} disagrees with exact periods",
                    pred.labels
                ));
            }
            (Some(pred), Some(chk))
        }
        Ok(None) => (None, None),
        Err(e) => {
            failures.push(format!("closed form: {e}"));
            (None, None)
        }
    };

    let bound_holds = match period_bound_check_from(ctx.q() as u64, &periods) {
        Ok(_) => true,
        Err(e) => {
            failures.push(e.to_string());
            false
        }
    };

    let (polynomial, polynomial_vanishes) = if e <= POLYNOMIAL_MAX_ORDER {
        match period_polynomial_from(p, &periods) {
            Ok(poly) => {
                let vanishes = periods
                    .iter()
                    .filter_map(GaussPeriod::rational_value)
                    .all(|v| eval_poly(&poly, v) == int(0));
                if !vanishes {
                    failures.push(format!("period polynomial of order {e} misses a root"));
                }
                (Some(poly), Some(vanishes))
            }
            Err(err) => {
                failures.push(err.to_string());
                (None, None)
            }
        }
    } else {
        (None, None)
    };

    Ok(PeriodsReport {
        order: e,
        entries: periods
            .iter()
            .map(|g| PeriodEntry {
                index: g.index,
                counts: g.counts.clone(),
                canonical: g.value.coeffs().to_vec(),
                value: g.rational_value(),
            })
            .collect(),
        sum_is_minus_one,
        prediction,
        prediction_check,
        bound_holds,
        polynomial,
        polynomial_vanishes,
        failures,
    })
}

/// Label prefix for periods of order `e` under `params`.
pub fn order_label(params: &CyclotomyParams, e: u64) -> &'static str {
    if e == params.reduced_index {
        "N1"
    } else {
        "N"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub hierarchy: HierarchyOptions,
    /// Codeword-coordinate budget for weight enumeration.
    pub weight_budget: u128,
    /// Class indices checked by the multiset lemma per order.
    pub multiset_classes: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            hierarchy: HierarchyOptions::default(),
            weight_budget: crate::codes::DEFAULT_WEIGHT_BUDGET,
            multiset_classes: 16,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeSummary {
    pub n: usize,
    pub k: usize,
    pub injective: bool,
    /// `weight -> count`, when within the weight budget.
    pub distribution: Option<BTreeMap<u64, u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub instance: InstanceSummary,
    pub periods: Vec<PeriodsReport>,
    pub code: CodeSummary,
    pub hierarchy: HierarchyReport,
    pub checks: Vec<CheckOutcome>,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
            && self.periods.iter().all(PeriodsReport::passed)
            && self.hierarchy.passed()
    }

    /// Names of failed checks and itemized discrepancies.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        out.extend(self.periods.iter().flat_map(|p| p.failures.iter().cloned()));
        out.extend(self.hierarchy.discrepancies.iter().cloned());
        for rec in &self.hierarchy.records {
            out.extend(
                rec.discrepancies
                    .iter()
                    .map(|d| format!("r={}: {d}", rec.r)),
            );
        }
        out
    }
}

/// Field, period, code and hierarchy checks for one instance.
pub fn verify_instance(inst: &Instance, opts: &VerifyOptions) -> Result<InstanceReport> {
    let ctx = Arc::new(FieldCtx::new(inst.p, inst.m)?);
    let params = CyclotomyParams::new(ctx.clone(), inst.n)?;
    let dset = DefiningSet::new(params.clone(), inst.family, inst.skew)?;
    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool, detail: String| {
        checks.push(CheckOutcome {
            name: name.to_string(),
            passed,
            detail,
        })
    };

    let (ok, detail) = field_invariants(&ctx);
    check("field", ok, detail);

    let mut orders = vec![params.index];
    if params.reduced_index != params.index {
        orders.push(params.reduced_index);
    }
    let mut periods = Vec::new();
    for &e in &orders {
        match periods_report(&ctx, e, order_label(&params, e)) {
            Ok(r) => periods.push(r),
            Err(Error::EnumerationBudgetExceeded { .. }) => {}
            Err(err) => return Err(err),
        }
        let classes = e.min(opts.multiset_classes);
        let failed: Vec<String> = (0..classes)
            .filter_map(|i| {
                verify_multiset_lemma(&ctx, e, i)
                    .err()
                    .map(|x| x.to_string())
            })
            .collect();
        check(
            &format!("multiset lemma e={e}"),
            failed.is_empty(),
            failed
                .first()
                .cloned()
                .unwrap_or_else(|| format!("{classes} classes")),
        );
    }

    let code = build_code(&dset);
    check(
        "dimension",
        code.k == inst.m as usize,
        format!("k = {}, m = {}", code.k, inst.m),
    );
    if inst.family == Family::C {
        check("skew set", is_skew_set(&ctx, &dset.elements), String::new());
    }
    if inst.family == Family::B {
        match check_family_b_weights(&code) {
            Ok(r) => check(
                "family B weights",
                r.all_positive,
                format!("class weights {:?}", r.class_weights),
            ),
            Err(e) => check("family B weights", false, e.to_string()),
        }
    }
    let (ok, detail) = scalar_weight_invariance(&code);
    check("scalar weight invariance", ok, detail);

    let hierarchy = hierarchy_report(&code, opts.hierarchy)?;
    Ok(InstanceReport {
        instance: InstanceSummary::new(&params, Some(inst.family), inst.skew),
        periods,
        code: CodeSummary {
            n: code.n,
            k: code.k,
            injective: code.is_injective(),
            distribution: code.weight_distribution(opts.weight_budget).ok(),
        },
        hierarchy,
        checks,
    })
}

/// Elements checked one by one against the Frobenius trace.
const FROBENIUS_SAMPLE: u32 = 729;

fn field_invariants(ctx: &FieldCtx) -> (bool, String) {
    let order = ctx.group_order();
    for k in 0..order {
        let x = ctx.exp(k as u64);
        if ctx.discrete_log(x) != Ok(k) {
            return (false, format!("log(alpha^{k}) != {k}"));
        }
    }
    let p = ctx.p();
    let mut hist = vec![0u32; p as usize];
    for x in ctx.elements() {
        hist[ctx.trace(x) as usize] += 1;
    }
    if hist.iter().any(|&c| c != ctx.q() / p) {
        return (false, format!("trace preimage counts {hist:?}"));
    }
    for x in ctx.elements().take(FROBENIUS_SAMPLE as usize) {
        let t = ctx.trace(x);
        if ctx.trace_frobenius(x) != t || ctx.trace_linear(x) != t {
            return (false, format!("trace forms disagree at {}", x.index()));
        }
    }
    (true, format!("{} logs, trace onto", order))
}

fn scalar_weight_invariance(code: &LinearCode) -> (bool, String) {
    // invariance under a generator of F_p* gives it for every scalar
    let ctx = code.ctx();
    let g = crate::arith::primitive_root(ctx.p() as u64) as u32;
    for a in ctx.elements().skip(1).take(64) {
        if code.weight(ctx.scale(g, a)) != code.weight(a) {
            return (
                false,
                format!("weight changes under scaling at {}", a.index()),
            );
        }
    }
    (true, String::new())
}

/// Odd prime powers `(p, m)` with `p^m <= q_max`, by increasing `q`.
pub fn prime_powers(q_max: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in (3..=q_max).step_by(2).filter(|&p| is_prime(p)) {
        let mut q = p;
        let mut m = 1;
        while q <= q_max {
            out.push((q, p, m));
            q *= p;
            m += 1;
        }
    }
    out.sort();
    out.into_iter().map(|(_, p, m)| (p, m)).collect()
}

/// Seeds used for seeded skew sets in sweeps.
pub const SWEEP_SKEW_SEEDS: [u64; 2] = [1, 2];

/// Every valid instance with `q <= q_max`: family A for each `N` with the
/// order assumption, family B when also `N1 <= sqrt(q)`, and family C with
/// the canonical skew set (when `q = 3 mod 4`) and seeded ones.
pub fn sweep_instances(q_max: u64) -> Vec<Instance> {
    let mut out = Vec::new();
    for (p, m) in prime_powers(q_max) {
        let Ok(ctx) = FieldCtx::new(p, m) else {
            continue;
        };
        let ctx = Arc::new(ctx);
        let q = ctx.q() as u64;
        for n in divisors(q - 1) {
            let params = CyclotomyParams::new(ctx.clone(), n).expect("divisor");
            if !params.order_ok {
                continue;
            }
            let inst = |family| Instance {
                p,
                m,
                n,
                family,
                skew: None,
            };
            out.push(inst(Family::A));
            if params.reduced_index * params.reduced_index <= q {
                out.push(inst(Family::B));
            }
        }
        let mut skews: Vec<SkewSpec> = SWEEP_SKEW_SEEDS
            .iter()
            .map(|&s| SkewSpec::Seeded(s))
            .collect();
        if q % 4 == 3 {
            skews.insert(0, SkewSpec::Canonical);
        }
        for skew in skews {
            out.push(Instance {
                p,
                m,
                n: 1,
                family: Family::C,
                skew: Some(skew),
            });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepEntry {
    pub instance: Instance,
    pub passed: bool,
    pub d: Vec<Option<u64>>,
    pub over_budget: Vec<u32>,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub q_max: u64,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    /// Records where brute force was skipped for budget.
    pub over_budget_records: usize,
    pub by_family: BTreeMap<String, (usize, usize)>,
    pub entries: Vec<SweepEntry>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

pub fn sweep(q_max: u64, opts: &VerifyOptions) -> Result<SweepReport> {
    let instances = sweep_instances(q_max);
    let entries: Vec<SweepEntry> = instances
        .par_iter()
        .map(|inst| {
            let rep = verify_instance(inst, opts)?;
            Ok(SweepEntry {
                instance: *inst,
                passed: rep.passed(),
                d: rep.hierarchy.values(),
                over_budget: rep.hierarchy.over_budget.clone(),
                failures: rep.failures(),
            })
        })
        .collect::<Result<_>>()?;
    let mut by_family: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for e in &entries {
        let slot = by_family.entry(e.instance.family.to_string()).or_default();
        if e.passed {
            slot.0 += 1;
        } else {
            slot.1 += 1;
        }
    }
    let passed = entries.iter().filter(|e| e.passed).count();
    Ok(SweepReport {
        q_max,
        instances: entries.len(),
        passed,
        failed: entries.len() - passed,
        over_budget_records: entries.iter().map(|e| e.over_budget.len()).sum(),
        by_family,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers_small() {
        assert_eq!(
            prime_powers(30),
            vec![
                (3, 1),
                (5, 1),
                (7, 1),
                (3, 2),
                (11, 1),
                (13, 1),
                (17, 1),
                (19, 1),
                (23, 1),
                (5, 2),
                (3, 3),
                (29, 1)
            ]
        );
    }

    #[test]
    fn q9_periods() {
        let ctx = FieldCtx::new(3, 2).unwrap();
        let r = periods_report(&ctx, 2, "N1").unwrap();
        assert!(r.passed());
        assert_eq!(r.polynomial, Some(vec![-2, 1, 1]));
        assert_eq!(
            r.prediction.unwrap().labels,
            vec!["N1=2 lemma (p≡3 mod 4, m even)".to_string()]
        );
    }

    #[test]
    fn verify_small_instances() {
        for inst in sweep_instances(27) {
            let rep = verify_instance(&inst, &VerifyOptions::default()).unwrap();
            assert!(rep.passed(), "{inst:?}: {:?}", rep.failures());
        }
    }
}

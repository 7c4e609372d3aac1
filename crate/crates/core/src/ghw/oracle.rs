//! Zero counts `N(U)` predicted from Gauss periods and class profiles,
//! and their comparison against direct counting.

use serde::Serialize;

use super::brute::ZeroCounter;
use super::subspace::{gaussian_binomial, pivot_patterns, span_nonzero, PatternCursor, Subspace};
use crate::arith::{int, primitive_root, rational, Rational};
use crate::codes::{Family, LinearCode};
use crate::cyclotomy::{gauss_periods, rational_periods, CyclotomyParams};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// `|H ∩ C_i^{(N1,q)}|` for each class `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassProfile {
    pub counts: Vec<u64>,
}

pub fn class_profile(ctx: &FieldCtx, sub: &Subspace, n1: u64) -> ClassProfile {
    profile_of_span(ctx, &sub.nonzero_elements(ctx), n1)
}

/// The zero-count formula of one family with its periods of order `N1`
/// evaluated once.
#[derive(Clone, Debug)]
pub struct PeriodFormula {
    family: Family,
    p: i128,
    q: i128,
    index: i128,
    reduced_index: u64,
    class_size: i128,
    coset_count: i128,
    etas: Vec<Rational>,
}

impl PeriodFormula {
    pub fn new(params: &CyclotomyParams, family: Family) -> Result<Self> {
        let ctx = params.ctx();
        let etas = if family == Family::C {
            Vec::new()
        } else {
            let periods = gauss_periods(ctx, params.reduced_index)?;
            rational_periods(&periods).ok_or(Error::PeriodsNotRational(params.reduced_index))?
        };
        Ok(PeriodFormula {
            family,
            p: ctx.p() as i128,
            q: ctx.q() as i128,
            index: params.index as i128,
            reduced_index: params.reduced_index,
            class_size: params.class_size as i128,
            coset_count: params.coset_count as i128,
            etas,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn reduced_index(&self) -> u64 {
        self.reduced_index
    }

    /// Periods of order `N1` (empty for family C).
    pub fn etas(&self) -> &[Rational] {
        &self.etas
    }

    /// Exact value of the formula for an `r`-dimensional subspace.
    pub fn value(&self, r: u32, profile: &ClassProfile) -> Rational {
        let pr = self.p.pow(r);
        let weighted = || {
            profile
                .counts
                .iter()
                .zip(&self.etas)
                .fold(int(0), |acc, (&h, eta)| acc + int(h as i128) * eta)
        };
        match self.family {
            Family::A => {
                rational(self.class_size, pr)
                    + int(self.reduced_index as i128) * weighted() / int(pr * self.index)
            }
            Family::B => rational(self.coset_count, pr) + weighted() / int(pr * (self.p - 1)),
            Family::C => rational(self.q - pr, 2 * pr),
        }
    }

    /// The formula's value, which must be a nonnegative integer.
    pub fn n_zero(&self, r: u32, profile: &ClassProfile) -> Result<u64> {
        let v = self.value(r, profile);
        if !v.is_integer() || v < int(0) {
            return Err(Error::NonIntegerResult(v.to_string()));
        }
        Ok(v.to_integer() as u64)
    }
}

/// `N(U)` from the period formula of `family`.
pub fn n_zero_via_periods(
    profile: &ClassProfile,
    params: &CyclotomyParams,
    family: Family,
    r: u32,
) -> Result<u64> {
    PeriodFormula::new(params, family)?.n_zero(r, profile)
}

/// Which subspaces an oracle comparison visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleCoverage {
    All,
    /// About this many subspaces at an even stride through the enumeration.
    Sample(u128),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleTally {
    pub checked: u64,
    pub mismatches: u64,
    /// Subspaces whose span is not closed under `F_p` scaling.
    pub not_scalar_closed: u64,
    /// First few disagreements as `(ordinal, direct, formula)`.
    pub examples: Vec<(u128, u64, String)>,
}

impl OracleTally {
    pub fn passed(&self) -> bool {
        self.mismatches == 0 && self.not_scalar_closed == 0
    }
}

fn scalar_closed(ctx: &FieldCtx, span: &[FieldElement], mark: &mut [bool]) -> bool {
    let g = primitive_root(ctx.p() as u64) as u32;
    span.iter().for_each(|x| mark[x.index() as usize] = true);
    let ok = span.iter().all(|&x| mark[ctx.scale(g, x).index() as usize]);
    span.iter().for_each(|x| mark[x.index() as usize] = false);
    ok
}

/// Compares the period formula with direct counting on the subspaces of
/// dimension `r` selected by `coverage`.
pub fn period_oracle(
    code: &LinearCode,
    formula: &PeriodFormula,
    r: u32,
    coverage: OracleCoverage,
) -> OracleTally {
    let ctx = code.ctx();
    let (p, m) = (ctx.p(), ctx.m());
    let total = gaussian_binomial(m, r, p as u64);
    let stride = match coverage {
        OracleCoverage::All => 1,
        OracleCoverage::Sample(s) => (total / s.max(1)).max(1),
    };
    let counter = ZeroCounter::new(code);
    let mut mark = vec![false; ctx.q() as usize];
    let mut tally = OracleTally::default();
    let mut ordinal = 0u128;
    let mut next = 0u128;
    for pat in pivot_patterns(m, r, p as u64) {
        while next < ordinal + pat.count {
            let cur = PatternCursor::new(&pat, p, next - ordinal);
            let sub = Subspace::new(
                cur.rows()
                    .iter()
                    .map(|&b| FieldElement::from_packed(b))
                    .collect(),
            );
            let span = span_nonzero(ctx, &sub.basis);
            if !scalar_closed(ctx, &span, &mut mark) {
                tally.not_scalar_closed += 1;
            }
            let direct = counter.count_rows(cur.rows());
            let profile = if formula.family == Family::C {
                ClassProfile { counts: Vec::new() }
            } else {
                profile_of_span(ctx, &span, formula.reduced_index)
            };
            let predicted = formula.value(r, &profile);
            if predicted != int(direct as i128) {
                tally.mismatches += 1;
                if tally.examples.len() < 5 {
                    tally.examples.push((next, direct, predicted.to_string()));
                }
            }
            tally.checked += 1;
            next += stride;
        }
        ordinal += pat.count;
    }
    tally
}

fn profile_of_span(ctx: &FieldCtx, span: &[FieldElement], n1: u64) -> ClassProfile {
    let mut counts = vec![0u64; n1 as usize];
    for &x in span {
        let l = ctx.discrete_log(x).expect("span elements are nonzero") as u64;
        counts[(l % n1) as usize] += 1;
    }
    ClassProfile { counts }
}

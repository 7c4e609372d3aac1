//! Cyclotomic classes and Gauss periods.
//!
//! A Gauss period of order `e` is `sum_{x in C_i} zeta_p^{Tr(x)}` over the
//! class `C_i = alpha^i <alpha^e>`. It is computed exactly from the vector
//! of trace counts `#{x in C_i : Tr(x) = t}` and kept in `Z[zeta_p]`.

mod integer;
mod lemmas;

use std::sync::Arc;

use serde::Serialize;

use crate::arith::{gcd, int, lcm, multiplicative_order, Rational};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

pub use integer::CyclotomicInt;
pub use lemmas::{
    closed_form_periods_for_order, semiprimitive_j, solve_c1_d1, solve_u1_v1, DiophantineWitness,
    PeriodCase, PeriodPrediction, WitnessKind,
};

/// Largest `e * p` for which all periods of one order are tabulated at once.
const PERIOD_TABLE_LIMIT: u128 = 50_000_000;

/// Derived quantities for a subgroup index `N` of `F_q*`.
#[derive(Clone, Debug)]
pub struct CyclotomyParams {
    ctx: Arc<FieldCtx>,
    /// `N`, the number of cyclotomic classes.
    pub index: u64,
    /// `n1 = (q - 1) / N`, the class size.
    pub class_size: u64,
    /// `N1 = gcd(N, (q - 1) / (p - 1))`.
    pub reduced_index: u64,
    /// `N2 = lcm(N, (q - 1) / (p - 1))`.
    pub joint_index: u64,
    /// `n2 = N2 / N`.
    pub coset_count: u64,
    /// `theta = alpha^N`, generator of `C_0`.
    pub theta: FieldElement,
    /// Whether `m` is the multiplicative order of `p` modulo `n1`.
    pub order_ok: bool,
}

impl CyclotomyParams {
    pub fn new(ctx: Arc<FieldCtx>, index: u64) -> Result<Self> {
        let order = ctx.group_order() as u64;
        if index == 0 || !order.is_multiple_of(index) {
            return Err(Error::NDoesNotDivide {
                n: index,
                q_minus_one: order,
            });
        }
        let p = ctx.p() as u64;
        let class_size = order / index;
        let norm_kernel = order / (p - 1);
        let reduced_index = gcd(index, norm_kernel);
        let joint_index = lcm(index, norm_kernel);
        let order_ok = multiplicative_order(p, class_size) == Some(ctx.m() as u64);
        Ok(CyclotomyParams {
            theta: ctx.exp(index),
            ctx,
            index,
            class_size,
            reduced_index,
            joint_index,
            coset_count: joint_index / index,
            order_ok,
        })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    /// Multiplicative order of `p` modulo `n1`.
    pub fn order_of_p(&self) -> u64 {
        multiplicative_order(self.ctx.p() as u64, self.class_size).unwrap_or(0)
    }

    /// Closed-form periods of order `N1`, if a lemma applies.
    pub fn closed_form_periods(&self) -> Result<Option<PeriodPrediction>> {
        closed_form_periods_for_order(self.ctx.p() as u64, self.ctx.m(), self.reduced_index, "N1")
    }
}

/// Index `i` of the class `C_i^{(e,q)}` containing `x`.
pub fn class_index(ctx: &FieldCtx, x: FieldElement, e: u64) -> Result<u64> {
    Ok(ctx.discrete_log(x)? as u64 % e)
}

/// An exact Gauss period together with its raw trace counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaussPeriod {
    pub order: u64,
    pub index: u64,
    /// `counts[t] = #{x in C_i : Tr(x) = t}`.
    pub counts: Vec<u64>,
    pub value: CyclotomicInt,
}

impl GaussPeriod {
    pub fn rational_value(&self) -> Option<Rational> {
        period_rational_value(&self.counts)
    }
}

/// `a_0 - a_1` when `a_1 = ... = a_{p-1}`, otherwise `None`.
pub fn period_rational_value(counts: &[u64]) -> Option<Rational> {
    let (&a0, tail) = counts.split_first()?;
    match tail.first() {
        None => Some(int(a0 as i128)),
        Some(&a1) if tail.iter().all(|&a| a == a1) => Some(int(a0 as i128 - a1 as i128)),
        _ => None,
    }
}

fn check_order(ctx: &FieldCtx, e: u64) -> Result<()> {
    let order = ctx.group_order() as u64;
    if e == 0 || !order.is_multiple_of(e) {
        return Err(Error::NDoesNotDivide {
            n: e,
            q_minus_one: order,
        });
    }
    Ok(())
}

/// The period `eta_i^{(e,q)}`.
pub fn gauss_period(ctx: &FieldCtx, e: u64, i: u64) -> Result<GaussPeriod> {
    check_order(ctx, e)?;
    if i >= e {
        return Err(Error::ClassIndexOutOfRange { index: i, order: e });
    }
    let mut counts = vec![0u64; ctx.p() as usize];
    let table = ctx.trace_by_log_table();
    for k in (i as usize..table.len()).step_by(e as usize) {
        counts[table[k] as usize] += 1;
    }
    Ok(GaussPeriod {
        order: e,
        index: i,
        value: CyclotomicInt::from_counts(&counts),
        counts,
    })
}

/// All `e` periods of order `e`, indexed by class.
pub fn gauss_periods(ctx: &FieldCtx, e: u64) -> Result<Vec<GaussPeriod>> {
    check_order(ctx, e)?;
    let p = ctx.p() as usize;
    let cells = e as u128 * p as u128;
    if cells > PERIOD_TABLE_LIMIT {
        return Err(Error::EnumerationBudgetExceeded {
            needed: cells,
            budget: PERIOD_TABLE_LIMIT,
        });
    }
    let mut counts = vec![0u64; e as usize * p];
    let e_us = e as usize;
    for (k, &t) in ctx.trace_by_log_table().iter().enumerate() {
        counts[(k % e_us) * p + t as usize] += 1;
    }
    Ok(counts
        .chunks(p)
        .enumerate()
        .map(|(i, c)| GaussPeriod {
            order: e,
            index: i as u64,
            counts: c.to_vec(),
            value: CyclotomicInt::from_counts(c),
        })
        .collect())
}

/// Rational values of a full set of periods, if every one is rational.
pub fn rational_periods(periods: &[GaussPeriod]) -> Option<Vec<Rational>> {
    periods.iter().map(GaussPeriod::rational_value).collect()
}

/// Outcome of comparing a lemma prediction against exact periods.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredictionCheck {
    pub multiset_match: bool,
    pub pinned_match: bool,
}

impl PredictionCheck {
    pub fn passed(&self) -> bool {
        self.multiset_match && self.pinned_match
    }
}

pub fn check_prediction(pred: &PeriodPrediction, periods: &[GaussPeriod]) -> PredictionCheck {
    let exact = rational_periods(periods);
    let multiset_match = match &exact {
        Some(vals) => {
            let mut vals = vals.clone();
            vals.sort();
            vals == pred.values
        }
        None => false,
    };
    let pinned_match = pred.pinned.iter().all(|&(i, v)| {
        periods
            .get(i as usize)
            .and_then(GaussPeriod::rational_value)
            .is_some_and(|x| x == v)
    });
    PredictionCheck {
        multiset_match,
        pinned_match,
    }
}

/// Coefficients (low degree first, monic) of `prod_i (X - eta_i^{(e,q)})`,
/// expanded in `Z[zeta_p]` and checked to be rational integers.
pub fn period_polynomial(ctx: &FieldCtx, e: u64) -> Result<Vec<i128>> {
    let periods = gauss_periods(ctx, e)?;
    period_polynomial_from(ctx.p(), &periods)
}

pub fn period_polynomial_from(p: u32, periods: &[GaussPeriod]) -> Result<Vec<i128>> {
    let mut poly = vec![CyclotomicInt::integer(p, 1)];
    for eta in periods {
        let mut next = vec![CyclotomicInt::zero(p); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] = next[k + 1].checked_add(c)?;
            next[k] = next[k].checked_sub(&c.checked_mul(&eta.value)?)?;
        }
        poly = next;
    }
    poly.iter()
        .enumerate()
        .map(|(degree, c)| {
            c.as_integer()
                .ok_or(Error::NonIntegerCoefficient { degree })
        })
        .collect()
}

/// Evaluates an integer polynomial (low degree first) at a rational point.
pub fn eval_poly(coeffs: &[i128], x: Rational) -> Rational {
    coeffs.iter().rev().fold(int(0), |acc, &c| acc * x + int(c))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundEntry {
    pub index: u64,
    pub exact: bool,
    /// `(e eta + 1)^2` (exact) or `|eta + 1/e|` (numeric).
    pub lhs: f64,
    /// `(e - 1)^2 q` (exact) or `(e - 1) sqrt(q) / e` (numeric).
    pub rhs: f64,
    pub tight: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub order: u64,
    pub entries: Vec<BoundEntry>,
}

/// Checks `|eta_i + 1/e| <= (e - 1) sqrt(q) / e` for every class.
pub fn period_bound_check(ctx: &FieldCtx, e: u64) -> Result<BoundReport> {
    let periods = gauss_periods(ctx, e)?;
    period_bound_check_from(ctx.q() as u64, &periods)
}

pub fn period_bound_check_from(q: u64, periods: &[GaussPeriod]) -> Result<BoundReport> {
    const TOL: f64 = 1e-6;
    let e = periods.len() as u64;
    let mut entries = Vec::with_capacity(periods.len());
    for eta in periods {
        let entry = match eta.rational_value() {
            Some(v) => {
                let v = v.to_integer();
                let lhs = (e as i128 * v + 1).pow(2);
                let rhs = ((e - 1) as i128).pow(2) * q as i128;
                if lhs > rhs {
                    return Err(Error::BoundViolated {
                        order: e,
                        index: eta.index,
                    });
                }
                BoundEntry {
                    index: eta.index,
                    exact: true,
                    lhs: lhs as f64,
                    rhs: rhs as f64,
                    tight: lhs == rhs,
                }
            }
            None => {
                let (re, im) = eta.value.to_complex();
                let lhs = (re + 1.0 / e as f64).hypot(im);
                let rhs = (e - 1) as f64 * (q as f64).sqrt() / e as f64;
                if lhs > rhs + TOL {
                    return Err(Error::BoundViolated {
                        order: e,
                        index: eta.index,
                    });
                }
                BoundEntry {
                    index: eta.index,
                    exact: false,
                    lhs,
                    rhs,
                    tight: (lhs - rhs).abs() <= TOL,
                }
            }
        };
        entries.push(entry);
    }
    Ok(BoundReport { order: e, entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultisetReport {
    pub order: u64,
    pub index: u64,
    /// `gcd((q - 1)/(p - 1), e)`.
    pub reduced_order: u64,
    pub multiplicity: u64,
    pub distinct_elements: u64,
}

/// Checks that `{x y : y in F_p*, x in C_i^{(e,q)}}` is the class
/// `C_i^{(g,q)}`, `g = gcd((q-1)/(p-1), e)`, with every element repeated
/// `(p - 1) g / e` times.
pub fn verify_multiset_lemma(ctx: &FieldCtx, e: u64, i: u64) -> Result<MultisetReport> {
    check_order(ctx, e)?;
    if i >= e {
        return Err(Error::ClassIndexOutOfRange { index: i, order: e });
    }
    let order = ctx.group_order() as u64;
    let p = ctx.p() as u64;
    let g = gcd(order / (p - 1), e);
    let multiplicity = (p - 1) * g / e;
    let scalar_logs: Vec<u64> = (1..p)
        .map(|y| ctx.discrete_log(ctx.scalar(y as u32)).map(u64::from))
        .collect::<Result<_>>()?;
    let mut counts = vec![0u32; order as usize];
    for k in (i..order).step_by(e as usize) {
        for &ly in &scalar_logs {
            counts[((k + ly) % order) as usize] += 1;
        }
    }
    let mismatch = |detail: String| Error::MultisetMismatch {
        order: e,
        index: i,
        detail,
    };
    let mut distinct = 0;
    for (l, &c) in counts.iter().enumerate() {
        let expected = if l as u64 % g == i % g {
            multiplicity
        } else {
            0
        };
        if c as u64 != expected {
            return Err(mismatch(format!(
                "alpha^{l} appears {c} times, expected {expected}"
            )));
        }
        if c > 0 {
            distinct += 1;
        }
    }
    Ok(MultisetReport {
        order: e,
        index: i,
        reduced_order: g,
        multiplicity,
        distinct_elements: distinct,
    })
}

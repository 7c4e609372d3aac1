//! Exhaustive `d_r` by enumerating every `r`-dimensional subspace of the
//! message space.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use super::subspace::{
    gaussian_binomial, pivot_patterns, work_units, PatternCursor, PivotPattern, Subspace, WorkUnit,
};
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// Default limit on column checks (subspaces x n x r).
pub const DEFAULT_GHW_BUDGET: u128 = 10_000_000;

/// Column checks needed to brute-force `d_r` of `code`.
pub fn enumeration_cost(code: &LinearCode, r: u32) -> u128 {
    let ctx = code.ctx();
    gaussian_binomial(ctx.m(), r, ctx.p() as u64) * code.n as u128 * r as u128
}

/// Zero-column counter: the trace-by-log table laid out twice so that
/// `log b + log d` indexes it without reduction.
pub(crate) struct ZeroCounter<'a> {
    ctx: &'a FieldCtx,
    table: Vec<u32>,
    logs: &'a [u32],
}

impl<'a> ZeroCounter<'a> {
    pub(crate) fn new(code: &'a LinearCode) -> Self {
        let ctx: &FieldCtx = code.ctx();
        let once = ctx.trace_by_log_table();
        let mut table = Vec::with_capacity(2 * once.len());
        table.extend_from_slice(once);
        table.extend_from_slice(once);
        ZeroCounter {
            ctx,
            table,
            logs: code.element_logs(),
        }
    }

    fn row_logs(&self, rows: &[u32], out: &mut Vec<u32>) {
        out.clear();
        out.extend(rows.iter().map(|&b| {
            self.ctx
                .discrete_log(FieldElement::from_packed(b))
                .expect("RREF rows are nonzero")
        }));
    }

    /// Columns vanishing on every row; gives up (returning `None`) as soon
    /// as the count can no longer reach `threshold`.
    fn count(&self, row_logs: &[u32], threshold: u64) -> Option<u64> {
        let n = self.logs.len() as u64;
        let mut zeros = 0u64;
        for (i, &ld) in self.logs.iter().enumerate() {
            let ld = ld as usize;
            if row_logs.iter().all(|&lb| self.table[lb as usize + ld] == 0) {
                zeros += 1;
            } else if zeros + (n - i as u64 - 1) < threshold {
                return None;
            }
        }
        Some(zeros)
    }

    pub(crate) fn count_rows(&self, rows: &[u32]) -> u64 {
        let mut logs = Vec::with_capacity(rows.len());
        self.row_logs(rows, &mut logs);
        self.count(&logs, 0).expect("threshold 0 never prunes")
    }
}

/// `N(U)`: coordinates of `code` vanishing on all of `c(sub)`.
pub fn n_zero_direct(code: &LinearCode, sub: &Subspace) -> u64 {
    let rows: Vec<u32> = sub
        .basis
        .iter()
        .filter(|b| !b.is_zero())
        .map(|b| b.index())
        .collect();
    ZeroCounter::new(code).count_rows(&rows)
}

/// Outcome of one exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruteForce {
    pub r: u32,
    pub d_r: u64,
    pub n_zero_max: u64,
    /// First maximizing subspace in enumeration order.
    pub argmax: Subspace,
    /// Subspaces enumerated.
    pub visited: u128,
}

struct UnitBest {
    n_zero: u64,
    ordinal: u128,
    rows: Vec<u32>,
}

fn search_unit(
    counter: &ZeroCounter,
    pattern: &PivotPattern,
    unit: &WorkUnit,
    p: u32,
    global: &AtomicU64,
) -> Option<UnitBest> {
    let mut cur = PatternCursor::new(pattern, p, unit.start);
    let mut logs = Vec::with_capacity(pattern.pivots.len());
    let mut best: Option<UnitBest> = None;
    for offset in 0..unit.len {
        if offset > 0 {
            cur.advance();
        }
        let local = best.as_ref().map_or(0, |b| b.n_zero + 1);
        let threshold = local.max(global.load(Ordering::Relaxed));
        counter.row_logs(cur.rows(), &mut logs);
        if let Some(z) = counter.count(&logs, threshold) {
            if best.as_ref().is_none_or(|b| z > b.n_zero) {
                global.fetch_max(z, Ordering::Relaxed);
                best = Some(UnitBest {
                    n_zero: z,
                    ordinal: unit.ordinal + offset,
                    rows: cur.rows().to_vec(),
                });
            }
        }
    }
    best
}

/// `d_r = n - max N(U)` over all `r`-dimensional subspaces, in parallel.
///
/// The reported maximizer is the first in enumeration order regardless of
/// scheduling.
pub fn ghw_bruteforce(code: &LinearCode, r: u32, budget: u128) -> Result<BruteForce> {
    let ctx = code.ctx();
    let (p, m) = (ctx.p(), ctx.m());
    if r == 0 || r > m {
        return Err(Error::DimensionOutOfRange { r, m });
    }
    if !code.is_injective() {
        return Err(Error::NotInjective { k: code.k, m });
    }
    let needed = enumeration_cost(code, r);
    if needed > budget {
        return Err(Error::EnumerationBudgetExceeded { needed, budget });
    }
    let patterns = pivot_patterns(m, r, p as u64);
    let total = gaussian_binomial(m, r, p as u64);
    let workers = rayon::current_num_threads() as u128;
    let chunk = (total / (workers * 32)).clamp(16, 1 << 14);
    let units = work_units(&patterns, chunk);
    let counter = ZeroCounter::new(code);
    let global = AtomicU64::new(0);

    let best = units
        .par_iter()
        .filter_map(|u| search_unit(&counter, &patterns[u.pattern], u, p, &global))
        .reduce_with(|a, b| {
            if (b.n_zero, std::cmp::Reverse(b.ordinal)) > (a.n_zero, std::cmp::Reverse(a.ordinal)) {
                b
            } else {
                a
            }
        })
        .expect("at least one subspace");

    Ok(BruteForce {
        r,
        d_r: code.n as u64 - best.n_zero,
        n_zero_max: best.n_zero,
        argmax: Subspace::new(
            best.rows
                .into_iter()
                .map(FieldElement::from_packed)
                .collect(),
        ),
        visited: units.iter().map(|u| u.len).sum(),
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::codes::{build_code, DefiningSet, Family, SkewSpec};
    use crate::cyclotomy::CyclotomyParams;
    use crate::ghw::subspace::subspace_iter;

    fn code(p: u64, m: u32, n: u64, family: Family, skew: Option<SkewSpec>) -> LinearCode {
        let ctx = Arc::new(FieldCtx::new(p, m).unwrap());
        let params = CyclotomyParams::new(ctx, n).unwrap();
        build_code(&DefiningSet::new(params, family, skew).unwrap())
    }

    #[test]
    fn q9_full_group() {
        let c = code(3, 2, 1, Family::A, None);
        let d: Vec<u64> = (1..=2)
            .map(|r| ghw_bruteforce(&c, r, DEFAULT_GHW_BUDGET).unwrap().d_r)
            .collect();
        assert_eq!(d, vec![6, 8]);
        for s in subspace_iter(2, 1, 3) {
            assert_eq!(n_zero_direct(&c, &s), 2);
        }
    }

    #[test]
    fn q27_hierarchy() {
        let c = code(3, 3, 2, Family::A, None);
        let d: Vec<u64> = (1..=3)
            .map(|r| ghw_bruteforce(&c, r, DEFAULT_GHW_BUDGET).unwrap().d_r)
            .collect();
        assert_eq!(d, vec![9, 12, 13]);
    }

    #[test]
    fn q7_skew() {
        let c = code(7, 1, 2, Family::C, Some(SkewSpec::Canonical));
        let b = ghw_bruteforce(&c, 1, DEFAULT_GHW_BUDGET).unwrap();
        assert_eq!((b.d_r, b.visited), (3, 1));
    }

    #[test]
    fn argmax_is_first_maximizer() {
        let c = code(3, 4, 2, Family::A, None);
        for r in 1..=4 {
            let b = ghw_bruteforce(&c, r, DEFAULT_GHW_BUDGET).unwrap();
            let counts: Vec<(Subspace, u64)> = subspace_iter(4, r, 3)
                .map(|s| {
                    let z = n_zero_direct(&c, &s);
                    (s, z)
                })
                .collect();
            let max = counts.iter().map(|(_, z)| *z).max().unwrap();
            let first = counts.iter().find(|(_, z)| *z == max).unwrap();
            assert_eq!((b.n_zero_max, &b.argmax), (max, &first.0));
            assert_eq!(b.visited, gaussian_binomial(4, r, 3));
        }
    }

    #[test]
    fn errors() {
        let c = code(3, 2, 1, Family::A, None);
        assert_eq!(
            ghw_bruteforce(&c, 3, DEFAULT_GHW_BUDGET),
            Err(Error::DimensionOutOfRange { r: 3, m: 2 })
        );
        assert!(matches!(
            ghw_bruteforce(&c, 1, 10),
            Err(Error::EnumerationBudgetExceeded {
                needed: 32,
                budget: 10
            })
        ));
        let ctx = Arc::new(FieldCtx::new(3, 2).unwrap());
        let degenerate =
            LinearCode::from_elements(ctx.clone(), vec![ctx.scalar(1), ctx.scalar(2)]).unwrap();
        assert_eq!(
            ghw_bruteforce(&degenerate, 1, DEFAULT_GHW_BUDGET),
            Err(Error::NotInjective { k: 1, m: 2 })
        );
    }
}

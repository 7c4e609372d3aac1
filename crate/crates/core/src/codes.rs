//! Trace codes `C_D = {(Tr(a d_1), ..., Tr(a d_n)) : a in F_q}` for the
//! three defining-set families.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{int, rational, Rational};
use crate::cyclotomy::{gauss_periods, rational_periods, CyclotomyParams};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// Default budget for weight enumeration, in codeword-coordinate operations.
pub const DEFAULT_WEIGHT_BUDGET: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// `D = {theta^i : 0 <= i < n1}`.
    A,
    /// `D = {theta^i : 0 <= i < n2}`.
    B,
    /// `D` a skew set.
    C,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            _ => Err(format!("unknown family '{s}' (expected A, B or C)")),
        }
    }
}

/// How a family C skew set is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SkewSpec {
    /// `<alpha^2>`, available when `q = 3 mod 4`.
    Canonical,
    /// One member of each pair `{x, -x}` drawn from ChaCha8 seeded with the value.
    Seeded(u64),
}

impl fmt::Display for SkewSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkewSpec::Canonical => f.write_str("canonical"),
            SkewSpec::Seeded(s) => write!(f, "seed={s}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DefiningSet {
    pub family: Family,
    pub skew: Option<SkewSpec>,
    pub elements: Vec<FieldElement>,
    pub params: CyclotomyParams,
}

impl DefiningSet {
    /// Builds the defining set of `family`. Family C ignores `params.index`
    /// and defaults to the canonical skew set.
    pub fn new(params: CyclotomyParams, family: Family, skew: Option<SkewSpec>) -> Result<Self> {
        let ctx = params.ctx().clone();
        let q = ctx.q() as u64;
        let theta_powers = |len: u64| -> Vec<FieldElement> {
            (0..len).map(|i| ctx.exp(params.index * i)).collect()
        };
        let (elements, skew) = match family {
            Family::A | Family::B => {
                if !params.order_ok {
                    return Err(Error::OrderAssumptionViolated {
                        n1: params.class_size,
                        order: params.order_of_p(),
                        m: ctx.m(),
                    });
                }
                if family == Family::A {
                    (theta_powers(params.class_size), None)
                } else {
                    let n1 = params.reduced_index;
                    if (n1 as u128).pow(2) > q as u128 {
                        return Err(Error::IsoPreconditionFailed { n1, q });
                    }
                    (theta_powers(params.coset_count), None)
                }
            }
            Family::C => {
                let spec = skew.unwrap_or(SkewSpec::Canonical);
                let elements = match spec {
                    SkewSpec::Canonical => {
                        if q % 4 != 3 {
                            return Err(Error::SkewCanonicalUnavailable { q });
                        }
                        (0..(q - 1) / 2).map(|i| ctx.exp(2 * i)).collect()
                    }
                    SkewSpec::Seeded(seed) => seeded_skew_set(&ctx, seed),
                };
                (elements, Some(spec))
            }
        };
        Ok(DefiningSet {
            family,
            skew,
            elements,
            params,
        })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.params.ctx()
    }
}

fn seeded_skew_set(ctx: &FieldCtx, seed: u64) -> Vec<FieldElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ctx.elements()
        .skip(1)
        .filter_map(|x| {
            let neg = ctx.neg(x);
            (x < neg).then(|| if rng.next_u32() & 1 == 0 { x } else { neg })
        })
        .collect()
}

/// True when `D`, `-D` and `{0}` partition `F_q`.
pub fn is_skew_set(ctx: &FieldCtx, elements: &[FieldElement]) -> bool {
    let mut seen = vec![false; ctx.q() as usize];
    seen[0] = true;
    for &d in elements {
        let neg = ctx.neg(d);
        if d.is_zero() || seen[d.index() as usize] || seen[neg.index() as usize] {
            return false;
        }
        seen[d.index() as usize] = true;
        seen[neg.index() as usize] = true;
    }
    seen.iter().all(|&s| s)
}

/// Rank over `F_p` of a list of row vectors.
pub fn rank_mod_p(rows: &[Vec<u32>], p: u32) -> usize {
    independent_rows(rows, p).len()
}

/// Indices of the rows kept by a greedy left-to-right independence scan.
fn independent_rows(rows: &[Vec<u32>], p: u32) -> Vec<usize> {
    let p64 = p as u64;
    // echelon rows with their pivot columns; pivots are normalized to 1
    let mut echelon: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut kept = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v: Vec<u64> = row.iter().map(|&x| x as u64 % p64).collect();
        for (pc, e) in &echelon {
            let c = v[*pc];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(e) {
                    *x = (*x + p64 - c * y % p64) % p64;
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let inv = crate::arith::pow_mod(v[pc], p64 - 2, p64);
            for x in v.iter_mut() {
                *x = *x * inv % p64;
            }
            echelon.push((pc, v));
            kept.push(idx);
        }
    }
    kept
}

/// A code `C_D` with its generator matrix.
#[derive(Clone, Debug)]
pub struct LinearCode {
    ctx: Arc<FieldCtx>,
    elements: Vec<FieldElement>,
    logs: Vec<u32>,
    pub n: usize,
    pub k: usize,
    /// `k x n` generator matrix over `Z_p`.
    pub gen: Vec<Vec<u32>>,
    /// Basis elements `x^j` whose trace rows form `gen`.
    pub message_basis: Vec<FieldElement>,
    dset: Option<DefiningSet>,
}

/// Builds `C_D` for a family defining set.
pub fn build_code(dset: &DefiningSet) -> LinearCode {
    let mut code = LinearCode::from_elements(dset.ctx().clone(), dset.elements.clone())
        .expect("family defining sets exclude zero");
    code.dset = Some(dset.clone());
    code
}

impl LinearCode {
    /// Builds `C_D` for an arbitrary list of nonzero elements.
    pub fn from_elements(ctx: Arc<FieldCtx>, elements: Vec<FieldElement>) -> Result<Self> {
        let logs = elements
            .iter()
            .map(|&d| ctx.discrete_log(d).map_err(|_| Error::ZeroInDefiningSet))
            .collect::<Result<Vec<_>>>()?;
        let trace_matrix: Vec<Vec<u32>> = (0..ctx.m())
            .map(|j| {
                let b = ctx.basis(j);
                elements.iter().map(|&d| ctx.trace(ctx.mul(b, d))).collect()
            })
            .collect();
        let kept = independent_rows(&trace_matrix, ctx.p());
        Ok(LinearCode {
            n: elements.len(),
            k: kept.len(),
            gen: kept.iter().map(|&j| trace_matrix[j].clone()).collect(),
            message_basis: kept.iter().map(|&j| ctx.basis(j as u32)).collect(),
            ctx,
            elements,
            logs,
            dset: None,
        })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    /// Discrete logs of the defining-set elements, in coordinate order.
    pub fn element_logs(&self) -> &[u32] {
        &self.logs
    }

    pub fn defining_set(&self) -> Option<&DefiningSet> {
        self.dset.as_ref()
    }

    /// Whether `a -> c(a)` is injective on `F_q`.
    pub fn is_injective(&self) -> bool {
        self.k == self.ctx.m() as usize
    }

    pub fn codeword(&self, a: FieldElement) -> Vec<u32> {
        self.elements
            .iter()
            .map(|&d| self.ctx.trace(self.ctx.mul(a, d)))
            .collect()
    }

    pub fn weight(&self, a: FieldElement) -> u64 {
        let Ok(la) = self.ctx.discrete_log(a) else {
            return 0;
        };
        let order = self.ctx.group_order();
        let table = self.ctx.trace_by_log_table();
        self.logs
            .iter()
            .filter(|&&ld| {
                let mut s = la + ld;
                if s >= order {
                    s -= order;
                }
                table[s as usize] != 0
            })
            .count() as u64
    }

    /// Histogram `weight -> count` over all codewords.
    pub fn weight_distribution(&self, budget: u128) -> Result<BTreeMap<u64, u64>> {
        let p = self.ctx.p() as u128;
        let words = p.pow(self.k as u32);
        let needed = words * self.n as u128;
        if needed > budget {
            return Err(Error::EnumerationBudgetExceeded { needed, budget });
        }
        let merge = |mut a: BTreeMap<u64, u64>, b: BTreeMap<u64, u64>| {
            for (w, c) in b {
                *a.entry(w).or_default() += c;
            }
            a
        };
        if self.is_injective() {
            return Ok(self
                .ctx
                .elements()
                .collect::<Vec<_>>()
                .into_par_iter()
                .fold(BTreeMap::new, |mut h, a| {
                    *h.entry(self.weight(a)).or_default() += 1;
                    h
                })
                .reduce(BTreeMap::new, merge));
        }
        let p = p as u32;
        let mut hist = BTreeMap::new();
        let mut msg = vec![0u32; self.k];
        for _ in 0..words {
            let w = (0..self.n)
                .filter(|&i| {
                    msg.iter()
                        .zip(&self.gen)
                        .map(|(&c, row)| c as u64 * row[i] as u64)
                        .sum::<u64>()
                        % p as u64
                        != 0
                })
                .count() as u64;
            *hist.entry(w).or_default() += 1;
            for digit in msg.iter_mut() {
                *digit += 1;
                if *digit < p {
                    break;
                }
                *digit = 0;
            }
        }
        Ok(hist)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyBWeightReport {
    pub reduced_index: u64,
    /// Weight predicted for each class `C_i^{(N1,q)}`.
    pub class_weights: Vec<u64>,
    pub distribution: BTreeMap<u64, u64>,
    pub all_positive: bool,
    pub checked: u64,
}

/// Checks every nonzero codeword weight of a family B code against
/// `q/(p N1) - (eta_i + 1/N1)/p` for the class `C_i^{(N1,q)}` of `a`.
pub fn check_family_b_weights(code: &LinearCode) -> Result<FamilyBWeightReport> {
    let dset = code
        .defining_set()
        .filter(|d| d.family == Family::B)
        .ok_or(Error::WrongFamily("B"))?;
    let ctx = code.ctx();
    let n1 = dset.params.reduced_index;
    let periods = gauss_periods(ctx, n1)?;
    let etas = rational_periods(&periods).ok_or(Error::PeriodsNotRational(n1))?;
    let (p, q) = (ctx.p() as i128, ctx.q() as i128);
    let predicted: Vec<Rational> = etas
        .iter()
        .map(|&eta| rational(q, p * n1 as i128) - (eta + rational(1, n1 as i128)) / int(p))
        .collect();
    let mut class_weights = Vec::with_capacity(predicted.len());
    for w in &predicted {
        if !w.is_integer() || *w < int(0) {
            return Err(Error::NonIntegerResult(format!("class weight {w}")));
        }
        class_weights.push(w.to_integer() as u64);
    }
    let mut distribution = BTreeMap::new();
    *distribution.entry(0).or_default() += 1;
    for a in ctx.elements().skip(1) {
        let actual = code.weight(a);
        let i = ctx.discrete_log(a)? as u64 % n1;
        if actual != class_weights[i as usize] {
            return Err(Error::WeightFormulaMismatch {
                element: a.index(),
                actual,
                formula: predicted[i as usize].to_string(),
            });
        }
        *distribution.entry(actual).or_default() += 1;
    }
    Ok(FamilyBWeightReport {
        reduced_index: n1,
        all_positive: class_weights.iter().all(|&w| w > 0),
        class_weights,
        distribution,
        checked: ctx.group_order() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, m: u32, n: u64) -> CyclotomyParams {
        CyclotomyParams::new(Arc::new(FieldCtx::new(p, m).unwrap()), n).unwrap()
    }

    #[test]
    fn canonical_skew_q7() {
        let d = DefiningSet::new(params(7, 1, 2), Family::C, None).unwrap();
        let idx: Vec<u32> = d.elements.iter().map(|e| e.index()).collect();
        assert_eq!(idx, vec![1, 2, 4]);
        let code = build_code(&d);
        assert_eq!((code.n, code.k), (3, 1));
        assert_eq!(code.gen, vec![vec![1, 2, 4]]);
        assert_eq!(code.codeword(FieldElement::ONE), vec![1, 2, 4]);
        assert_eq!(code.weight(FieldElement::ONE), 3);
        let dist = code.weight_distribution(DEFAULT_WEIGHT_BUDGET).unwrap();
        assert_eq!(dist, BTreeMap::from([(0, 1), (3, 6)]));
    }

    #[test]
    fn family_a_q27() {
        let pr = params(3, 3, 2);
        let d = DefiningSet::new(pr.clone(), Family::A, None).unwrap();
        assert_eq!(d.elements.len(), 13);
        assert_eq!(d.elements[1], pr.ctx().exp(2));
        let mut sorted = d.elements.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 13);
    }

    #[test]
    fn full_group_q9() {
        let d = DefiningSet::new(params(3, 2, 1), Family::A, None).unwrap();
        let code = build_code(&d);
        assert_eq!((code.n, code.k), (8, 2));
        assert_eq!(code.weight(FieldElement::ZERO), 0);
        assert_eq!(code.codeword(FieldElement::ZERO), vec![0; 8]);
        let dist = code.weight_distribution(DEFAULT_WEIGHT_BUDGET).unwrap();
        assert_eq!(dist, BTreeMap::from([(0, 1), (6, 8)]));
    }

    #[test]
    fn degenerate_defining_set() {
        let ctx = Arc::new(FieldCtx::new(3, 2).unwrap());
        let code =
            LinearCode::from_elements(ctx.clone(), vec![ctx.scalar(1), ctx.scalar(2)]).unwrap();
        assert_eq!(code.k, 1);
        assert!(!code.is_injective());
        let dist = code.weight_distribution(DEFAULT_WEIGHT_BUDGET).unwrap();
        assert_eq!(dist.values().sum::<u64>(), 3);
        assert!(LinearCode::from_elements(ctx, vec![FieldElement::ZERO]).is_err());
    }

    #[test]
    fn family_b_q25() {
        let d = DefiningSet::new(params(5, 2, 2), Family::B, None).unwrap();
        assert_eq!(d.elements.len(), 3);
        let code = build_code(&d);
        assert_eq!(code.k, 2);
        let dist = code.weight_distribution(DEFAULT_WEIGHT_BUDGET).unwrap();
        assert_eq!(dist, BTreeMap::from([(0, 1), (2, 12), (3, 12)]));
        let rep = check_family_b_weights(&code).unwrap();
        assert_eq!(rep.class_weights, vec![3, 2]);
        assert!(rep.all_positive);
        assert_eq!(rep.distribution, dist);
    }

    #[test]
    fn precondition_errors() {
        // q = 9, N = 1: ord_8(3) = 2 = m fine; N = 2: n1 = 4, ord_4(3) = 2 fine;
        // q = 9, N = 4: n1 = 2, ord_2(3) = 1 != 2.
        assert!(matches!(
            DefiningSet::new(params(3, 2, 4), Family::A, None),
            Err(Error::OrderAssumptionViolated { .. })
        ));
        assert!(matches!(
            DefiningSet::new(params(5, 2, 1), Family::C, None),
            Err(Error::SkewCanonicalUnavailable { q: 25 })
        ));
        // q = 625, N = 39: n1 = 16, ord_16(5) = 4, N1 = 39 > 25.
        assert!(matches!(
            DefiningSet::new(params(5, 4, 39), Family::B, None),
            Err(Error::IsoPreconditionFailed { n1: 39, q: 625 })
        ));
        let c = build_code(&DefiningSet::new(params(7, 1, 2), Family::C, None).unwrap());
        assert_eq!(
            check_family_b_weights(&c).unwrap_err(),
            Error::WrongFamily("B")
        );
    }

    #[test]
    fn seeded_skew_sets_are_skew() {
        for seed in 0..5 {
            let d =
                DefiningSet::new(params(5, 2, 1), Family::C, Some(SkewSpec::Seeded(seed))).unwrap();
            assert_eq!(d.elements.len(), 12);
            assert!(is_skew_set(d.ctx(), &d.elements));
        }
        let ctx = FieldCtx::new(7, 1).unwrap();
        assert!(!is_skew_set(
            &ctx,
            &[ctx.scalar(1), ctx.scalar(6), ctx.scalar(2)]
        ));
    }

    #[test]
    fn rank_helper() {
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 1]], 3), 1);
        assert_eq!(rank_mod_p(&[vec![1, 0], vec![0, 1]], 3), 2);
        assert_eq!(rank_mod_p(&[vec![0, 0]], 3), 0);
    }
}

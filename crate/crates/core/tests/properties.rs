use std::sync::Arc;

use ghwlab_core::arith::{gcd, primitive_root, rational};
use ghwlab_core::codes::is_skew_set;
use ghwlab_core::cyclotomy::gauss_periods;
use ghwlab_core::ghw::{n_zero_direct, span_nonzero, Subspace};
use ghwlab_core::{
    build_code, ghw_bruteforce, CyclotomicInt, CyclotomyParams, DefiningSet, Family, FieldCtx,
    FieldElement, LinearCode, SkewSpec,
};
use proptest::prelude::*;

const FIELDS: [(u64, u32); 10] = [
    (3, 1),
    (3, 2),
    (3, 3),
    (3, 4),
    (5, 1),
    (5, 2),
    (5, 3),
    (7, 2),
    (11, 2),
    (13, 1),
];

fn field() -> impl Strategy<Value = Arc<FieldCtx>> {
    prop::sample::select(FIELDS.to_vec()).prop_map(|(p, m)| Arc::new(FieldCtx::new(p, m).unwrap()))
}

fn field_and_elements(k: usize) -> impl Strategy<Value = (Arc<FieldCtx>, Vec<u32>)> {
    field().prop_flat_map(move |ctx| {
        let q = ctx.q();
        (Just(ctx), prop::collection::vec(0..q, k))
    })
}

/// A field, an admissible `N` and a nonzero field element index.
fn instance() -> impl Strategy<Value = (Arc<FieldCtx>, u64, u32)> {
    field().prop_flat_map(|ctx| {
        let q = ctx.q();
        let divs: Vec<u64> = ghwlab_core::arith::divisors(q as u64 - 1)
            .into_iter()
            .filter(|&n| CyclotomyParams::new(ctx.clone(), n).unwrap().order_ok)
            .collect();
        (Just(ctx), prop::sample::select(divs), 1..q)
    })
}

fn code(ctx: &Arc<FieldCtx>, n: u64, family: Family, skew: Option<SkewSpec>) -> LinearCode {
    let params = CyclotomyParams::new(ctx.clone(), n).unwrap();
    build_code(&DefiningSet::new(params, family, skew).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trace_is_linear((ctx, v) in field_and_elements(2), c in 0u32..13) {
        let (a, b) = (ctx.from_index(v[0]).unwrap(), ctx.from_index(v[1]).unwrap());
        let p = ctx.p();
        let c = c % p;
        let lhs = ctx.trace(ctx.add(ctx.scale(c, a), b));
        prop_assert_eq!(lhs, (c * ctx.trace(a) + ctx.trace(b)) % p);
    }

    #[test]
    fn trace_tables_agree((ctx, v) in field_and_elements(1)) {
        let x = ctx.from_index(v[0]).unwrap();
        prop_assert_eq!(ctx.trace(x), ctx.trace_frobenius(x));
        prop_assert_eq!(ctx.trace(x), ctx.trace_linear(x));
    }

    #[test]
    fn trace_is_balanced(ctx in field()) {
        let p = ctx.p() as usize;
        let mut counts = vec![0u32; p];
        for x in ctx.elements() {
            counts[ctx.trace(x) as usize] += 1;
        }
        prop_assert!(counts.iter().all(|&c| c == ctx.q() / ctx.p()));
    }

    #[test]
    fn exp_log_roundtrip((ctx, v) in field_and_elements(1)) {
        let x = ctx.from_index(v[0]).unwrap();
        prop_assume!(!x.is_zero());
        let k = ctx.discrete_log(x).unwrap();
        prop_assert_eq!(ctx.exp(k as u64), x);
        prop_assert_eq!(ctx.pow(ctx.alpha(), k as u64), x);
    }

    #[test]
    fn frobenius_is_additive((ctx, v) in field_and_elements(2)) {
        let (a, b) = (ctx.from_index(v[0]).unwrap(), ctx.from_index(v[1]).unwrap());
        let p = ctx.p() as u64;
        let lhs = ctx.pow(ctx.add(a, b), p);
        prop_assert_eq!(lhs, ctx.add(ctx.pow(a, p), ctx.pow(b, p)));
    }

    #[test]
    fn inverse_multiplies_to_one((ctx, v) in field_and_elements(1)) {
        let x = ctx.from_index(v[0]).unwrap();
        prop_assume!(!x.is_zero());
        prop_assert_eq!(ctx.mul(x, ctx.inv(x).unwrap()), ctx.exp(0));
    }

    #[test]
    fn periods_sum_to_minus_one((ctx, e, _) in instance()) {
        prop_assume!(ctx.q() <= 729);
        let p = ctx.p();
        let mut acc = CyclotomicInt::zero(p);
        for g in gauss_periods(&ctx, e).unwrap() {
            prop_assert_eq!(g.counts.iter().sum::<u64>(), (ctx.q() as u64 - 1) / e);
            acc = acc.checked_add(&g.value).unwrap();
        }
        prop_assert_eq!(acc, CyclotomicInt::integer(p, -1));
    }

    #[test]
    fn weight_invariant_under_prime_field_scalars((ctx, n, a) in instance()) {
        let c = code(&ctx, n, Family::A, None);
        let a = ctx.from_index(a).unwrap();
        let g = primitive_root(ctx.p() as u64) as u32;
        prop_assert_eq!(c.weight(ctx.scale(g, a)), c.weight(a));
    }

    #[test]
    fn family_a_weight_depends_on_class((ctx, n, a) in instance()) {
        let params = CyclotomyParams::new(ctx.clone(), n).unwrap();
        let c = code(&ctx, n, Family::A, None);
        let a = ctx.from_index(a).unwrap();
        let shift = ctx.exp(params.reduced_index);
        prop_assert_eq!(c.weight(ctx.mul(a, shift)), c.weight(a));
        let order = ctx.group_order() as u64;
        prop_assert_eq!(params.reduced_index, gcd(n, order / (ctx.p() as u64 - 1)));
    }

    #[test]
    fn seeded_skew_sets_are_one_weight(ctx in field(), seed in 0u64..1000, a in 1u32..729) {
        let c = code(&ctx, 1, Family::C, Some(SkewSpec::Seeded(seed)));
        prop_assert!(is_skew_set(&ctx, c.elements()));
        let (p, q) = (ctx.p() as i128, ctx.q() as i128);
        let a = ctx.from_index(a % ctx.q()).unwrap();
        prop_assume!(!a.is_zero());
        let w = rational(q * (p - 1), 2 * p);
        prop_assert_eq!(rational(c.weight(a) as i128, 1), w);
    }

    #[test]
    fn brute_force_dominates_any_subspace((ctx, n, _) in instance(), idx in prop::collection::vec(1u32..729, 2)) {
        prop_assume!(ctx.m() >= 2 && ctx.q() <= 343);
        let c = code(&ctx, n, Family::A, None);
        prop_assume!(c.is_injective());
        let basis: Vec<_> = idx.iter().map(|&i| ctx.from_index(i % ctx.q()).unwrap()).collect();
        let mut span = span_nonzero(&ctx, &basis);
        span.sort();
        span.dedup();
        prop_assume!(!span.contains(&FieldElement::ZERO) && span.len() as u32 == ctx.p() * ctx.p() - 1);
        let best = ghw_bruteforce(&c, 2, 1 << 24).unwrap();
        let here = n_zero_direct(&c, &Subspace::new(basis));
        prop_assert!(here <= best.n_zero_max);
        prop_assert_eq!(best.d_r, c.n as u64 - best.n_zero_max);
    }
}

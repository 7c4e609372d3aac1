//! Closed-form generalized Hamming weights for small `N1`, the
//! semiprimitive case and skew sets.

use serde::Serialize;

use crate::arith::{exact_root, int, odd_part, rational, Rational};
use crate::codes::Family;
use crate::cyclotomy::{semiprimitive_j, solve_c1_d1, solve_u1_v1, CyclotomyParams};
use crate::error::{Error, Result};

/// A family A corollary: for `1 <= r <= r_max`,
/// `d_r = (1 - p^{-r}) numerator / N`, obtained from the largest Gauss
/// period of order `N1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Corollary {
    pub label: String,
    pub r_max: u32,
    #[serde(with = "crate::report::rational")]
    pub max_period: Rational,
    #[serde(with = "crate::report::rational")]
    pub numerator: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedFormSource {
    /// A formula stated outright for the family.
    Stated,
    /// Family B values obtained by running a family A corollary's argument
    /// through the family B zero-count formula.
    RemarkDerived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormValue {
    pub value: u64,
    pub labels: Vec<String>,
    pub source: ClosedFormSource,
    pub r_max: u32,
}

/// The family A corollaries whose hypotheses hold for `params`.
pub fn corollaries(params: &CyclotomyParams) -> Result<Vec<Corollary>> {
    let ctx = params.ctx();
    let (p, m) = (ctx.p() as u64, ctx.m());
    let q = ctx.q() as i128;
    let n1 = params.reduced_index;
    let n1i = n1 as i128;
    let sqrt_q = exact_root(q as u64, 2).map(|s| s as i128);
    let mut out = Vec::new();
    let mut push = |label: String, r_max: u32, max_period: Rational, numerator: Rational| {
        out.push(Corollary {
            label,
            r_max,
            max_period,
            numerator,
        })
    };

    match n1 {
        1 => push("N1=1".into(), m, int(-1), int(q)),
        2 => {
            let s = sqrt_q.expect("N1 = 2 forces m even");
            push("N1=2".into(), m / 2, rational(s - 1, 2), int(q - s));
        }
        3 if p % 3 == 2 => {
            let s = sqrt_q.expect("3 | q - 1 with p = 2 mod 3 forces m even");
            if m % 4 == 2 {
                push(
                    "N1=3 (p≡2 mod 3, m≡2 mod 4)".into(),
                    m / 2,
                    rational(2 * s - 1, 3),
                    int(q - 2 * s),
                );
            } else {
                let l = odd_part(m as u64 / 4) as u32;
                push(
                    format!("N1=3 (p≡2 mod 3, 4l | m, l={l})"),
                    l,
                    rational(s - 1, 3),
                    int(q - s),
                );
            }
        }
        3 => {
            let w = solve_c1_d1(p, m)?;
            let c = exact_root(q as u64, 3).expect("3 | m") as i128;
            let (c1, d1) = (w.first as i128, w.second_abs as i128);
            if c1 == 3 * d1 {
                return Err(Error::CorollaryConflict {
                    r: 1,
                    detail: format!("c1 = 3|d1| = {c1} contradicts c1 = 1 mod 3"),
                });
            }
            if c1 > 3 * d1 {
                push(
                    "N1=3 (p≡1 mod 3, c1>3|d1|)".into(),
                    m / 3,
                    rational(c1 * c - 1, 3),
                    int(q - c1 * c),
                );
            } else {
                push(
                    "N1=3 (p≡1 mod 3, c1<3|d1|)".into(),
                    m / 3,
                    (int(-1) - rational((c1 - 9 * d1) * c, 2)) / int(3),
                    int(q) + rational((c1 - 9 * d1) * c, 2),
                );
            }
        }
        4 if p % 4 == 3 => {
            let s = sqrt_q.expect("4 | q - 1 with p = 3 mod 4 forces m even");
            if m % 4 == 2 {
                push(
                    "N1=4 (p≡3 mod 4, m≡2 mod 4)".into(),
                    m / 2,
                    rational(3 * s - 1, 4),
                    int(q - 3 * s),
                );
            } else {
                push(
                    "N1=4 (p≡3 mod 4, m≡0 mod 4)".into(),
                    m / 4,
                    rational(s - 1, 4),
                    int(q - s),
                );
            }
        }
        4 => {
            let w = solve_u1_v1(p, m)?;
            let s = sqrt_q.expect("4 | m");
            let t = exact_root(q as u64, 4).expect("4 | m") as i128;
            let v1 = w.second_abs as i128;
            push(
                "N1=4 (p≡1 mod 4)".into(),
                m / 4,
                rational(s + 4 * t * v1 - 1, 4),
                int(q - s - 4 * t * v1),
            );
        }
        _ => {}
    }
    if n1 >= 3 {
        if let Some(j) = semiprimitive_j(p, m, n1) {
            if m % (2 * j) == 0 {
                let gamma = m / (2 * j);
                let s = sqrt_q.expect("m even");
                let (max_period, numerator) = if gamma % 2 == 0 {
                    (rational(s - 1, n1i), int(q - s))
                } else {
                    (rational((n1i - 1) * s - 1, n1i), int(q - (n1i - 1) * s))
                };
                push(
                    format!("semiprimitive (j={j}, gamma={gamma})"),
                    j,
                    max_period,
                    numerator,
                );
            }
        }
    }
    for c in &out {
        // d_r = n1 (1 - p^{-r}) - N1 (p^r - 1) max / (p^r N) rearranged
        if c.numerator != int(q - 1) - int(n1i) * c.max_period {
            return Err(Error::CorollaryConflict {
                r: 1,
                detail: format!("{}: numerator disagrees with its period maximum", c.label),
            });
        }
    }
    Ok(out)
}

fn to_weight(v: Rational) -> Result<u64> {
    if !v.is_integer() || v < int(0) {
        return Err(Error::NonIntegerResult(v.to_string()));
    }
    Ok(v.to_integer() as u64)
}

/// Closed-form `d_r` for the given family, if some corollary covers `r`.
pub fn ghw_closed_form(
    params: &CyclotomyParams,
    family: Family,
    r: u32,
) -> Result<Option<ClosedFormValue>> {
    let ctx = params.ctx();
    let (p, m, q) = (ctx.p() as i128, ctx.m(), ctx.q() as i128);
    if r == 0 || r > m {
        return Ok(None);
    }
    let pr = p.pow(r);
    if family == Family::C {
        return Ok(Some(ClosedFormValue {
            value: to_weight(rational(q * (pr - 1), 2 * pr))?,
            labels: vec!["skew set".into()],
            source: ClosedFormSource::Stated,
            r_max: m,
        }));
    }
    if !params.order_ok {
        return Ok(None);
    }
    let n1 = params.reduced_index;
    if family == Family::B && (n1 as i128).pow(2) > q {
        return Ok(None);
    }
    let cors: Vec<Corollary> = corollaries(params)?
        .into_iter()
        .filter(|c| r <= c.r_max)
        .collect();
    if cors.is_empty() {
        return Ok(None);
    }
    let big_n = params.index as i128;
    let n2 = params.coset_count as i128;
    let mut values = Vec::with_capacity(cors.len());
    for c in &cors {
        let v = match family {
            Family::A => int(pr - 1) * c.numerator / int(pr * big_n),
            _ => int(n2) * rational(pr - 1, pr) - int(pr - 1) * c.max_period / int(pr * (p - 1)),
        };
        values.push(v);
    }
    if let Some(pos) = values.iter().position(|v| *v != values[0]) {
        return Err(Error::CorollaryConflict {
            r,
            detail: format!(
                "{} gives {} but {} gives {}",
                cors[0].label, values[0], cors[pos].label, values[pos]
            ),
        });
    }
    let (labels, source) = match family {
        Family::A => (
            cors.iter().map(|c| c.label.clone()).collect(),
            ClosedFormSource::Stated,
        ),
        _ => (
            cors.iter()
                .map(|c| format!("family B via {}", c.label))
                .collect(),
            ClosedFormSource::RemarkDerived,
        ),
    };
    Ok(Some(ClosedFormValue {
        value: to_weight(values[0])?,
        labels,
        source,
        r_max: cors.iter().map(|c| c.r_max).max().unwrap_or(0),
    }))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::FieldCtx;

    fn params(p: u64, m: u32, n: u64) -> CyclotomyParams {
        CyclotomyParams::new(Arc::new(FieldCtx::new(p, m).unwrap()), n).unwrap()
    }

    #[test]
    fn n1_one_q27() {
        let pr = params(3, 3, 2);
        let vals: Vec<u64> = (1..=3)
            .map(|r| ghw_closed_form(&pr, Family::A, r).unwrap().unwrap().value)
            .collect();
        assert_eq!(vals, vec![9, 12, 13]);
        assert_eq!(ghw_closed_form(&pr, Family::A, 4).unwrap(), None);
    }

    #[test]
    fn semiprimitive_q25() {
        let v = ghw_closed_form(&params(5, 2, 3), Family::A, 1)
            .unwrap()
            .unwrap();
        assert_eq!(v.value, 4);
        assert!(v.labels.iter().any(|l| l.starts_with("semiprimitive")));
        assert_eq!(
            ghw_closed_form(&params(5, 2, 3), Family::A, 2).unwrap(),
            None
        );
    }

    #[test]
    fn skew_sets() {
        let v = ghw_closed_form(&params(3, 3, 2), Family::C, 3)
            .unwrap()
            .unwrap();
        assert_eq!(v.value, 13);
        let v = ghw_closed_form(&params(7, 1, 2), Family::C, 1)
            .unwrap()
            .unwrap();
        assert_eq!(v.value, 3);
    }

    #[test]
    fn family_b_q25() {
        let v = ghw_closed_form(&params(5, 2, 2), Family::B, 1)
            .unwrap()
            .unwrap();
        assert_eq!(v.value, 2);
        assert_eq!(v.source, ClosedFormSource::RemarkDerived);
    }

    #[test]
    fn cubic_split_branch() {
        // q = 343: c1 = 1, |d1| = 1, so c1 < 3|d1|
        let pr = params(7, 3, 3);
        assert_eq!(pr.reduced_index, 3);
        let cors = corollaries(&pr).unwrap();
        assert_eq!(cors[0].label, "N1=3 (p≡1 mod 3, c1<3|d1|)");
        assert_eq!(cors[0].max_period, int(9));
    }
}

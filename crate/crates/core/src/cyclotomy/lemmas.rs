//! Closed-form Gauss period values for the known small-order and
//! semiprimitive cases, and the Diophantine witnesses they depend on.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::arith::{exact_root, gcd, int, isqrt, rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// `4 p^{m/3} = c_1^2 + 27 d_1^2`, `c_1 = 1 mod 3`.
    C1D1,
    /// `p^{m/2} = u_1^2 + 4 v_1^2`, `u_1 = 1 mod 4`.
    U1V1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiophantineWitness {
    pub kind: WitnessKind,
    /// `c_1` or `u_1`, normalized by its congruence.
    pub first: i64,
    /// `|d_1|` or `|v_1|`.
    pub second_abs: u64,
}

/// Solves `target = x^2 + k y^2` with `x = 1 mod modulus`, `gcd(x, p) = 1`,
/// `y >= 0`, insisting on a unique solution.
fn solve_norm_form(
    kind: WitnessKind,
    p: u64,
    m: u32,
    target: u128,
    k: u128,
    modulus: i128,
) -> Result<DiophantineWitness> {
    let mut found = Vec::new();
    for y in 0..=isqrt(target / k) {
        let rest = target - k * y * y;
        let s = isqrt(rest);
        if s * s != rest {
            continue;
        }
        let s = s as i128;
        let mut xs = vec![s, -s];
        xs.dedup();
        for x in xs {
            if x.mod_floor(&modulus) == 1 && gcd(x.unsigned_abs() as u64, p) == 1 {
                found.push((x as i64, y as u64));
            }
        }
    }
    match found.len() {
        0 => Err(Error::NoSolutionFound {
            p,
            m,
            reason: "no candidate satisfies the side conditions".into(),
        }),
        1 => Ok(DiophantineWitness {
            kind,
            first: found[0].0,
            second_abs: found[0].1,
        }),
        count => Err(Error::WitnessNotUnique { p, m, count }),
    }
}

/// `(c_1, |d_1|)` with `4 p^{m/3} = c_1^2 + 27 d_1^2`, `c_1 = 1 mod 3`,
/// `gcd(c_1, p) = 1`.
pub fn solve_c1_d1(p: u64, m: u32) -> Result<DiophantineWitness> {
    if p % 3 != 1 || !m.is_multiple_of(3) || m == 0 {
        return Err(Error::NoSolutionFound {
            p,
            m,
            reason: "needs p = 1 mod 3 and 3 | m".into(),
        });
    }
    let target = (p as u128)
        .checked_pow(m / 3)
        .and_then(|v| v.checked_mul(4))
        .ok_or(Error::Overflow("c1/d1 target"))?;
    solve_norm_form(WitnessKind::C1D1, p, m, target, 27, 3)
}

/// `(u_1, |v_1|)` with `p^{m/2} = u_1^2 + 4 v_1^2`, `u_1 = 1 mod 4`,
/// `gcd(u_1, p) = 1`.
pub fn solve_u1_v1(p: u64, m: u32) -> Result<DiophantineWitness> {
    if p % 4 != 1 || !m.is_multiple_of(2) || m == 0 {
        return Err(Error::NoSolutionFound {
            p,
            m,
            reason: "needs p = 1 mod 4 and 2 | m".into(),
        });
    }
    let target = (p as u128)
        .checked_pow(m / 2)
        .ok_or(Error::Overflow("u1/v1 target"))?;
    solve_norm_form(WitnessKind::U1V1, p, m, target, 4, 4)
}

/// Which known evaluation produced a prediction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum PeriodCase {
    Trivial,
    Quadratic { p_mod_4: u64 },
    CubicInert { m_mod_4: u32 },
    CubicSplit { witness: DiophantineWitness },
    QuarticInert { m_mod_4: u32 },
    QuarticSplit { witness: DiophantineWitness },
    Semiprimitive { j: u32, gamma: u32, case_a: bool },
}

impl fmt::Display for PeriodCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodCase::Trivial => write!(f, "(eta = -1)"),
            PeriodCase::Quadratic { p_mod_4 } => {
                write!(f, "lemma (p≡{p_mod_4} mod 4, m even)")
            }
            PeriodCase::CubicInert { m_mod_4 } => {
                write!(f, "lemma (p≡2 mod 3, m≡{m_mod_4} mod 4)")
            }
            PeriodCase::CubicSplit { witness } => write!(
                f,
                "lemma (p≡1 mod 3, m≡0 mod 3, c1={}, |d1|={})",
                witness.first, witness.second_abs
            ),
            PeriodCase::QuarticInert { m_mod_4 } => {
                write!(f, "lemma (p≡3 mod 4, m≡{m_mod_4} mod 4)")
            }
            PeriodCase::QuarticSplit { witness } => write!(
                f,
                "lemma (p≡1 mod 4, m≡0 mod 4, u1={}, |v1|={})",
                witness.first, witness.second_abs
            ),
            PeriodCase::Semiprimitive { j, gamma, case_a } => write!(
                f,
                "semiprimitive lemma case ({}) (j={j}, gamma={gamma})",
                if *case_a { "a" } else { "b" }
            ),
        }
    }
}

/// Predicted multiset of the `e` Gauss periods of order `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodPrediction {
    pub order: u64,
    pub cases: Vec<PeriodCase>,
    pub labels: Vec<String>,
    /// Sorted multiset of period values.
    #[serde(with = "crate::report::rational_vec")]
    pub values: Vec<Rational>,
    /// Values the lemmas attach to a specific class index.
    #[serde(with = "crate::report::indexed_rationals")]
    pub pinned: Vec<(u64, Rational)>,
}

impl PeriodPrediction {
    pub fn max_value(&self) -> Rational {
        *self.values.last().expect("prediction is nonempty")
    }
}

struct Candidate {
    case: PeriodCase,
    values: Vec<Rational>,
    pinned: Vec<(u64, Rational)>,
}

/// Smallest `j <= m` with `e | p^j + 1`, if any.
pub fn semiprimitive_j(p: u64, m: u32, e: u64) -> Option<u32> {
    (1..=m).find(|&j| (crate::arith::pow_mod(p, j as u64, e) + 1).is_multiple_of(e))
}

/// Every applicable closed form for the periods of order `e` in `F_{p^m}`.
/// Only branches whose radicals are integers are returned, so all values are
/// exact rationals. `prefix` names the order in labels (e.g. `"N1"`).
pub fn closed_form_periods_for_order(
    p: u64,
    m: u32,
    e: u64,
    prefix: &str,
) -> Result<Option<PeriodPrediction>> {
    let q = p.checked_pow(m).ok_or(Error::Overflow("q"))?;
    if e == 0 || (q - 1) % e != 0 {
        return Err(Error::NDoesNotDivide {
            n: e,
            q_minus_one: q - 1,
        });
    }
    let sqrt_q = exact_root(q, 2).map(|s| s as i128);
    let mut cands: Vec<Candidate> = Vec::new();
    let ei = e as i128;

    if e == 1 {
        cands.push(Candidate {
            case: PeriodCase::Trivial,
            values: vec![int(-1)],
            pinned: vec![(0, int(-1))],
        });
    }
    if e == 2 {
        if let Some(s) = sqrt_q {
            let eta0 = if p % 4 == 1 {
                rational(-1 - s, 2)
            } else {
                let sign = if (m / 2).is_multiple_of(2) { 1 } else { -1 };
                rational(-1 - sign * s, 2)
            };
            let eta1 = int(-1) - eta0;
            cands.push(Candidate {
                case: PeriodCase::Quadratic { p_mod_4: p % 4 },
                values: vec![eta0, eta1],
                pinned: vec![(0, eta0), (1, eta1)],
            });
        }
    }
    if e == 3 && p % 3 == 2 {
        let s = sqrt_q.expect("3 | q - 1 with p = 2 mod 3 forces m even");
        let (single, double) = if m.is_multiple_of(4) {
            (rational(-1 - 2 * s, 3), rational(-1 + s, 3))
        } else {
            (rational(-1 + 2 * s, 3), rational(-1 - s, 3))
        };
        cands.push(Candidate {
            case: PeriodCase::CubicInert { m_mod_4: m % 4 },
            values: vec![single, double, double],
            pinned: vec![],
        });
    }
    if e == 3 && p % 3 == 1 && m.is_multiple_of(3) {
        let w = solve_c1_d1(p, m)?;
        let c = exact_root(q, 3).expect("3 | m") as i128;
        let (c1, d1) = (w.first as i128, w.second_abs as i128);
        cands.push(Candidate {
            case: PeriodCase::CubicSplit { witness: w },
            values: vec![
                rational(-1 + c1 * c, 3),
                (int(-1) - rational((c1 + 9 * d1) * c, 2)) / int(3),
                (int(-1) - rational((c1 - 9 * d1) * c, 2)) / int(3),
            ],
            pinned: vec![],
        });
    }
    if e == 4 && p % 4 == 3 {
        let s = sqrt_q.expect("4 | q - 1 with p = 3 mod 4 forces m even");
        let (single, triple) = if m.is_multiple_of(4) {
            (rational(-1 - 3 * s, 4), rational(-1 + s, 4))
        } else {
            (rational(-1 + 3 * s, 4), rational(-1 - s, 4))
        };
        cands.push(Candidate {
            case: PeriodCase::QuarticInert { m_mod_4: m % 4 },
            values: vec![single, triple, triple, triple],
            pinned: vec![],
        });
    }
    if e == 4 && p % 4 == 1 && m.is_multiple_of(4) {
        let w = solve_u1_v1(p, m)?;
        let s = sqrt_q.expect("m even");
        let t = exact_root(q, 4).expect("4 | m") as i128;
        let (u1, v1) = (w.first as i128, w.second_abs as i128);
        cands.push(Candidate {
            case: PeriodCase::QuarticSplit { witness: w },
            values: vec![
                rational(-1 - s - 2 * t * u1, 4),
                rational(-1 - s + 2 * t * u1, 4),
                rational(-1 + s - 4 * t * v1, 4),
                rational(-1 + s + 4 * t * v1, 4),
            ],
            pinned: vec![],
        });
    }
    if e >= 3 {
        if let Some(j) = semiprimitive_j(p, m, e) {
            if m.is_multiple_of(2 * j) {
                let gamma = m / (2 * j);
                let s = sqrt_q.expect("m even");
                let pj1 = p.pow(j) as u128 + 1;
                let quotient_odd = (pj1 / e as u128) % 2 == 1;
                let case_a = gamma % 2 == 1 && quotient_odd;
                let (special_idx, special, rest) = if case_a {
                    (e / 2, int(s) - rational(s + 1, ei), -rational(s + 1, ei))
                } else {
                    let sign: i128 = if gamma.is_multiple_of(2) { 1 } else { -1 };
                    (
                        0,
                        rational(-sign * (ei - 1) * s - 1, ei),
                        rational(sign * s - 1, ei),
                    )
                };
                let mut values = vec![rest; e as usize];
                values[special_idx as usize] = special;
                let pinned = values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (i as u64, *v))
                    .collect();
                cands.push(Candidate {
                    case: PeriodCase::Semiprimitive { j, gamma, case_a },
                    values,
                    pinned,
                });
            }
        }
    }

    if cands.is_empty() {
        return Ok(None);
    }
    for c in &mut cands {
        c.values.sort();
    }
    let first = &cands[0];
    for other in &cands[1..] {
        if other.values != first.values {
            return Err(Error::CaseConflict(format!(
                "{} vs {} for q = {q}, e = {e}",
                first.case, other.case
            )));
        }
    }
    let mut pinned: Vec<(u64, Rational)> = Vec::new();
    for c in &cands {
        for &(i, v) in &c.pinned {
            match pinned.iter().find(|(j, _)| *j == i) {
                Some((_, w)) if *w != v => {
                    return Err(Error::CaseConflict(format!(
                        "class {i} pinned to {w} and {v} for q = {q}, e = {e}"
                    )))
                }
                Some(_) => {}
                None => pinned.push((i, v)),
            }
        }
    }
    pinned.sort();
    Ok(Some(PeriodPrediction {
        order: e,
        labels: cands
            .iter()
            .map(|c| match c.case {
                PeriodCase::Trivial => format!("{prefix}=1 {}", c.case),
                _ => format!("{prefix}={e} {}", c.case),
            })
            .collect(),
        values: cands[0].values.clone(),
        cases: cands.into_iter().map(|c| c.case).collect(),
        pinned,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(first: i64, second_abs: u64, kind: WitnessKind) -> DiophantineWitness {
        DiophantineWitness {
            kind,
            first,
            second_abs,
        }
    }

    #[test]
    fn c1_d1_witnesses() {
        assert_eq!(solve_c1_d1(7, 3).unwrap(), w(1, 1, WitnessKind::C1D1));
        assert_eq!(solve_c1_d1(13, 3).unwrap(), w(-5, 1, WitnessKind::C1D1));
        // 4 * 13^3 = 8788 = 70^2 + 27 * 12^2; 65^2 + 27 * 13^2 fails gcd.
        assert_eq!(solve_c1_d1(13, 9).unwrap(), w(70, 12, WitnessKind::C1D1));
        assert_eq!(solve_c1_d1(7, 6).unwrap(), w(13, 1, WitnessKind::C1D1));
        assert!(solve_c1_d1(5, 3).is_err());
    }

    #[test]
    fn u1_v1_witnesses() {
        assert_eq!(solve_u1_v1(5, 2).unwrap(), w(1, 1, WitnessKind::U1V1));
        assert_eq!(solve_u1_v1(13, 2).unwrap(), w(-3, 1, WitnessKind::U1V1));
        assert_eq!(solve_u1_v1(17, 2).unwrap(), w(1, 2, WitnessKind::U1V1));
        assert_eq!(solve_u1_v1(5, 4).unwrap(), w(-3, 2, WitnessKind::U1V1));
        assert!(solve_u1_v1(7, 2).is_err());
    }

    #[test]
    fn quadratic_q9() {
        let pred = closed_form_periods_for_order(3, 2, 2, "N1")
            .unwrap()
            .unwrap();
        assert_eq!(pred.values, vec![int(-2), int(1)]);
        assert_eq!(pred.labels, vec!["N1=2 lemma (p≡3 mod 4, m even)"]);
        assert_eq!(pred.pinned, vec![(0, int(1)), (1, int(-2))]);
    }

    #[test]
    fn semiprimitive_q25_agrees_with_cubic_lemma() {
        let pred = closed_form_periods_for_order(5, 2, 3, "N1")
            .unwrap()
            .unwrap();
        assert_eq!(pred.values, vec![int(-2), int(-2), int(3)]);
        assert_eq!(pred.cases.len(), 2);
        assert!(matches!(
            pred.cases[1],
            PeriodCase::Semiprimitive {
                j: 1,
                gamma: 1,
                case_a: false
            }
        ));
    }

    #[test]
    fn cubic_split_q343() {
        let pred = closed_form_periods_for_order(7, 3, 3, "N")
            .unwrap()
            .unwrap();
        assert_eq!(pred.values, vec![int(-12), int(2), int(9)]);
    }

    #[test]
    fn no_rational_branch() {
        // e = 2 with m odd has irrational periods.
        assert_eq!(closed_form_periods_for_order(5, 1, 2, "N").unwrap(), None);
        assert_eq!(closed_form_periods_for_order(7, 1, 3, "N").unwrap(), None);
        assert!(closed_form_periods_for_order(3, 2, 3, "N").is_err());
    }
}

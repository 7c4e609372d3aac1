use serde::Serialize;

use crate::error::{Error, Result};

/// An element `sum_t a_t zeta_p^t` of `Z[zeta_p]`.
///
/// Stored canonically with `a_0 = 0`; since `1 + zeta + ... + zeta^{p-1} = 0`,
/// the remaining `p - 1` powers form a basis, so two values are equal iff
/// their canonical vectors are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CyclotomicInt {
    coeffs: Vec<i128>,
}

impl CyclotomicInt {
    pub fn from_coeffs(mut coeffs: Vec<i128>) -> Self {
        assert!(!coeffs.is_empty());
        let a0 = coeffs[0];
        if a0 != 0 {
            for c in &mut coeffs {
                *c -= a0;
            }
        }
        CyclotomicInt { coeffs }
    }

    /// Value of a trace-count vector: `counts[t]` copies of `zeta^t`.
    pub fn from_counts(counts: &[u64]) -> Self {
        Self::from_coeffs(counts.iter().map(|&c| c as i128).collect())
    }

    pub fn integer(p: u32, k: i128) -> Self {
        let mut coeffs = vec![0; p as usize];
        coeffs[0] = k;
        Self::from_coeffs(coeffs)
    }

    pub fn zero(p: u32) -> Self {
        CyclotomicInt {
            coeffs: vec![0; p as usize],
        }
    }

    pub fn p(&self) -> u32 {
        self.coeffs.len() as u32
    }

    /// Canonical coefficient vector (`coeffs[0] == 0`).
    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// The rational integer this value equals, if it lies in `Z`.
    pub fn as_integer(&self) -> Option<i128> {
        let tail = &self.coeffs[1..];
        match tail.first() {
            None => Some(0),
            Some(&c) if tail.iter().all(|&x| x == c) => Some(-c),
            _ => None,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("cyclotomic add")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(coeffs))
    }

    pub fn neg(&self) -> Self {
        CyclotomicInt {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    /// Product, reducing exponents mod `p`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let p = self.coeffs.len();
        let mut out = vec![0i128; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let k = (i + j) % p;
                let t = a.checked_mul(b).ok_or(Error::Overflow("cyclotomic mul"))?;
                out[k] = out[k]
                    .checked_add(t)
                    .ok_or(Error::Overflow("cyclotomic mul"))?;
            }
        }
        Ok(Self::from_coeffs(out))
    }

    /// Complex value with `zeta_p = exp(2 pi i / p)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let p = self.coeffs.len() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(re, im), (t, &a)| {
                let ang = 2.0 * std::f64::consts::PI * t as f64 / p;
                (re + a as f64 * ang.cos(), im + a as f64 * ang.sin())
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let v = CyclotomicInt::from_counts(&[2, 1, 1]);
        assert_eq!(v.coeffs(), &[0, -1, -1]);
        assert_eq!(v.as_integer(), Some(1));
        assert_eq!(
            CyclotomicInt::from_counts(&[0, 2, 2]).as_integer(),
            Some(-2)
        );
        assert_eq!(CyclotomicInt::from_counts(&[1, 2, 0]).as_integer(), None);
        assert_eq!(CyclotomicInt::integer(5, 7).as_integer(), Some(7));
    }

    #[test]
    fn ring_ops() {
        let z = CyclotomicInt::from_coeffs(vec![0, 1, 0]);
        let z2 = z.checked_mul(&z).unwrap();
        assert_eq!(z2, CyclotomicInt::from_coeffs(vec![0, 0, 1]));
        // 1 + zeta + zeta^2 = 0
        let one = CyclotomicInt::integer(3, 1);
        let s = one.checked_add(&z).unwrap().checked_add(&z2).unwrap();
        assert_eq!(s, CyclotomicInt::zero(3));
        // zeta^3 = 1
        assert_eq!(z2.checked_mul(&z).unwrap(), one);
        let (re, im) = z.to_complex();
        assert!((re + 0.5).abs() < 1e-12 && (im - 0.75f64.sqrt()).abs() < 1e-12);
    }
}

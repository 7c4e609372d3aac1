//! Arithmetic in `F_p` and `F_{p^m}` for odd `p`.
//!
//! Elements are stored in the polynomial basis `{1, x, ..., x^{m-1}}` and
//! packed into a single integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`.
//! Construction is deterministic: the modulus is the lexicographically
//! smallest monic irreducible polynomial (comparing `(c_0, ..., c_{m-1})`
//! with `c_0` most significant) and the primitive element is the one with
//! the smallest packed index. Multiplication, powers and logarithms go
//! through cached exp/log tables.

use serde::Serialize;

use crate::arith::{is_prime, prime_factors};
use crate::error::{Error, Result};

/// Default bound on `q` for table construction.
pub const DEFAULT_SIZE_GUARD: u64 = 1_000_000;

const NO_LOG: u32 = u32::MAX;

/// An element of `F_q`, packed as its base-`p` polynomial-basis coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Packed index `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub(crate) fn from_packed(idx: u32) -> Self {
        FieldElement(idx)
    }
}

/// Immutable description of `F_{p^m}` with its lookup tables.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    alpha: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u32>,
    trace_by_log: Vec<u32>,
    basis_traces: Vec<u32>,
}

impl FieldCtx {
    /// Builds `F_{p^m}` with the default table guard.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        Self::with_guard(p, m, DEFAULT_SIZE_GUARD)
    }

    pub fn with_guard(p: u64, m: u32, guard: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        let limit = guard.min(u32::MAX as u64 / 2);
        if q > limit as u128 {
            return Err(Error::SizeGuardExceeded { q, limit: guard });
        }
        let q = q as u64;
        let ring = PolyRing { p };

        let modulus = (0..q)
            .map(|k| {
                // c_0 is the most significant digit of the search counter.
                let mut f = vec![0u64; m as usize + 1];
                let mut rest = k;
                for j in (0..m as usize).rev() {
                    f[j] = rest % p;
                    rest /= p;
                }
                f[m as usize] = 1;
                f
            })
            .find(|f| ring.is_irreducible(f))
            .expect("an irreducible polynomial of every degree exists");

        let order = q - 1;
        let factors = prime_factors(order);
        let alpha = (1..q)
            .map(|idx| unpack(idx, p, m))
            .find(|g| {
                factors
                    .iter()
                    .all(|&r| !ring.is_one(&ring.pow_mod(g, order / r, &modulus)))
            })
            .expect("F_q* is cyclic");

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![NO_LOG; q as usize];
        let mut cur = vec![0u64; m as usize];
        cur[0] = 1;
        for k in 0..order {
            let idx = pack(&cur, p) as u32;
            debug_assert_eq!(log[idx as usize], NO_LOG);
            exp.push(idx);
            log[idx as usize] = k as u32;
            cur = ring.mul_mod(&cur, &alpha, &modulus);
        }

        let mut ctx = FieldCtx {
            p: p as u32,
            m,
            q: q as u32,
            modulus: modulus.iter().map(|&c| c as u32).collect(),
            alpha: FieldElement(pack(&alpha, p) as u32),
            exp,
            log,
            trace: Vec::new(),
            trace_by_log: Vec::new(),
            basis_traces: Vec::new(),
        };
        ctx.basis_traces = (0..m).map(|j| ctx.trace_frobenius(ctx.basis(j))).collect();
        ctx.trace = (0..ctx.q)
            .map(|idx| ctx.trace_linear(FieldElement(idx)))
            .collect();
        ctx.trace_by_log = ctx.exp.iter().map(|&e| ctx.trace[e as usize]).collect();
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of the multiplicative group, `q - 1`.
    pub fn group_order(&self) -> u32 {
        self.q - 1
    }

    /// Monic modulus, coefficients low degree first (length `m + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn alpha(&self) -> FieldElement {
        self.alpha
    }

    /// Element whose polynomial-basis coordinates are `coeffs` (missing
    /// high coordinates are zero). Coordinates are reduced mod `p`.
    pub fn element(&self, coeffs: &[u32]) -> FieldElement {
        assert!(coeffs.len() <= self.m as usize, "too many coordinates");
        let mut idx = 0u32;
        for &c in coeffs.iter().rev() {
            idx = idx * self.p + c % self.p;
        }
        FieldElement(idx)
    }

    pub fn from_index(&self, idx: u32) -> Option<FieldElement> {
        (idx < self.q).then_some(FieldElement(idx))
    }

    /// Embedding of `c mod p` into `F_q`.
    pub fn scalar(&self, c: u32) -> FieldElement {
        FieldElement(c % self.p)
    }

    /// Basis element `x^j` for `j < m`.
    pub fn basis(&self, j: u32) -> FieldElement {
        assert!(j < self.m);
        FieldElement(self.p.pow(j))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        let mut rest = x.0;
        (0..self.m)
            .map(|_| {
                let c = rest % self.p;
                rest /= self.p;
                c
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p;
        let (mut a, mut b) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while a != 0 || b != 0 {
            let d = (a % p + b % p) % p;
            out += d * place;
            a /= p;
            b /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.scale(self.p - 1, a)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    /// `c * a` for `c` in `F_p`.
    pub fn scale(&self, c: u32, a: FieldElement) -> FieldElement {
        let p = self.p;
        let c = c % p;
        let mut a = a.0;
        let mut out = 0;
        let mut place = 1;
        while a != 0 {
            out += ((a % p) as u64 * c as u64 % p as u64) as u32 * place;
            a /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let s = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        FieldElement(self.exp[(s % self.group_order() as u64) as usize])
    }

    /// `a^e`, with `a^0 = 1` for every `a` (including zero).
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let order = self.group_order() as u64;
        let k = (self.log[a.0 as usize] as u128 * (e % order) as u128) % order as u128;
        FieldElement(self.exp[k as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        let l = self.discrete_log(a)?;
        Ok(self.exp((self.group_order() - l) as u64))
    }

    /// `alpha^k`, with `k` reduced mod `q - 1`.
    pub fn exp(&self, k: u64) -> FieldElement {
        FieldElement(self.exp[(k % self.group_order() as u64) as usize])
    }

    pub fn discrete_log(&self, x: FieldElement) -> Result<u32> {
        match self.log.get(x.0 as usize) {
            Some(&l) if l != NO_LOG => Ok(l),
            _ => Err(Error::ZeroHasNoLog),
        }
    }

    /// Absolute trace to `F_p`, from the cached table.
    pub fn trace(&self, x: FieldElement) -> u32 {
        self.trace[x.0 as usize]
    }

    /// `Tr(alpha^k)` for `0 <= k < q - 1`.
    #[inline]
    pub fn trace_of_log(&self, k: usize) -> u32 {
        self.trace_by_log[k]
    }

    /// `Tr(alpha^k)` indexed by `k`.
    pub fn trace_by_log_table(&self) -> &[u32] {
        &self.trace_by_log
    }

    /// `Tr(x) = x + x^p + ... + x^{p^{m-1}}`, computed in the field.
    pub fn trace_frobenius(&self, x: FieldElement) -> u32 {
        let mut acc = FieldElement::ZERO;
        let mut term = x;
        for _ in 0..self.m {
            acc = self.add(acc, term);
            term = self.pow(term, self.p as u64);
        }
        debug_assert!(acc.0 < self.p, "trace must land in the prime field");
        acc.0
    }

    /// Trace through the linear map `sum_j c_j Tr(x^j)`.
    pub fn trace_linear(&self, x: FieldElement) -> u32 {
        let p = self.p as u64;
        let mut rest = x.0;
        let mut acc = 0u64;
        for &t in &self.basis_traces {
            acc += (rest % self.p) as u64 * t as u64;
            rest /= self.p;
        }
        (acc % p) as u32
    }
}

fn pack(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn unpack(mut idx: u64, p: u64, m: u32) -> Vec<u64> {
    (0..m)
        .map(|_| {
            let c = idx % p;
            idx /= p;
            c
        })
        .collect()
}

/// Dense polynomials over `F_p`, coefficients low degree first. Only used
/// while building the tables.
struct PolyRing {
    p: u64,
}

impl PolyRing {
    fn trim(&self, mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv(&self, a: u64) -> u64 {
        crate::arith::pow_mod(a, self.p - 2, self.p)
    }

    fn is_one(&self, a: &[u64]) -> bool {
        a.first() == Some(&1) && a[1..].iter().all(|&c| c == 0)
    }

    /// Remainder of `a` modulo a nonzero `f`.
    fn rem(&self, a: &[u64], f: &[u64]) -> Vec<u64> {
        let p = self.p;
        let f = self.trim(f.to_vec());
        let df = f.len() - 1;
        let lead_inv = self.inv(f[df]);
        let mut r = self.trim(a.to_vec());
        while r.len() > df {
            let top = r.len() - 1;
            let c = r[top] * lead_inv % p;
            for (k, &fk) in f.iter().enumerate() {
                let idx = top - df + k;
                r[idx] = (r[idx] + p - c * fk % p) % p;
            }
            r = self.trim(r);
        }
        r
    }

    /// `a * b mod f` for monic `f` of degree `m`; result has length `m`.
    fn mul_mod(&self, a: &[u64], b: &[u64], f: &[u64]) -> Vec<u64> {
        let p = self.p;
        let m = f.len() - 1;
        let mut prod = vec![0u64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let mut r = self.rem(&prod, f);
        r.resize(m, 0);
        r
    }

    fn pow_mod(&self, a: &[u64], mut e: u64, f: &[u64]) -> Vec<u64> {
        let m = f.len() - 1;
        let mut acc = vec![0u64; m];
        acc[0] = 1;
        let mut acc = self.rem(&acc, f);
        acc.resize(m, 0);
        let mut base = self.rem(a, f);
        base.resize(m, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(&acc, &base, f);
            }
            base = self.mul_mod(&base, &base, f);
            e >>= 1;
        }
        acc
    }

    fn gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut a = self.trim(a.to_vec());
        let mut b = self.trim(b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        a
    }

    fn has_root(&self, f: &[u64]) -> bool {
        let p = self.p;
        (0..p).any(|x| f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p) == 0)
    }

    /// Irreducibility of a monic `f`: root test up to degree 3, otherwise
    /// `gcd(x^{p^i} - x, f) = 1` for every `i <= deg f / 2`.
    fn is_irreducible(&self, f: &[u64]) -> bool {
        let m = f.len() - 1;
        if m == 1 {
            return true;
        }
        if m <= 3 {
            return !self.has_root(f);
        }
        let p = self.p;
        let mut x = vec![0u64; m];
        x[1] = 1;
        let mut frob = x.clone();
        for _ in 1..=m / 2 {
            frob = self.pow_mod(&frob, p, f);
            let mut h = frob.clone();
            h[1] = (h[1] + p - 1) % p;
            if self.gcd(f, &h).len() != 1 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_f3() {
        let f = FieldCtx::new(3, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.alpha(), f.scalar(2));
        assert_eq!(f.trace(f.scalar(2)), 2);
    }

    #[test]
    fn f9_construction() {
        let f = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        assert_eq!(f.alpha(), f.element(&[1, 1]));
        let x = f.element(&[0, 1]);
        assert_eq!(f.mul(x, x), f.scalar(2));
        assert_eq!(f.discrete_log(f.scalar(2)).unwrap(), 4);
        assert_eq!(f.discrete_log(FieldElement::ONE).unwrap(), 0);
        assert_eq!(f.discrete_log(f.alpha()).unwrap(), 1);
        // Tr(c1 x + c0) = 2 c0
        for c0 in 0..3 {
            for c1 in 0..3 {
                assert_eq!(f.trace(f.element(&[c0, c1])), 2 * c0 % 3);
            }
        }
    }

    #[test]
    fn f25_construction() {
        let f = FieldCtx::new(5, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.alpha(), f.element(&[2, 1]));
    }

    #[test]
    fn identities() {
        let f = FieldCtx::new(3, 3).unwrap();
        let x = f.basis(1);
        assert_eq!(f.add(x, FieldElement::ZERO), x);
        assert_eq!(f.pow(f.alpha(), 26), FieldElement::ONE);
        assert_eq!(f.trace(FieldElement::ONE), 0);
        assert_eq!(f.trace(FieldElement::ZERO), 0);
        assert_eq!(f.pow(FieldElement::ZERO, 0), FieldElement::ONE);
        let a = f.exp(5);
        assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
        assert_eq!(f.sub(a, a), FieldElement::ZERO);
    }

    #[test]
    fn errors() {
        assert_eq!(FieldCtx::new(9, 1).unwrap_err(), Error::NotOddPrime(9));
        assert_eq!(FieldCtx::new(2, 3).unwrap_err(), Error::NotOddPrime(2));
        assert!(matches!(
            FieldCtx::new(3, 13),
            Err(Error::SizeGuardExceeded { .. })
        ));
        let f = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f.discrete_log(FieldElement::ZERO), Err(Error::ZeroHasNoLog));
    }
}

//! Small integer helpers shared by the field, cyclotomy and ghw modules.

use num_integer::Integer;
use num_rational::Ratio;

/// Exact rational numbers used for period values and closed forms.
pub type Rational = Ratio<i128>;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `a` modulo `n`; `n = 1` gives 1. Returns `None`
/// when `gcd(a, n) != 1`.
pub fn multiplicative_order(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    if gcd(a, n) != 1 {
        return None;
    }
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = (x as u128 * a as u128 % n as u128) as u64;
        k += 1;
    }
    Some(k)
}

/// Smallest generator of `(Z/pZ)*` for a prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    (1..p)
        .find(|&c| multiplicative_order(c, p) == Some(p - 1))
        .expect("(Z/pZ)* is cyclic")
}

pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Integer `k`-th root of `n` when `n` is a perfect `k`-th power.
pub fn exact_root(n: u64, k: u32) -> Option<u64> {
    if k == 0 {
        return None;
    }
    let guess = (n as f64).powf(1.0 / k as f64).round() as u64;
    (guess.saturating_sub(1)..=guess + 1).find(|&r| r.checked_pow(k) == Some(n))
}

/// Largest odd divisor.
pub fn odd_part(mut n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    while n.is_multiple_of(2) {
        n /= 2;
    }
    n
}

pub fn rational(num: i128, den: i128) -> Rational {
    Ratio::new(num, den)
}

pub fn int(n: i128) -> Rational {
    Ratio::from_integer(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(24), vec![1, 2, 3, 4, 6, 8, 12, 24]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(3, 8), Some(2));
        assert_eq!(multiplicative_order(3, 13), Some(3));
        assert_eq!(multiplicative_order(5, 12), Some(2));
        assert_eq!(multiplicative_order(7, 1), Some(1));
        assert_eq!(multiplicative_order(3, 6), None);
        assert_eq!([3, 5, 7, 13, 17].map(primitive_root), [2, 2, 3, 2, 3]);
    }

    #[test]
    fn roots_and_parts() {
        assert_eq!(exact_root(729, 2), Some(27));
        assert_eq!(exact_root(343, 3), Some(7));
        assert_eq!(exact_root(50, 2), None);
        assert_eq!(odd_part(24), 3);
        assert_eq!(isqrt(8788 / 27), 18);
        assert_eq!(prime_factors(728), vec![2, 7, 13]);
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
    }
}

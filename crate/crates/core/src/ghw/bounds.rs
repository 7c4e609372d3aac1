use serde::Serialize;

/// Singleton, Plotkin-like and Griesmer-like bounds on `d_r` of an
/// `[n, k]` code over `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GhwBounds {
    pub singleton_lo: u64,
    pub singleton_hi: u64,
    pub plotkin: u64,
    pub griesmer: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundChecks {
    pub singleton: bool,
    pub plotkin: bool,
    pub griesmer: bool,
    pub plotkin_attained: bool,
    pub griesmer_attained: bool,
}

impl BoundChecks {
    pub fn all_hold(&self) -> bool {
        self.singleton && self.plotkin && self.griesmer
    }
}

pub fn ghw_bounds(n: u64, k: u32, p: u64, d1: u64, r: u32) -> GhwBounds {
    assert!(1 <= r && r <= k, "need 1 <= r <= k");
    let p = p as u128;
    let pk = p.pow(k);
    let plotkin = n as u128 * (p.pow(r) - 1) * p.pow(k - r) / (pk - 1);
    let griesmer = (0..r)
        .map(|i| (d1 as u128).div_ceil(p.pow(i)))
        .sum::<u128>();
    GhwBounds {
        singleton_lo: r as u64,
        singleton_hi: n - k as u64 + r as u64,
        plotkin: plotkin as u64,
        griesmer: griesmer as u64,
    }
}

impl GhwBounds {
    pub fn check(&self, d: u64) -> BoundChecks {
        BoundChecks {
            singleton: self.singleton_lo <= d && d <= self.singleton_hi,
            plotkin: d <= self.plotkin,
            griesmer: d >= self.griesmer,
            plotkin_attained: d == self.plotkin,
            griesmer_attained: d == self.griesmer,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q9_full_group() {
        let b = ghw_bounds(8, 2, 3, 6, 1);
        assert_eq!((b.plotkin, b.griesmer), (6, 6));
        let c = b.check(6);
        assert!(c.all_hold() && c.plotkin_attained && c.griesmer_attained);
        let b = ghw_bounds(8, 2, 3, 6, 2);
        assert_eq!((b.singleton_hi, b.griesmer, b.plotkin), (8, 8, 8));
    }

    #[test]
    fn plotkin_at_full_dimension_is_n() {
        for (n, k, p) in [(13, 3, 3), (12, 2, 5), (121, 5, 3)] {
            assert_eq!(ghw_bounds(n, k, p, 1, k).plotkin, n);
        }
    }

    #[test]
    fn violations_detected() {
        let b = ghw_bounds(8, 2, 3, 6, 1);
        assert!(!b.check(7).plotkin);
        assert!(!b.check(5).griesmer);
        assert!(!b.check(0).singleton);
    }
}

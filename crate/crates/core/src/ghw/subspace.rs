//! Enumeration of the `r`-dimensional subspaces of `F_p^m` as reduced
//! row-echelon matrices.
//!
//! Subspaces are grouped by pivot pattern (pivot column sets in
//! lexicographic order); inside a group the free entries, read row by row,
//! are the digits of a base-`p` counter with the first entry most
//! significant. Rows are packed like field elements: column `j` is the
//! coefficient of `x^j`.

use serde::Serialize;

use crate::field::{FieldCtx, FieldElement};

/// Number of `r`-dimensional subspaces of `F_p^m`.
pub fn gaussian_binomial(m: u32, r: u32, p: u64) -> u128 {
    assert!(r <= m, "r must not exceed m");
    let p = p as u128;
    // [m, i+1] = [m, i] (p^{m-i} - 1) / (p^{i+1} - 1) stays integral.
    (0..r).fold(1u128, |acc, i| {
        acc * (p.pow(m - i) - 1) / (p.pow(i + 1) - 1)
    })
}

/// An `r`-dimensional subspace given by its RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Subspace {
    pub r: u32,
    /// RREF rows, packed as field elements.
    pub basis: Vec<FieldElement>,
}

impl Subspace {
    pub fn new(basis: Vec<FieldElement>) -> Self {
        Subspace {
            r: basis.len() as u32,
            basis,
        }
    }

    /// Basis rows as coordinate vectors.
    pub fn rows(&self, ctx: &FieldCtx) -> Vec<Vec<u32>> {
        self.basis.iter().map(|&b| ctx.coeffs(b)).collect()
    }

    /// Every nonzero element of the row space.
    pub fn nonzero_elements(&self, ctx: &FieldCtx) -> Vec<FieldElement> {
        span_nonzero(ctx, &self.basis)
    }
}

/// Nonzero elements of the `F_p`-span of `basis` (assumed independent).
pub fn span_nonzero(ctx: &FieldCtx, basis: &[FieldElement]) -> Vec<FieldElement> {
    let p = ctx.p();
    let mut span = vec![FieldElement::ZERO];
    for &b in basis {
        let multiples: Vec<FieldElement> = (1..p).map(|c| ctx.scale(c, b)).collect();
        let mut next = Vec::with_capacity(span.len() * p as usize);
        next.extend_from_slice(&span);
        for &s in &span {
            for &mb in &multiples {
                next.push(ctx.add(s, mb));
            }
        }
        span = next;
    }
    span.remove(0);
    span
}

/// One pivot-column pattern and its free positions.
#[derive(Clone, Debug)]
pub struct PivotPattern {
    pub pivots: Vec<u32>,
    /// `(row, column)` of each free entry, row-major.
    free: Vec<(usize, u32)>,
    /// `p^{#free}`.
    pub count: u128,
}

/// All pivot patterns for `r` of `m` columns, in lexicographic order.
pub fn pivot_patterns(m: u32, r: u32, p: u64) -> Vec<PivotPattern> {
    let mut out = Vec::new();
    let mut pivots: Vec<u32> = (0..r).collect();
    loop {
        let mut free = Vec::new();
        for (row, &c) in pivots.iter().enumerate() {
            for col in c + 1..m {
                if !pivots.contains(&col) {
                    free.push((row, col));
                }
            }
        }
        out.push(PivotPattern {
            count: (p as u128).pow(free.len() as u32),
            pivots: pivots.clone(),
            free,
        });
        // next combination
        let mut i = r as usize;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < m - r + i as u32 {
                pivots[i] += 1;
                for j in i + 1..r as usize {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Walks the RREF matrices of one pivot pattern, updating packed rows in
/// place as the free-entry counter advances.
pub struct PatternCursor<'a> {
    pattern: &'a PivotPattern,
    p: u32,
    digits: Vec<u32>,
    place: Vec<u32>,
    rows: Vec<u32>,
}

impl<'a> PatternCursor<'a> {
    /// Cursor positioned at `counter` (`< pattern.count`).
    pub fn new(pattern: &'a PivotPattern, p: u32, counter: u128) -> Self {
        let nfree = pattern.free.len();
        let mut digits = vec![0u32; nfree];
        let mut c = counter;
        for d in digits.iter_mut().rev() {
            *d = (c % p as u128) as u32;
            c /= p as u128;
        }
        let place: Vec<u32> = pattern.free.iter().map(|&(_, col)| p.pow(col)).collect();
        let mut rows: Vec<u32> = pattern.pivots.iter().map(|&c| p.pow(c)).collect();
        for (k, &(row, _)) in pattern.free.iter().enumerate() {
            rows[row] += digits[k] * place[k];
        }
        PatternCursor {
            pattern,
            p,
            digits,
            place,
            rows,
        }
    }

    /// Packed RREF rows at the current position.
    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Moves to the next counter value; returns false after wrapping.
    pub fn advance(&mut self) -> bool {
        for k in (0..self.digits.len()).rev() {
            let row = self.pattern.free[k].0;
            if self.digits[k] + 1 < self.p {
                self.digits[k] += 1;
                self.rows[row] += self.place[k];
                return true;
            }
            self.rows[row] -= self.digits[k] * self.place[k];
            self.digits[k] = 0;
        }
        false
    }
}

/// A contiguous slice of one pattern's counter range.
#[derive(Clone, Copy, Debug)]
pub struct WorkUnit {
    pub pattern: usize,
    pub start: u128,
    pub len: u128,
    /// Position of the first subspace in global enumeration order.
    pub ordinal: u128,
}

/// Splits the enumeration into units of at most `chunk` subspaces, in
/// enumeration order.
pub fn work_units(patterns: &[PivotPattern], chunk: u128) -> Vec<WorkUnit> {
    let mut out = Vec::new();
    let mut ordinal = 0;
    for (idx, pat) in patterns.iter().enumerate() {
        let mut start = 0;
        while start < pat.count {
            let len = chunk.min(pat.count - start);
            out.push(WorkUnit {
                pattern: idx,
                start,
                len,
                ordinal,
            });
            start += len;
            ordinal += len;
        }
    }
    out
}

/// Calls `f` with the packed RREF rows of every `r`-dimensional subspace
/// of `F_p^m`, in enumeration order.
pub fn for_each_subspace(m: u32, r: u32, p: u32, mut f: impl FnMut(&[u32])) {
    for pat in pivot_patterns(m, r, p as u64) {
        let mut cur = PatternCursor::new(&pat, p, 0);
        loop {
            f(cur.rows());
            if !cur.advance() {
                break;
            }
        }
    }
}

/// Iterator over all `r`-dimensional subspaces of `F_p^m`.
pub struct SubspaceIter {
    p: u32,
    patterns: Vec<PivotPattern>,
    pattern: usize,
    counter: u128,
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        while self.pattern < self.patterns.len() {
            let pat = &self.patterns[self.pattern];
            if self.counter < pat.count {
                let cur = PatternCursor::new(pat, self.p, self.counter);
                self.counter += 1;
                return Some(Subspace::new(
                    cur.rows()
                        .iter()
                        .map(|&b| FieldElement::from_packed(b))
                        .collect(),
                ));
            }
            self.pattern += 1;
            self.counter = 0;
        }
        None
    }
}

pub fn subspace_iter(m: u32, r: u32, p: u32) -> SubspaceIter {
    assert!(r <= m, "r must not exceed m");
    SubspaceIter {
        p,
        patterns: pivot_patterns(m, r, p as u64),
        pattern: 0,
        counter: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(gaussian_binomial(5, 0, 3), 1);
        assert_eq!(gaussian_binomial(2, 1, 3), 4);
        assert_eq!(gaussian_binomial(4, 2, 3), 130);
        assert_eq!(gaussian_binomial(6, 3, 3), 33880);
        assert_eq!(gaussian_binomial(3, 3, 7), 1);
    }

    #[test]
    fn lines_in_plane() {
        let subs: Vec<Vec<u32>> = subspace_iter(2, 1, 3)
            .map(|s| s.basis.iter().map(|b| b.index()).collect())
            .collect();
        // (1,0), (1,1), (1,2), (0,1) packed as c0 + 3 c1
        assert_eq!(subs, vec![vec![1], vec![4], vec![7], vec![3]]);
    }

    #[test]
    fn full_space_is_identity() {
        let subs: Vec<Subspace> = subspace_iter(3, 3, 5).collect();
        assert_eq!(subs.len(), 1);
        let idx: Vec<u32> = subs[0].basis.iter().map(|b| b.index()).collect();
        assert_eq!(idx, vec![1, 5, 25]);
    }

    #[test]
    fn zero_dimensional() {
        assert_eq!(subspace_iter(3, 0, 3).count(), 1);
    }

    #[test]
    fn cursor_matches_direct_decoding() {
        for pat in pivot_patterns(4, 2, 3) {
            let mut cur = PatternCursor::new(&pat, 3, 0);
            let mut n = 0u128;
            loop {
                assert_eq!(cur.rows(), PatternCursor::new(&pat, 3, n).rows());
                n += 1;
                if !cur.advance() {
                    break;
                }
            }
            assert_eq!(n, pat.count);
        }
    }

    #[test]
    fn work_units_cover_range() {
        let pats = pivot_patterns(4, 2, 3);
        let units = work_units(&pats, 7);
        let total: u128 = units.iter().map(|u| u.len).sum();
        assert_eq!(total, 130);
        assert_eq!(units.last().map(|u| u.ordinal + u.len), Some(130));
    }
}

//! Splitting-type combinatorics: Ext^1 counts, codimension formulas,
//! polygonal lines, dominance and closure of strata, balancedness.

use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SplittingError {
    #[error("parts must be non-negative")]
    NegativePart,
    #[error("rank must be positive")]
    EmptyType,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(i64, i64),
    #[error("invalid pair: need n >= 4 and 2 <= r <= n-2, got n={n}, r={r}")]
    InvalidShape { n: usize, r: usize },
    #[error("sub and quot degrees differ: {0} vs {1}")]
    UnequalDegrees(i64, i64),
    #[error("total degree must be positive")]
    ZeroDegree,
}

/// The multiset of twists of a bundle on P^1. Canonical storage is
/// non-decreasing order; `parts_desc` gives the non-increasing view.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SplittingType {
    parts: Vec<i64>,
}

impl SplittingType {
    pub fn new(parts: impl IntoIterator<Item = i64>) -> Result<Self, SplittingError> {
        let mut parts: Vec<i64> = parts.into_iter().collect();
        if parts.is_empty() {
            return Err(SplittingError::EmptyType);
        }
        if parts.iter().any(|&p| p < 0) {
            return Err(SplittingError::NegativePart);
        }
        parts.sort_unstable();
        Ok(SplittingType { parts })
    }

    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    pub fn degree(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// Non-decreasing view.
    pub fn parts_asc(&self) -> &[i64] {
        &self.parts
    }

    /// Non-increasing view.
    pub fn parts_desc(&self) -> Vec<i64> {
        let mut v = self.parts.clone();
        v.reverse();
        v
    }

    pub fn is_balanced(&self) -> bool {
        self.parts[self.parts.len() - 1] - self.parts[0] <= 1
    }

    /// `ext^1` of the bundle with itself: sum over ordered pairs of
    /// `max{d_i - d_j - 1, 0}`.
    pub fn ext1_self(&self) -> u64 {
        let mut total = 0u64;
        for &di in &self.parts {
            for &dj in &self.parts {
                total += (di - dj - 1).max(0) as u64;
            }
        }
        total
    }

    pub fn polygonal(&self) -> PolygonalLine {
        let mut sums = Vec::with_capacity(self.parts.len());
        let mut acc = 0i64;
        for &p in self.parts.iter().rev() {
            acc += p;
            sums.push(acc);
        }
        PolygonalLine { partial_sums: sums }
    }
}

impl fmt::Display for SplittingType {
    /// Comma-separated, non-decreasing, e.g. `1,5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

/// Cumulative sums of the non-increasing rearrangement of a splitting type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolygonalLine {
    partial_sums: Vec<i64>,
}

impl PolygonalLine {
    pub fn partial_sums(&self) -> &[i64] {
        &self.partial_sums
    }

    /// True iff every partial sum of `self` is >= the corresponding one of
    /// `other`. Requires equal length and equal final entry.
    pub fn dominates(&self, other: &PolygonalLine) -> Result<bool, SplittingError> {
        if self.partial_sums.len() != other.partial_sums.len() {
            return Err(SplittingError::RankMismatch(
                self.partial_sums.len(),
                other.partial_sums.len(),
            ));
        }
        let (sf, of) = (
            *self.partial_sums.last().unwrap(),
            *other.partial_sums.last().unwrap(),
        );
        if sf != of {
            return Err(SplittingError::DegreeMismatch(sf, of));
        }
        Ok(self
            .partial_sums
            .iter()
            .zip(&other.partial_sums)
            .all(|(a, b)| a >= b))
    }
}

/// The pair of splitting types cut out by a morphism to G(r,n): `sub` is the
/// type of the dual restricted sub-bundle (rank r), `quot` of the restricted
/// quotient (rank n-r). Both sum to the common degree e.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingPair {
    pub n: usize,
    pub r: usize,
    pub sub: SplittingType,
    pub quot: SplittingType,
}

impl SplittingPair {
    pub fn new(
        n: usize,
        sub: SplittingType,
        quot: SplittingType,
    ) -> Result<Self, SplittingError> {
        let r = sub.rank();
        if n < 4 || r < 2 || r > n - 2 {
            return Err(SplittingError::InvalidShape { n, r });
        }
        if quot.rank() != n - r {
            return Err(SplittingError::RankMismatch(quot.rank(), n - r));
        }
        if sub.degree() != quot.degree() {
            return Err(SplittingError::UnequalDegrees(sub.degree(), quot.degree()));
        }
        if sub.degree() <= 0 {
            return Err(SplittingError::ZeroDegree);
        }
        Ok(SplittingPair { n, r, sub, quot })
    }

    pub fn degree(&self) -> i64 {
        self.sub.degree()
    }

    /// The pair for the dual problem: morphisms to G(n-r, n) with the roles
    /// of sub and quot exchanged.
    pub fn swapped(&self) -> SplittingPair {
        SplittingPair {
            n: self.n,
            r: self.n - self.r,
            sub: self.quot.clone(),
            quot: self.sub.clone(),
        }
    }

    /// Codimension of the intersection stratum: the sum of the two Ext^1
    /// self-extension counts.
    pub fn codim_intersection(&self) -> u64 {
        self.sub.ext1_self() + self.quot.ext1_self()
    }
}

/// Dimension of the space of degree-e morphisms from P^1 to G(r,n):
/// `r(n-r) + n*e`.
pub fn dim_mor(r: usize, n: usize, e: i64) -> i64 {
    (r * (n - r)) as i64 + n as i64 * e
}

/// Whether the stratum of `fine` lies in the closure of the stratum of
/// `coarse`, i.e. the polygonal line of `coarse` is dominated by that of
/// `fine`.
pub fn closure_contains(
    coarse: &SplittingType,
    fine: &SplittingType,
) -> Result<bool, SplittingError> {
    fine.polygonal().dominates(&coarse.polygonal())
}

/// All splitting types of the given rank and degree, i.e. partitions of
/// `degree` into `rank` non-negative parts, in non-decreasing order.
pub fn enumerate_types(rank: usize, degree: i64) -> Vec<SplittingType> {
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(rank);
    fn rec(out: &mut Vec<SplittingType>, parts: &mut Vec<i64>, rank: usize, left: i64, min: i64) {
        if parts.len() == rank {
            if left == 0 {
                out.push(SplittingType::new(parts.iter().copied()).unwrap());
            }
            return;
        }
        let remaining_slots = (rank - parts.len()) as i64;
        for p in min..=left {
            // the remaining parts are all >= p, so need left - p >= p*(slots-1)
            if left - p < p * (remaining_slots - 1) {
                break;
            }
            parts.push(p);
            rec(out, parts, rank, left - p, p);
            parts.pop();
        }
    }
    rec(&mut out, &mut parts, rank, degree, 0);
    out
}

/// All valid splitting pairs for G(r,n) of degree e.
pub fn enumerate_pairs(r: usize, n: usize, e: i64) -> Vec<SplittingPair> {
    let mut out = Vec::new();
    for sub in enumerate_types(r, e) {
        for quot in enumerate_types(n - r, e) {
            out.push(SplittingPair::new(n, sub.clone(), quot).unwrap());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn st(parts: &[i64]) -> SplittingType {
        SplittingType::new(parts.iter().copied()).unwrap()
    }

    #[test]
    fn ext1_examples() {
        assert_eq!(st(&[1, 5]).ext1_self(), 3);
        assert_eq!(st(&[2, 4]).ext1_self(), 1);
        assert_eq!(st(&[3, 3]).ext1_self(), 0);
    }

    #[test]
    fn codim_examples() {
        let p = SplittingPair::new(4, st(&[1, 5]), st(&[2, 4])).unwrap();
        assert_eq!(p.codim_intersection(), 4);
        let p = SplittingPair::new(4, st(&[3, 3]), st(&[3, 3])).unwrap();
        assert_eq!(p.codim_intersection(), 0);
        let p = SplittingPair::new(4, st(&[0, 6]), st(&[2, 4])).unwrap();
        assert_eq!(p.codim_intersection(), 6);
    }

    #[test]
    fn dim_mor_examples() {
        assert_eq!(dim_mor(2, 4, 6), 28);
        assert_eq!(dim_mor(2, 4, 1), 8);
        assert_eq!(dim_mor(3, 5, 12), 66);
    }

    #[test]
    fn polygonal_and_dominance() {
        assert_eq!(st(&[2, 4]).polygonal().partial_sums(), &[4, 6]);
        let p15 = st(&[1, 5]).polygonal();
        let p24 = st(&[2, 4]).polygonal();
        assert!(p15.dominates(&p24).unwrap());
        assert!(!p24.dominates(&p15).unwrap());
    }

    #[test]
    fn dominance_degree_mismatch_is_error() {
        let a = st(&[1, 5]).polygonal();
        let b = st(&[1, 4]).polygonal();
        assert!(a.dominates(&b).is_err());
        let c = st(&[1, 2, 3]).polygonal();
        assert!(a.dominates(&c).is_err());
    }

    #[test]
    fn closure_examples() {
        assert!(closure_contains(&st(&[2, 4]), &st(&[1, 5])).unwrap());
        assert!(!closure_contains(&st(&[1, 5]), &st(&[2, 4])).unwrap());
        for t in enumerate_types(3, 5) {
            assert!(closure_contains(&t, &t).unwrap());
        }
    }

    #[test]
    fn balanced_examples() {
        assert!(st(&[3, 3]).is_balanced());
        assert!(st(&[2, 3, 3]).is_balanced());
        assert!(!st(&[1, 5]).is_balanced());
    }

    #[test]
    fn enumerate_types_counts() {
        // partitions of 6 into at most 2 parts: 6, 5+1, 4+2, 3+3
        assert_eq!(enumerate_types(2, 6).len(), 4);
        assert_eq!(enumerate_types(3, 0).len(), 1);
        for t in enumerate_types(4, 6) {
            assert_eq!(t.rank(), 4);
            assert_eq!(t.degree(), 6);
        }
    }

    /// Independent cohomology oracle: ext1 = sum over ordered pairs of
    /// h^1(O(d_i - d_j)) with h^1(O(d)) = max{-d-1, 0}.
    fn ext1_h1_oracle(t: &SplittingType) -> u64 {
        let h1 = |d: i64| (-d - 1).max(0) as u64;
        let mut total = 0;
        for &di in t.parts_asc() {
            for &dj in t.parts_asc() {
                total += h1(dj - di);
            }
        }
        total
    }

    proptest! {
        #[test]
        fn ext1_matches_h1_oracle(parts in proptest::collection::vec(0i64..12, 1..7)) {
            let t = SplittingType::new(parts).unwrap();
            prop_assert_eq!(t.ext1_self(), ext1_h1_oracle(&t));
        }

        #[test]
        fn ext1_zero_iff_balanced(parts in proptest::collection::vec(0i64..9, 1..6)) {
            let t = SplittingType::new(parts).unwrap();
            prop_assert_eq!(t.ext1_self() == 0, t.is_balanced());
        }

        #[test]
        fn dominates_matches_prefix_brute_force(
            a in proptest::collection::vec(0i64..8, 4),
            mut b in proptest::collection::vec(0i64..8, 4),
        ) {
            // force equal sums by patching the last entry when possible
            let sa: i64 = a.iter().sum();
            let sb: i64 = b.iter().take(3).sum();
            prop_assume!(sa >= sb);
            b[3] = sa - sb;
            let ta = SplittingType::new(a).unwrap();
            let tb = SplittingType::new(b).unwrap();
            let pa = ta.polygonal();
            let pb = tb.polygonal();
            let (da, db) = (ta.parts_desc(), tb.parts_desc());
            let brute = (1..=4).all(|k| {
                da.iter().take(k).sum::<i64>() >= db.iter().take(k).sum::<i64>()
            });
            prop_assert_eq!(pa.dominates(&pb).unwrap(), brute);
        }
    }

    #[test]
    fn closure_is_partial_order_small() {
        for e in 1..=6i64 {
            for rank in 2..=4usize {
                let types = enumerate_types(rank, e);
                for a in &types {
                    assert!(closure_contains(a, a).unwrap());
                    for b in &types {
                        let ab = closure_contains(a, b).unwrap();
                        let ba = closure_contains(b, a).unwrap();
                        if ab && ba {
                            assert_eq!(a, b);
                        }
                        for c in &types {
                            if ab && closure_contains(b, c).unwrap() {
                                assert!(closure_contains(a, c).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }
}

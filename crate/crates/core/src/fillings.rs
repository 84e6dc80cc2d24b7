//! Fillings of a tangent-bundle splitting type: enumeration, derived factor
//! splittings, minimality under dominance, and component-count bounds.

use crate::splitting::{SplittingType, SplittingError};
use itertools::Itertools;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FillingError {
    #[error("grid shape must be {r} x {nr}")]
    ShapeMismatch { r: usize, nr: usize },
    #[error("multiset must have r(n-r) = {0} entries")]
    WrongCardinality(usize),
    #[error("invalid tangent shape: n={n}, r={r}")]
    InvalidShape { n: usize, r: usize },
    #[error(transparent)]
    Splitting(#[from] SplittingError),
    #[error("filling not part of the supplied enumeration")]
    NotInEnumeration,
}

/// A splitting type of the restricted tangent bundle: r(n-r) non-negative
/// integers, kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TangentSplitting {
    pub r: usize,
    pub n: usize,
    parts: Vec<i64>,
}

impl TangentSplitting {
    pub fn new(r: usize, n: usize, parts: impl IntoIterator<Item = i64>) -> Result<Self, FillingError> {
        if n < 4 || r < 2 || r > n - 2 {
            return Err(FillingError::InvalidShape { n, r });
        }
        let mut parts: Vec<i64> = parts.into_iter().collect();
        if parts.len() != r * (n - r) {
            return Err(FillingError::WrongCardinality(r * (n - r)));
        }
        if parts.iter().any(|&p| p < 0) {
            return Err(FillingError::Splitting(SplittingError::NegativePart));
        }
        parts.sort_unstable();
        Ok(TangentSplitting { r, n, parts })
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn is_balanced(&self) -> bool {
        self.parts[self.parts.len() - 1] - self.parts[0] <= 1
    }
}

/// An r x (n-r) grid satisfying the filling conditions, together with the
/// derived factor splittings when the derivation lands on non-negative
/// integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Filling {
    pub grid: Vec<Vec<i64>>,
    pub derived: Option<(SplittingType, SplittingType)>,
    pub realizable: bool,
}

/// The three defining conditions plus multiset agreement: rows and columns
/// weakly increase, row differences are column-independent and column
/// differences row-independent, and the entries are exactly the multiset.
pub fn is_filling(grid: &[Vec<i64>], c: &TangentSplitting) -> Result<bool, FillingError> {
    let (r, nr) = (c.r, c.n - c.r);
    if grid.len() != r || grid.iter().any(|row| row.len() != nr) {
        return Err(FillingError::ShapeMismatch { r, nr });
    }
    for i in 0..r {
        for j in 0..nr {
            if i + 1 < r && grid[i][j] > grid[i + 1][j] {
                return Ok(false);
            }
            if j + 1 < nr && grid[i][j] > grid[i][j + 1] {
                return Ok(false);
            }
        }
    }
    for i in 0..r.saturating_sub(1) {
        let d = grid[i + 1][0] - grid[i][0];
        if (1..nr).any(|j| grid[i + 1][j] - grid[i][j] != d) {
            return Ok(false);
        }
    }
    for j in 0..nr.saturating_sub(1) {
        let d = grid[0][j + 1] - grid[0][j];
        if (1..r).any(|i| grid[i][j + 1] - grid[i][j] != d) {
            return Ok(false);
        }
    }
    let mut entries: Vec<i64> = grid.iter().flatten().copied().collect();
    entries.sort_unstable();
    Ok(entries == c.parts)
}

/// Derives the factor splittings: e = (sum of entries)/n, then
/// a_i = (row sum - e)/(n-r) and b_j = (column sum - e)/r. Returns None
/// when any value is negative or non-integral (the grid is a combinatorial
/// filling but not realizable).
pub fn derive_splittings(
    grid: &[Vec<i64>],
    r: usize,
    n: usize,
) -> Option<(SplittingType, SplittingType)> {
    let nr = n - r;
    let total: i64 = grid.iter().flatten().sum();
    if total % n as i64 != 0 {
        return None;
    }
    let e = total / n as i64;
    let mut a = Vec::with_capacity(r);
    for row in grid {
        let s: i64 = row.iter().sum();
        let num = s - e;
        if num % nr as i64 != 0 || num < 0 {
            return None;
        }
        a.push(num / nr as i64);
    }
    let mut b = Vec::with_capacity(nr);
    for j in 0..nr {
        let s: i64 = grid.iter().map(|row| row[j]).sum();
        let num = s - e;
        if num % r as i64 != 0 || num < 0 {
            return None;
        }
        b.push(num / r as i64);
    }
    let sub = SplittingType::new(a).ok()?;
    let quot = SplittingType::new(b).ok()?;
    if sub.degree() != e || quot.degree() != e {
        return None;
    }
    Some((sub, quot))
}

fn make_filling(grid: Vec<Vec<i64>>, r: usize, n: usize) -> Filling {
    let derived = derive_splittings(&grid, r, n);
    Filling {
        realizable: derived.is_some(),
        derived,
        grid,
    }
}

fn multiset(vals: &[i64]) -> BTreeMap<i64, usize> {
    let mut m = BTreeMap::new();
    for &v in vals {
        *m.entry(v).or_insert(0) += 1;
    }
    m
}

/// All distinct fillings of the multiset, sorted by grid. Every filling has
/// grid(1,1) = min and grid(r, n-r) = max, and is determined by its first
/// row: the column offsets fix each later row from the smallest value not
/// yet used.
pub fn enumerate_fillings(c: &TangentSplitting) -> Vec<Filling> {
    let (r, nr) = (c.r, c.n - c.r);
    let lo = c.parts[0];
    let mut out: Vec<Vec<Vec<i64>>> = Vec::new();

    // candidate first rows: weakly increasing selections from the multiset
    // starting at the minimum
    let distinct: Vec<i64> = c.parts.iter().copied().dedup().collect();
    let mut seen_offsets: Vec<Vec<i64>> = Vec::new();
    for tail in distinct.iter().copied().combinations_with_replacement(nr - 1) {
        let mut first_row = vec![lo];
        first_row.extend(tail);
        if first_row.windows(2).any(|w| w[0] > w[1]) {
            continue;
        }
        let offsets: Vec<i64> = first_row.iter().map(|&v| v - lo).collect();
        if seen_offsets.contains(&offsets) {
            continue;
        }
        seen_offsets.push(offsets.clone());

        let mut remaining = multiset(&c.parts);
        let mut grid: Vec<Vec<i64>> = Vec::with_capacity(r);
        let mut ok = true;
        for _ in 0..r {
            let Some((&base, _)) = remaining.iter().next() else {
                ok = false;
                break;
            };
            let row: Vec<i64> = offsets.iter().map(|&o| base + o).collect();
            for &v in &row {
                match remaining.get_mut(&v) {
                    Some(cnt) if *cnt > 0 => {
                        *cnt -= 1;
                        if *cnt == 0 {
                            remaining.remove(&v);
                        }
                    }
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                break;
            }
            grid.push(row);
        }
        if ok && remaining.is_empty() && is_filling(&grid, c).unwrap_or(false) {
            if !out.contains(&grid) {
                out.push(grid);
            }
        }
    }
    out.sort();
    out.into_iter().map(|g| make_filling(g, c.r, c.n)).collect()
}

/// Minimality under dominance: no other realizable filling in the
/// enumeration dominates this one's pair of polygonal lines with at least
/// one strict inequality.
pub fn is_minimal(f: &Filling, all: &[Filling]) -> Result<bool, FillingError> {
    if !all.contains(f) {
        return Err(FillingError::NotInEnumeration);
    }
    let Some((sub, quot)) = &f.derived else {
        return Ok(false);
    };
    let (ps, pq) = (sub.polygonal(), quot.polygonal());
    for g in all {
        if g == f {
            continue;
        }
        let Some((gs, gq)) = &g.derived else { continue };
        let ds = gs.polygonal().dominates(&ps)?;
        let dq = gq.polygonal().dominates(&pq)?;
        let strict = gs != sub || gq != quot;
        if ds && dq && strict {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of minimal realizable fillings: a lower bound for the number of
/// irreducible components of the tangent-splitting locus.
pub fn component_lower_bound(c: &TangentSplitting) -> usize {
    let all = enumerate_fillings(c);
    all.iter()
        .filter(|f| f.realizable && is_minimal(f, &all).unwrap_or(false))
        .count()
}

/// Crude upper bound on the number of fillings: C(r(n-r)-2, n-r-1).
pub fn filling_upper_bound(r: usize, n: usize) -> u128 {
    binomial((r * (n - r) - 2) as u128, (n - r - 1) as u128)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// For a balanced tangent splitting, every realizable filling must derive
/// balanced factors; a false return is a theorem violation.
pub fn balanced_tangent_check(c: &TangentSplitting) -> bool {
    debug_assert!(c.is_balanced());
    enumerate_fillings(c)
        .iter()
        .filter_map(|f| f.derived.as_ref())
        .all(|(s, q)| s.is_balanced() && q.is_balanced())
}

/// Brute-force oracle: every arrangement of the multiset into the grid,
/// filtered by the filling conditions. Only sensible for r(n-r) <= 9.
pub fn enumerate_fillings_brute_force(c: &TangentSplitting) -> Vec<Filling> {
    let (r, nr) = (c.r, c.n - c.r);
    let mut grids: Vec<Vec<Vec<i64>>> = Vec::new();
    for perm in c.parts.iter().copied().permutations(r * nr) {
        let grid: Vec<Vec<i64>> = perm.chunks(nr).map(|ch| ch.to_vec()).collect();
        if is_filling(&grid, c).unwrap() && !grids.contains(&grid) {
            grids.push(grid);
        }
    }
    grids.sort();
    grids.into_iter().map(|g| make_filling(g, r, c.n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(r: usize, n: usize, parts: &[i64]) -> TangentSplitting {
        TangentSplitting::new(r, n, parts.iter().copied()).unwrap()
    }

    #[test]
    fn is_filling_examples() {
        let c = ts(2, 4, &[3, 5, 7, 9]);
        assert!(is_filling(&[vec![3, 5], vec![7, 9]], &c).unwrap());
        assert!(is_filling(&[vec![3, 7], vec![5, 9]], &c).unwrap());
        assert!(!is_filling(&[vec![3, 9], vec![5, 7]], &c).unwrap());
    }

    #[test]
    fn derive_examples() {
        let (a, b) = derive_splittings(&[vec![3, 5], vec![7, 9]], 2, 4).unwrap();
        assert_eq!(a.parts_asc(), &[1, 5]);
        assert_eq!(b.parts_asc(), &[2, 4]);

        let (a, b) = derive_splittings(&[vec![3, 7], vec![5, 9]], 2, 4).unwrap();
        assert_eq!(a.parts_asc(), &[2, 4]);
        assert_eq!(b.parts_asc(), &[1, 5]);

        // half-integer a values
        assert!(derive_splittings(
            &[vec![3, 4], vec![3, 4], vec![5, 6], vec![5, 6]],
            4,
            6
        )
        .is_none());
    }

    #[test]
    fn enumerate_g24_example() {
        let c = ts(2, 4, &[3, 5, 7, 9]);
        let fillings = enumerate_fillings(&c);
        assert_eq!(fillings.len(), 2);
        assert_eq!(fillings[0].grid, vec![vec![3, 5], vec![7, 9]]);
        assert_eq!(fillings[1].grid, vec![vec![3, 7], vec![5, 9]]);
        assert!(fillings.iter().all(|f| f.realizable));
        assert!(fillings.iter().all(|f| is_minimal(f, &fillings).unwrap()));
        assert_eq!(component_lower_bound(&c), 2);
    }

    #[test]
    fn enumerate_g35_arithmetic_progression() {
        let c = ts(3, 5, &[5, 7, 9, 11, 13, 15]);
        let fillings = enumerate_fillings(&c);
        assert_eq!(fillings.len(), 2);
        assert_eq!(fillings[0].grid, vec![vec![5, 7], vec![9, 11], vec![13, 15]]);
        assert_eq!(fillings[1].grid, vec![vec![5, 11], vec![7, 13], vec![9, 15]]);
        let (a0, b0) = fillings[0].derived.clone().unwrap();
        assert_eq!(a0.parts_asc(), &[0, 4, 8]);
        assert_eq!(b0.parts_asc(), &[5, 7]);
        let (a1, b1) = fillings[1].derived.clone().unwrap();
        assert_eq!(a1.parts_asc(), &[2, 4, 6]);
        assert_eq!(b1.parts_asc(), &[3, 9]);
        assert!(fillings.iter().all(|f| is_minimal(f, &fillings).unwrap()));
    }

    #[test]
    fn enumerate_g46_equal_gap_family() {
        let c = ts(4, 6, &[3, 3, 4, 4, 5, 5, 6, 6]);
        let fillings = enumerate_fillings(&c);
        assert_eq!(fillings.len(), 3);
        let grids: Vec<_> = fillings.iter().map(|f| f.grid.clone()).collect();
        assert!(grids.contains(&vec![vec![3, 3], vec![4, 4], vec![5, 5], vec![6, 6]]));
        assert!(grids.contains(&vec![vec![3, 4], vec![3, 4], vec![5, 6], vec![5, 6]]));
        assert!(grids.contains(&vec![vec![3, 5], vec![3, 5], vec![4, 6], vec![4, 6]]));
        // the middle displayed grid fails integrality for these values
        let middle = fillings
            .iter()
            .find(|f| f.grid == vec![vec![3, 4], vec![3, 4], vec![5, 6], vec![5, 6]])
            .unwrap();
        assert!(!middle.realizable);
    }

    #[test]
    fn singleton_filling_is_minimal() {
        let c = ts(2, 4, &[2, 2, 2, 2]);
        let fillings = enumerate_fillings(&c);
        assert_eq!(fillings.len(), 1);
        assert!(is_minimal(&fillings[0], &fillings).unwrap());
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(filling_upper_bound(2, 4), 2);
        assert_eq!(filling_upper_bound(3, 5), 4);
    }

    #[test]
    fn balanced_tangent_examples() {
        assert!(balanced_tangent_check(&ts(2, 4, &[2, 2, 2, 2])));
        assert!(balanced_tangent_check(&ts(3, 5, &[2, 2, 2, 3, 3, 3])));
        assert!(balanced_tangent_check(&ts(4, 6, &[1; 8])));
    }

    #[test]
    fn brute_force_agrees_small() {
        for c in [
            ts(2, 4, &[3, 5, 7, 9]),
            ts(2, 4, &[0, 1, 2, 3]),
            ts(2, 4, &[4, 4, 4, 4]),
            ts(3, 5, &[5, 7, 9, 11, 13, 15]),
            ts(3, 5, &[1, 2, 2, 3, 3, 4]),
            ts(4, 6, &[3, 3, 4, 4, 5, 5, 6, 6]),
        ] {
            let fast = enumerate_fillings(&c);
            let brute = enumerate_fillings_brute_force(&c);
            assert_eq!(fast, brute, "mismatch for {:?}", c);
        }
    }
}

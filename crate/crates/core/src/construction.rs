//! Explicit construction of the monomial matrices `u` (n x (n-r)) and
//! `v` (r x n) realizing the exact sequence
//! `0 -> (+) O(-b_j) -> O^n -> (+) O(a_i) -> 0`,
//! including the n = 4, r = 2 special case and dualization when n-r > r.

use crate::polyring::{HomPoly, Rational};
use crate::splitting::SplittingPair;
use num_traits::One;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("construction requires n-r <= r, got n={n}, r={r}")]
    NeedsDualization { n: usize, r: usize },
    #[error("special-case construction requires n=4, r=2, got n={n}, r={r}")]
    WrongShape { n: usize, r: usize },
    #[error("negative exponent ({dx}, {dy}) at entry ({row}, {col})")]
    NegativeExponent {
        row: usize,
        col: usize,
        dx: i64,
        dy: i64,
    },
    #[error("entry ({row}, {col}) written twice")]
    EntryConflict { row: usize, col: usize },
    #[error("entry ({row}, {col}) has degree {got}, ledger says {want}")]
    LedgerViolation {
        row: usize,
        col: usize,
        got: usize,
        want: usize,
    },
}

/// Clamped partial sums A(j) of the non-increasing a-parts and B(i) of the
/// non-decreasing b-parts, with A(r) = B(n-r) = e.
#[derive(Debug, Clone)]
pub struct PartialSums {
    a_desc: Vec<i64>,
    b_asc: Vec<i64>,
}

impl PartialSums {
    pub fn new(pair: &SplittingPair) -> Self {
        PartialSums {
            a_desc: pair.sub.parts_desc(),
            b_asc: pair.quot.parts_asc().to_vec(),
        }
    }

    pub fn a(&self, j: i64) -> i64 {
        let j = j.clamp(0, self.a_desc.len() as i64) as usize;
        self.a_desc[..j].iter().sum()
    }

    pub fn b(&self, i: i64) -> i64 {
        let i = i.clamp(0, self.b_asc.len() as i64) as usize;
        self.b_asc[..i].iter().sum()
    }

    pub fn s(&self, j: i64, i: i64) -> i64 {
        self.a(j) - self.b(i)
    }
}

/// Which branch of the interleaving the pair falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseFlag {
    A1GtB1,
    A1LeB1,
}

/// The recursive interleaving of the partial-sum sequences: `i_seq[l]` and
/// `j_seq[l]` up to the first index where `j` reaches r, the pivot `alpha`,
/// and the sign exponents `beta` (1-indexed as `beta[i-1]`).
#[derive(Debug, Clone, Serialize)]
pub struct InterleavingProfile {
    pub i_seq: Vec<usize>,
    pub j_seq: Vec<usize>,
    pub alpha: usize,
    pub beta: Vec<usize>,
    pub case_flag: CaseFlag,
}

/// Ordering validator: with n-r <= r and equal sums, A(2r-n+l) >= B(l) holds
/// for all 0 <= l <= n-r. Kept as a regression guard on inputs.
pub fn check_order(pair: &SplittingPair) -> bool {
    let (n, r) = (pair.n, pair.r);
    debug_assert!(n - r <= r);
    let ps = PartialSums::new(pair);
    (0..=(n - r) as i64).all(|l| ps.a(2 * r as i64 - n as i64 + l) >= ps.b(l))
}

/// The literal recursion: i_0 = 0, j_0 the largest j <= r with
/// A(j) <= B(1); then i_l the largest i <= n-r with B(i) <= A(j_{l-1}+1)
/// and j_l the largest j <= r with A(j) <= B(i_l+1). Stops at the first l
/// with j_l = r; alpha is that index minus one.
pub fn interleaving_profile(pair: &SplittingPair) -> InterleavingProfile {
    let (n, r) = (pair.n, pair.r);
    let nr = n - r;
    debug_assert!(nr <= r);
    let ps = PartialSums::new(pair);
    let largest_j = |bound: i64| -> usize {
        (0..=r).rev().find(|&j| ps.a(j as i64) <= bound).unwrap()
    };
    let largest_i = |bound: i64| -> usize {
        (0..=nr).rev().find(|&i| ps.b(i as i64) <= bound).unwrap()
    };

    let mut i_seq = vec![0usize];
    let mut j_seq = vec![largest_j(ps.b(1))];
    while *j_seq.last().unwrap() < r {
        let il = largest_i(ps.a(*j_seq.last().unwrap() as i64 + 1));
        i_seq.push(il);
        j_seq.push(largest_j(ps.b(il as i64 + 1)));
    }
    // j_0 < r always (B(1) < e when n-r >= 2), so the last index is >= 1.
    let alpha = j_seq.len() - 2;

    let case_flag = if pair.sub.parts_desc()[0] > pair.quot.parts_asc()[0] {
        CaseFlag::A1GtB1
    } else {
        CaseFlag::A1LeB1
    };

    // Closed forms from the exactness computation; these are the signs the
    // composition-zero identities require.
    let mut beta = vec![0usize; nr];
    beta[0] = j_seq[0];
    for l in 1..=alpha {
        let col = i_seq[l] + 1;
        if col <= nr - 1 {
            beta[col - 1] = j_seq[l] - j_seq[l - 1];
        }
    }
    beta[nr - 1] = r - j_seq[alpha] - 1;

    InterleavingProfile {
        i_seq,
        j_seq,
        alpha,
        beta,
        case_flag,
    }
}

/// Degree ledger of a monomial matrix: every nonzero entry in row i (resp.
/// column j) must be homogeneous of the declared degree. Zero entries carry
/// the ledger degree in their type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Ledger {
    Rows(Vec<usize>),
    Cols(Vec<usize>),
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<HomPoly>,
    ledger: Ledger,
}

impl MonomialMatrix {
    pub fn zero(rows: usize, cols: usize, ledger: Ledger) -> Self {
        let entries = (0..rows * cols)
            .map(|idx| {
                let (i, j) = (idx / cols, idx % cols);
                HomPoly::zero(match &ledger {
                    Ledger::Rows(d) => d[i],
                    Ledger::Cols(d) => d[j],
                    Ledger::None => 0,
                })
            })
            .collect();
        MonomialMatrix {
            rows,
            cols,
            entries,
            ledger,
        }
    }

    pub fn from_grid(grid: Vec<Vec<HomPoly>>, ledger: Ledger) -> Self {
        let rows = grid.len();
        let cols = grid.first().map(|r| r.len()).unwrap_or(0);
        MonomialMatrix {
            rows,
            cols,
            entries: grid.into_iter().flatten().collect(),
            ledger,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ledger(&self) -> &Ledger {
        &self.ledger
    }

    /// Declared degree of entry (i, j); zero for ledger-free matrices.
    pub fn entry_degree(&self, i: usize, j: usize) -> usize {
        match &self.ledger {
            Ledger::Rows(d) => d[i],
            Ledger::Cols(d) => d[j],
            Ledger::None => self.get(i, j).degree(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &HomPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: HomPoly) -> Result<(), ConstructionError> {
        if !self.entries[i * self.cols + j].is_zero() {
            return Err(ConstructionError::EntryConflict { row: i, col: j });
        }
        let want = self.entry_degree(i, j);
        if p.degree() != want {
            return Err(ConstructionError::LedgerViolation {
                row: i,
                col: j,
                got: p.degree(),
                want,
            });
        }
        self.entries[i * self.cols + j] = p;
        Ok(())
    }

    pub fn transpose(&self) -> MonomialMatrix {
        let ledger = match &self.ledger {
            Ledger::Rows(d) => Ledger::Cols(d.clone()),
            Ledger::Cols(d) => Ledger::Rows(d.clone()),
            Ledger::None => Ledger::None,
        };
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        MonomialMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
            ledger,
        }
    }

    /// Symbolic matrix product; panics on shape mismatch.
    pub fn mul(&self, other: &MonomialMatrix) -> MonomialMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut grid = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(other.cols);
            for j in 0..other.cols {
                let deg = self.entry_degree(i, 0) + other.entry_degree(0, j);
                let mut acc = HomPoly::zero(deg);
                for q in 0..self.cols {
                    let (a, b) = (self.get(i, q), other.get(q, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc
                            .checked_add(&(a * b))
                            .expect("inconsistent degree ledgers in matrix product");
                    }
                }
                row.push(acc);
            }
            grid.push(row);
        }
        MonomialMatrix::from_grid(grid, Ledger::None)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// Checks every nonzero entry against the ledger.
    pub fn ledger_ok(&self) -> bool {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let p = self.get(i, j);
                if !p.is_zero() && p.degree() != self.entry_degree(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// Text grid of rendered monomials, columns padded to equal width.
    pub fn render(&self) -> String {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        let mut widths = vec![0usize; self.cols];
        for row in &cells {
            for (j, c) in row.iter().enumerate() {
                widths[j] = widths[j].max(c.len());
            }
        }
        let mut out = String::new();
        for row in &cells {
            out.push('[');
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    out.push_str("  ");
                }
                out.push_str(&" ".repeat(widths[j] - c.len()));
                out.push_str(c);
            }
            out.push_str("]\n");
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    General,
    Baby,
    Dualized,
}

/// The constructed pair of matrices: `u` maps `(+) O(-b_j)` into `O^n`,
/// `v` maps `O^n` onto `(+) O(a_i)`, and `v . u = 0`.
#[derive(Debug, Clone, Serialize)]
pub struct ExactSequence {
    pub pair: SplittingPair,
    pub u: MonomialMatrix,
    pub v: MonomialMatrix,
    pub provenance: Provenance,
}

fn signed_monomial(
    sign_exp: usize,
    dx: i64,
    dy: i64,
    row: usize,
    col: usize,
) -> Result<HomPoly, ConstructionError> {
    if dx < 0 || dy < 0 {
        return Err(ConstructionError::NegativeExponent { row, col, dx, dy });
    }
    let c = if sign_exp % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    };
    Ok(HomPoly::monomial(c, dx as usize, dy as usize))
}

/// The general construction for n-r <= r. Indices below follow the
/// 1-indexed description; rows/columns of the result are 0-indexed.
pub fn build_general(pair: &SplittingPair) -> Result<ExactSequence, ConstructionError> {
    let (n, r) = (pair.n, pair.r);
    let nr = n - r;
    if nr > r {
        return Err(ConstructionError::NeedsDualization { n, r });
    }
    let a = pair.sub.parts_desc();
    let b = pair.quot.parts_asc().to_vec();
    let ps = PartialSums::new(pair);
    let prof = interleaving_profile(pair);
    let (i_seq, j_seq, alpha) = (&prof.i_seq, &prof.j_seq, prof.alpha);

    let v_ledger = Ledger::Rows(a.iter().map(|&d| d as usize).collect());
    let u_ledger = Ledger::Cols(b.iter().map(|&d| d as usize).collect());
    let mut v = MonomialMatrix::zero(r, n, v_ledger);
    let mut u = MonomialMatrix::zero(n, nr, u_ledger);

    // v, bidiagonal block: v[i][i] = x^{a_i}, v[i][i+1] = y^{a_i}.
    for i in 1..=r {
        v.set(i - 1, i - 1, signed_monomial(0, a[i - 1], 0, i - 1, i - 1)?)?;
        v.set(i - 1, i, signed_monomial(0, 0, a[i - 1], i - 1, i)?)?;
    }
    // v, right block: row j_l+1 carries columns r+2+i_l .. (r+1+i_{l+1} for
    // l < alpha, n for l = alpha).
    for l in 0..=alpha {
        let row = j_seq[l] + 1;
        let i_hi = if l < alpha { i_seq[l + 1] } else { nr - 1 };
        for i in (i_seq[l] + 1)..=i_hi {
            let col = r + 1 + i;
            let dx = ps.a(j_seq[l] as i64 + 1) - ps.b(i as i64);
            let dy = ps.b(i as i64) - ps.a(j_seq[l] as i64);
            v.set(row - 1, col - 1, signed_monomial(0, dx, dy, row - 1, col - 1)?)?;
        }
    }

    // u1: first column, rows 1..j_0+1: (-1)^k x^{A(k-1)} y^{B(1)-A(k-1)}.
    for k in 1..=(j_seq[0] + 1) {
        let dx = ps.a(k as i64 - 1);
        let dy = ps.b(1) - ps.a(k as i64 - 1);
        u.set(k - 1, 0, signed_monomial(k, dx, dy, k - 1, 0)?)?;
    }
    // u2, columns i_l+1 for 1 <= l <= alpha: rows j_{l-1}+2 .. j_l+1.
    for l in 1..=alpha {
        let col = i_seq[l] + 1;
        for c in 1..=(j_seq[l] - j_seq[l - 1]) {
            let row = j_seq[l - 1] + 1 + c;
            let dx = ps.a((j_seq[l - 1] + c) as i64) - ps.b(i_seq[l] as i64);
            let dy = ps.b(i_seq[l] as i64 + 1) - ps.a((j_seq[l - 1] + c) as i64);
            u.set(row - 1, col - 1, signed_monomial(c - 1, dx, dy, row - 1, col - 1)?)?;
        }
    }
    // u2, last column: rows j_alpha+2 .. r.
    for c in 1..=(r - j_seq[alpha] - 1) {
        let row = j_seq[alpha] + 1 + c;
        let dx = ps.a((j_seq[alpha] + c) as i64) - ps.b(nr as i64 - 1);
        let dy = ps.b(nr as i64) - ps.a((j_seq[alpha] + c) as i64);
        u.set(row - 1, nr - 1, signed_monomial(c - 1, dx, dy, row - 1, nr - 1)?)?;
    }
    // u3: diagonal -y^{b_i} (i >= 2), sub-diagonal (-1)^{beta_i} x^{b_i},
    // corner (-1)^{beta_{n-r}} x^{b_{n-r}}.
    for i in 2..=nr {
        u.set(r + i - 1, i - 1, signed_monomial(1, 0, b[i - 1], r + i - 1, i - 1)?)?;
    }
    for i in 1..=(nr - 1) {
        u.set(
            r + i,
            i - 1,
            signed_monomial(prof.beta[i - 1], b[i - 1], 0, r + i, i - 1)?,
        )?;
    }
    u.set(
        r,
        nr - 1,
        signed_monomial(prof.beta[nr - 1], b[nr - 1], 0, r, nr - 1)?,
    )?;

    Ok(ExactSequence {
        pair: pair.clone(),
        u,
        v,
        provenance: Provenance::General,
    })
}

/// The n = 4, r = 2 matrices written out explicitly.
pub fn build_baby(pair: &SplittingPair) -> Result<ExactSequence, ConstructionError> {
    let (n, r) = (pair.n, pair.r);
    if n != 4 || r != 2 {
        return Err(ConstructionError::WrongShape { n, r });
    }
    let a = pair.sub.parts_desc();
    let b = pair.quot.parts_asc().to_vec();
    let (a1, a2, b1, b2) = (a[0], a[1], b[0], b[1]);
    // a1 >= b1 is forced: otherwise b1+b2 >= 2*b1 > 2*a1 >= a1+a2.
    debug_assert!(a1 >= b1);

    let v_ledger = Ledger::Rows(vec![a1 as usize, a2 as usize]);
    let u_ledger = Ledger::Cols(vec![b1 as usize, b2 as usize]);
    let mut v = MonomialMatrix::zero(2, 4, v_ledger);
    let mut u = MonomialMatrix::zero(4, 2, u_ledger);

    v.set(0, 0, signed_monomial(0, a1, 0, 0, 0)?)?;
    v.set(0, 1, signed_monomial(0, 0, a1, 0, 1)?)?;
    v.set(0, 3, signed_monomial(0, a1 - b1, b1, 0, 3)?)?;
    v.set(1, 1, signed_monomial(0, a2, 0, 1, 1)?)?;
    v.set(1, 2, signed_monomial(0, 0, a2, 1, 2)?)?;

    u.set(0, 0, signed_monomial(1, 0, b1, 0, 0)?)?;
    u.set(1, 1, signed_monomial(0, a1 - b1, a2, 1, 1)?)?;
    u.set(2, 1, signed_monomial(1, b2, 0, 2, 1)?)?;
    u.set(3, 0, signed_monomial(0, b1, 0, 3, 0)?)?;
    u.set(3, 1, signed_monomial(1, 0, b2, 3, 1)?)?;

    Ok(ExactSequence {
        pair: pair.clone(),
        u,
        v,
        provenance: Provenance::Baby,
    })
}

/// Builds the sequence for any valid pair, dualizing when n-r > r: the
/// swapped pair is built directly and the transposed matrices are returned
/// (so the ledgers of a dualized sequence list `a` ascending and `b`
/// descending).
pub fn build(pair: &SplittingPair) -> Result<ExactSequence, ConstructionError> {
    if pair.n - pair.r <= pair.r {
        build_general(pair)
    } else {
        let primal = build_general(&pair.swapped())?;
        Ok(ExactSequence {
            pair: pair.clone(),
            u: primal.v.transpose(),
            v: primal.u.transpose(),
            provenance: Provenance::Dualized,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splitting::SplittingType;

    fn pair(n: usize, a: &[i64], b: &[i64]) -> SplittingPair {
        SplittingPair::new(
            n,
            SplittingType::new(a.iter().copied()).unwrap(),
            SplittingType::new(b.iter().copied()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn check_order_examples() {
        assert!(check_order(&pair(10, &[6, 5, 4, 3, 2], &[1, 1, 5, 6, 7])));
        assert!(check_order(&pair(4, &[5, 1], &[2, 4])));
    }

    #[test]
    fn profile_r5_n10_example() {
        let p = pair(10, &[6, 5, 4, 3, 2], &[1, 1, 5, 6, 7]);
        let prof = interleaving_profile(&p);
        assert_eq!(prof.case_flag, CaseFlag::A1GtB1);
        assert_eq!(prof.j_seq[0], 0);
        assert_eq!(prof.i_seq[1], 2);
        assert_eq!(prof.j_seq[1], 1);
        assert_eq!(prof.i_seq[2], 3);
        assert_eq!(prof.j_seq[2], 2);
        assert_eq!(prof.i_seq[3], 4);
        assert_eq!(prof.j_seq[3], 5);
        assert_eq!(prof.alpha, 2);
    }

    #[test]
    fn profile_baby_example() {
        let prof = interleaving_profile(&pair(4, &[5, 1], &[2, 4]));
        assert_eq!(prof.case_flag, CaseFlag::A1GtB1);
        assert_eq!(prof.i_seq[0], 0);
        assert_eq!(prof.j_seq[0], 0);
    }

    #[test]
    fn baby_matches_displayed_matrices() {
        let seq = build_baby(&pair(4, &[5, 1], &[2, 4])).unwrap();
        assert_eq!(seq.v.get(0, 0).to_string(), "x^5");
        assert_eq!(seq.v.get(0, 1).to_string(), "y^5");
        assert_eq!(seq.v.get(0, 2).to_string(), "0");
        assert_eq!(seq.v.get(0, 3).to_string(), "x^3*y^2");
        assert_eq!(seq.u.get(0, 0).to_string(), "-y^2");
        assert_eq!(seq.u.get(1, 1).to_string(), "x^3*y");
        assert_eq!(seq.u.get(2, 1).to_string(), "-x^4");
        assert_eq!(seq.u.get(3, 0).to_string(), "x^2");
        assert_eq!(seq.u.get(3, 1).to_string(), "-y^4");
    }

    #[test]
    fn baby_balanced_and_degree_zero_parts() {
        for (a, b) in [([3, 3], [3, 3]), ([6, 0], [3, 3])] {
            let seq = build_baby(&pair(4, &a, &b)).unwrap();
            assert!(seq.v.mul(&seq.u).is_zero());
            assert!(seq.u.ledger_ok() && seq.v.ledger_ok());
        }
    }

    #[test]
    fn general_compose_zero_small() {
        for (n, a, b) in [
            (4, vec![5, 1], vec![2, 4]),
            (4, vec![3, 3], vec![3, 3]),
            (5, vec![2, 2, 2], vec![3, 3]),
            (10, vec![6, 5, 4, 3, 2], vec![1, 1, 5, 6, 7]),
        ] {
            let seq = build_general(&pair(n, &a, &b)).unwrap();
            assert!(seq.v.mul(&seq.u).is_zero(), "a={a:?} b={b:?}");
            assert!(seq.u.ledger_ok() && seq.v.ledger_ok());
        }
    }

    #[test]
    fn build_branches() {
        let seq = build(&pair(5, &[3, 3], &[1, 2, 3])).unwrap();
        assert_eq!(seq.provenance, Provenance::Dualized);
        assert!(seq.v.mul(&seq.u).is_zero());

        let seq = build(&pair(5, &[1, 2, 3], &[3, 3])).unwrap();
        assert_eq!(seq.provenance, Provenance::General);

        let seq = build(&pair(4, &[5, 1], &[2, 4])).unwrap();
        assert_eq!(seq.provenance, Provenance::General);
    }

    #[test]
    fn general_needs_dualization_error() {
        assert!(matches!(
            build_general(&pair(5, &[3, 3], &[1, 2, 3])),
            Err(ConstructionError::NeedsDualization { .. })
        ));
    }
}

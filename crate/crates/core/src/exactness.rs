//! Certifies that a constructed pair (u, v) is an exact sequence of bundle
//! maps: composition zero, two complementary maximal minors that are pure
//! powers of x and of y (so v is surjective and u injective everywhere on
//! P^1), plus rank checks at sample points as a secondary guard.

use crate::construction::{ExactSequence, MonomialMatrix, Provenance};
use crate::linalg;
use crate::polyring::{rat, HomPoly, Rational};
use num_traits::Zero;
use serde::Serialize;

/// The symbolic product v . u; the caller checks all-zero.
pub fn compose(seq: &ExactSequence) -> MonomialMatrix {
    seq.v.mul(&seq.u)
}

fn minor(m: &MonomialMatrix, rows: &[usize], cols: &[usize]) -> HomPoly {
    let grid: Vec<Vec<HomPoly>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| m.get(i, j).clone()).collect())
        .collect();
    linalg::det(&grid)
}

/// The four certificate minors, in order: (v over its first certificate
/// column set, v over the second, u over its first certificate row set,
/// u over the second). For the direct construction these are v's columns
/// 1..r and 2..r+1 and u's rows r+1..n and {1} u {r+2..n}; for a dualized
/// sequence the transposed positions of the primal certificates are used.
pub fn certificate_minors(seq: &ExactSequence) -> [HomPoly; 4] {
    let (n, r) = (seq.pair.n, seq.pair.r);
    let nr = n - r;
    match seq.provenance {
        Provenance::General | Provenance::Baby => {
            let all_v_rows: Vec<usize> = (0..r).collect();
            let all_u_cols: Vec<usize> = (0..nr).collect();
            let v1 = minor(&seq.v, &all_v_rows, &(0..r).collect::<Vec<_>>());
            let v2 = minor(&seq.v, &all_v_rows, &(1..=r).collect::<Vec<_>>());
            let u1 = minor(&seq.u, &(r..n).collect::<Vec<_>>(), &all_u_cols);
            let mut rows2 = vec![0usize];
            rows2.extend(r + 1..n);
            let u2 = minor(&seq.u, &rows2, &all_u_cols);
            [v1, v2, u1, u2]
        }
        Provenance::Dualized => {
            // v = u'^T, u = v'^T for the primal problem on the swapped pair
            // (primal sub-rank n-r). Transposition preserves determinants,
            // so the primal certificates reappear on transposed index sets.
            let all_v_rows: Vec<usize> = (0..r).collect();
            let all_u_cols: Vec<usize> = (0..nr).collect();
            let v1 = minor(&seq.v, &all_v_rows, &(nr..n).collect::<Vec<_>>());
            let mut cols2 = vec![0usize];
            cols2.extend(nr + 1..n);
            let v2 = minor(&seq.v, &all_v_rows, &cols2);
            let u1 = minor(&seq.u, &(0..nr).collect::<Vec<_>>(), &all_u_cols);
            let u2 = minor(&seq.u, &(1..=nr).collect::<Vec<_>>(), &all_u_cols);
            [v1, v2, u1, u2]
        }
    }
}

/// True iff `p` equals a nonzero scalar times `x^e` (pure_x) or `y^e`.
fn is_pure_power(p: &HomPoly, e: usize, pure_x: bool) -> bool {
    match p.as_monomial() {
        Some((_, dy)) => p.degree() == e && if pure_x { dy == 0 } else { dy == e },
        None => false,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PointRank {
    pub point: (Rational, Rational),
    pub rank_v: usize,
    pub rank_u: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactnessReport {
    pub compose_zero: bool,
    pub minor_v_first: String,
    pub minor_v_second: String,
    pub minor_u_first: String,
    pub minor_u_second: String,
    pub minors_ok: bool,
    pub point_ranks: Vec<PointRank>,
    pub point_ranks_ok: bool,
    pub verdict: bool,
}

/// The default sample points (1, t).
pub fn default_sample_points() -> Vec<(Rational, Rational)> {
    [
        rat(0, 1),
        rat(1, 1),
        rat(-1, 1),
        rat(2, 1),
        rat(1, 2),
        rat(7, 3),
    ]
    .into_iter()
    .map(|t| (rat(1, 1), t))
    .collect()
}

fn eval_matrix(m: &MonomialMatrix, x0: &Rational, y0: &Rational) -> Vec<Vec<Rational>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).eval(x0, y0)).collect())
        .collect()
}

/// Full exactness check. Failures are reported, not thrown.
pub fn verify(seq: &ExactSequence, sample_points: &[(Rational, Rational)]) -> ExactnessReport {
    let (n, r) = (seq.pair.n, seq.pair.r);
    let e = seq.pair.degree() as usize;
    let compose_zero = compose(seq).is_zero();

    let [v1, v2, u1, u2] = certificate_minors(seq);
    let minors_ok = is_pure_power(&v1, e, true)
        && is_pure_power(&v2, e, false)
        && is_pure_power(&u1, e, true)
        && is_pure_power(&u2, e, false);

    let mut point_ranks = Vec::with_capacity(sample_points.len());
    let mut point_ranks_ok = true;
    for (x0, y0) in sample_points {
        debug_assert!(!(x0.is_zero() && y0.is_zero()));
        let rank_v = linalg::rank(eval_matrix(&seq.v, x0, y0));
        let rank_u = linalg::rank(eval_matrix(&seq.u, x0, y0));
        point_ranks_ok &= rank_v == r && rank_u == n - r;
        point_ranks.push(PointRank {
            point: (x0.clone(), y0.clone()),
            rank_v,
            rank_u,
        });
    }

    ExactnessReport {
        compose_zero,
        minor_v_first: v1.to_string(),
        minor_v_second: v2.to_string(),
        minor_u_first: u1.to_string(),
        minor_u_second: u2.to_string(),
        minors_ok,
        point_ranks,
        point_ranks_ok,
        verdict: compose_zero && minors_ok && point_ranks_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build, build_baby, build_general};
    use crate::splitting::{SplittingPair, SplittingType};
    use num_traits::One;

    fn pair(n: usize, a: &[i64], b: &[i64]) -> SplittingPair {
        SplittingPair::new(
            n,
            SplittingType::new(a.iter().copied()).unwrap(),
            SplittingType::new(b.iter().copied()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn baby_certificates() {
        let seq = build_baby(&pair(4, &[5, 1], &[2, 4])).unwrap();
        let [v1, v2, u1, u2] = certificate_minors(&seq);
        assert_eq!(v1.to_string(), "x^6");
        assert_eq!(v2.to_string(), "y^6");
        assert!(is_pure_power(&u1, 6, true), "got {}", u1);
        assert!(is_pure_power(&u2, 6, false), "got {}", u2);
    }

    #[test]
    fn balanced_certificates() {
        let seq = build_general(&pair(4, &[3, 3], &[3, 3])).unwrap();
        let [v1, v2, _, _] = certificate_minors(&seq);
        assert_eq!(v1.to_string(), "x^6");
        assert_eq!(v2.to_string(), "y^6");
    }

    #[test]
    fn verify_constructed_and_dualized() {
        let pts = default_sample_points();
        for p in [
            pair(4, &[5, 1], &[2, 4]),
            pair(5, &[2, 2, 2], &[3, 3]),
            pair(5, &[3, 3], &[1, 2, 3]), // dualized branch
            pair(10, &[6, 5, 4, 3, 2], &[1, 1, 5, 6, 7]),
        ] {
            let seq = build(&p).unwrap();
            let rep = verify(&seq, &pts);
            assert!(rep.verdict, "failed for {:?}: {:?}", p, rep);
        }
    }

    #[test]
    fn mutation_breaks_compose_zero() {
        let seq = build_general(&pair(4, &[5, 1], &[2, 4])).unwrap();
        let mut bad = seq.clone();
        // flip the sign of u(0,0)
        let flipped = -bad.u.get(0, 0);
        bad.u = {
            let mut grid: Vec<Vec<HomPoly>> = (0..bad.u.rows())
                .map(|i| (0..bad.u.cols()).map(|j| bad.u.get(i, j).clone()).collect())
                .collect();
            grid[0][0] = flipped;
            MonomialMatrix::from_grid(grid, bad.u.ledger().clone())
        };
        assert!(!compose(&bad).is_zero());
        let rep = verify(&bad, &default_sample_points());
        assert!(!rep.verdict);
    }

    #[test]
    fn zeroed_entry_detected() {
        let seq = build_general(&pair(4, &[5, 1], &[2, 4])).unwrap();
        let mut grid: Vec<Vec<HomPoly>> = (0..seq.v.rows())
            .map(|i| (0..seq.v.cols()).map(|j| seq.v.get(i, j).clone()).collect())
            .collect();
        grid[0][0] = HomPoly::zero(5);
        let mut bad = seq.clone();
        bad.v = MonomialMatrix::from_grid(grid, seq.v.ledger().clone());
        let rep = verify(&bad, &default_sample_points());
        assert!(!rep.verdict);
        assert!(!rep.minors_ok);
    }

    #[test]
    fn pure_power_check_rejects_mixed_monomials() {
        let p = HomPoly::monomial(Rational::one(), 3, 3);
        assert!(!is_pure_power(&p, 6, true));
        assert!(!is_pure_power(&p, 6, false));
        assert!(is_pure_power(&HomPoly::monomial(rat(-2, 1), 6, 0), 6, true));
    }
}

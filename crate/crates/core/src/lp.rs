//! Exact feasibility of `A x = b, x >= 0` by the phase-one simplex method
//! over arbitrary-precision rationals, with Bland's rule.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Returns a feasible point, or `None` when the system has no non-negative
/// solution.
pub fn feasible_point(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    // columns: n originals, m artificials, then the right-hand side
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), n, "ragged constraint matrix");
        let flip = b[i].is_negative();
        let mut r = vec![BigRational::zero(); width];
        for (j, x) in row.iter().enumerate() {
            r[j] = if flip { -x.clone() } else { x.clone() };
        }
        r[n + i] = BigRational::from_integer(1.into());
        r[width - 1] = if flip { -b[i].clone() } else { b[i].clone() };
        t.push(r);
    }
    // reduced costs of minimizing the sum of artificials
    let mut cost = vec![BigRational::zero(); width];
    for r in &t {
        for j in 0..n {
            cost[j] -= &r[j];
        }
        cost[width - 1] -= &r[width - 1];
    }
    t.push(cost);
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][width - 1] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (row, _) = leave.expect("phase-one objective is bounded below");
        pivot(&mut t, row, enter);
        basis[row] = enter;
    }

    if !t[m][width - 1].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<BigRational>], row: usize, col: usize) {
    let p = t[row][col].clone();
    for x in t[row].iter_mut() {
        *x /= &p;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (x, y) in r.iter_mut().zip(&pivot_row) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
}

/// Rank of a rational matrix by exact Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let n = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot[c];
            for (x, y) in row.iter_mut().zip(&pivot) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn check(a: &[Vec<BigRational>], b: &[BigRational], x: &[BigRational]) {
        assert!(x.iter().all(|v| !v.is_negative()));
        for (row, rhs) in a.iter().zip(b) {
            let lhs: BigRational = row.iter().zip(x).map(|(p, v)| p * v).sum();
            assert_eq!(&lhs, rhs);
        }
    }

    #[test]
    fn finds_a_feasible_point() {
        let a = vec![vec![q(1), q(1), q(0)], vec![q(1), q(0), q(-1)]];
        let b = vec![q(2), q(1)];
        let x = feasible_point(&a, &b).unwrap();
        check(&a, &b, &x);
    }

    #[test]
    fn detects_infeasibility() {
        let a = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert!(feasible_point(&a, &[q(1), q(2)]).is_none());
        assert!(feasible_point(&[vec![q(1)]], &[q(-1)]).is_none());
    }

    #[test]
    fn handles_redundant_and_negative_rows() {
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)], vec![q(-1), q(0)]];
        let b = vec![q(1), q(2), q(-1)];
        let x = feasible_point(&a, &b).unwrap();
        check(&a, &b, &x);
        assert_eq!(x, vec![q(1), q(0)]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(vec![vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(rank(vec![vec![q(0), q(1)], vec![q(1), q(0)], vec![q(1), q(1)]]), 2);
        assert_eq!(rank(vec![]), 0);
    }
}

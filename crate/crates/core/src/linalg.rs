//! Exact linear algebra over the rationals: reduced row echelon form, null
//! spaces, linear solves, and nonnegative solution sets of equality systems.

use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

/// Row-major dense matrix.
pub type Matrix = Vec<Vec<Scalar>>;

/// Reduces `rows` (each of length `cols`) to reduced row echelon form in place
/// and drops zero rows. Returns the pivot column of each remaining row.
pub fn rref(rows: &mut Matrix, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &Matrix, cols: usize) -> usize {
    let mut m = rows.clone();
    rref(&mut m, cols).len()
}

/// A basis of `{x : A x = 0}`. Each basis vector is scaled so that its first
/// nonzero coordinate is 1.
pub fn null_space(rows: &Matrix, cols: usize) -> Vec<Vec<Scalar>> {
    let mut m = rows.clone();
    let pivots = rref(&mut m, cols);
    let mut is_pivot = vec![None; cols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    (0..cols)
        .filter(|&c| is_pivot[c].is_none())
        .map(|free| {
            let mut v = vec![Scalar::zero(); cols];
            v[free] = Scalar::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -&m[r][free];
            }
            normalize_leading(&mut v);
            v
        })
        .collect()
}

fn normalize_leading(v: &mut [Scalar]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        for x in v.iter_mut() {
            *x /= &lead;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Inconsistent,
    Unique(Vec<Scalar>),
    /// A particular solution plus a basis of the homogeneous solutions.
    Affine { particular: Vec<Scalar>, directions: Vec<Vec<Scalar>> },
}

/// Solves `A x = b` exactly.
pub fn solve(a: &Matrix, b: &[Scalar], cols: usize) -> Solution {
    assert_eq!(a.len(), b.len());
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return Solution::Inconsistent;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    if pivots.len() == cols {
        Solution::Unique(x)
    } else {
        Solution::Affine { particular: x, directions: null_space(a, cols) }
    }
}

/// The set `{x : A x = b, x >= 0}` as far as exact elimination can decide it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonnegativeSolutions {
    Empty,
    Unique(Vec<Scalar>),
    /// Elimination left `free` unresolved degrees of freedom; the set may or
    /// may not be a single point.
    Undetermined { free: usize, forced_zero: Vec<bool> },
}

/// Decides `{x >= 0 : A x = b}` by alternating exact row reduction with sign
/// propagation: a reduced row `sum a_v x_v = 0` whose coefficients all share a
/// sign forces every variable it touches to zero, and a row whose sign pattern
/// cannot reach its right-hand side proves the set empty.
pub fn nonnegative_solutions(a: &Matrix, b: &[Scalar], cols: usize) -> NonnegativeSolutions {
    assert_eq!(a.len(), b.len());
    let mut zero = vec![false; cols];
    loop {
        let live: Vec<usize> = (0..cols).filter(|&v| !zero[v]).collect();
        let mut aug: Matrix = a
            .iter()
            .zip(b)
            .map(|(row, rhs)| {
                let mut r: Vec<Scalar> = live.iter().map(|&v| row[v].clone()).collect();
                r.push(rhs.clone());
                r
            })
            .collect();
        let original = aug.clone();
        let pivots = rref(&mut aug, live.len() + 1);
        if pivots.last() == Some(&live.len()) {
            return NonnegativeSolutions::Empty;
        }
        let mut changed = false;
        for row in original.iter().chain(&aug) {
            let rhs = &row[live.len()];
            let coeffs = &row[..live.len()];
            let all_nonneg = coeffs.iter().all(|c| !c.is_negative());
            let all_nonpos = coeffs.iter().all(|c| !c.is_positive());
            if (all_nonneg && rhs.is_negative()) || (all_nonpos && rhs.is_positive()) {
                return NonnegativeSolutions::Empty;
            }
            if rhs.is_zero() && (all_nonneg || all_nonpos) {
                for (c, &v) in coeffs.iter().zip(&live) {
                    if !c.is_zero() {
                        zero[v] = true;
                        changed = true;
                    }
                }
            }
        }
        if changed {
            continue;
        }
        if pivots.len() < live.len() {
            return NonnegativeSolutions::Undetermined { free: live.len() - pivots.len(), forced_zero: zero };
        }
        let mut x = vec![Scalar::zero(); cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[live[c]] = aug[r][live.len()].clone();
        }
        return if x.iter().any(Signed::is_negative) {
            NonnegativeSolutions::Empty
        } else {
            NonnegativeSolutions::Unique(x)
        };
    }
}

pub fn mat_vec(a: &Matrix, x: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn null_space_is_annihilated_and_full() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ns = null_space(&a, 4);
        assert_eq!(ns.len(), 4 - rank(&a, 4));
        for v in &ns {
            assert!(mat_vec(&a, v).iter().all(Zero::is_zero));
        }
        assert_eq!(rank(&ns, 4), ns.len());
    }

    #[test]
    fn null_space_normalization() {
        // f1 - 1/2 f2 = 0
        let a = vec![vec![int(1), ratio(-1, 2)]];
        assert_eq!(null_space(&a, 2), vec![vec![int(1), int(2)]]);
    }

    #[test]
    fn solve_cases() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&a, &[int(2), int(0)], 2), Solution::Unique(vec![int(1), int(1)]));
        let a = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&a, &[int(1), int(3)], 2), Solution::Inconsistent);
        match solve(&a, &[int(1), int(2)], 2) {
            Solution::Affine { particular, directions } => {
                assert_eq!(mat_vec(&a, &particular), vec![int(1), int(2)]);
                assert_eq!(directions.len(), 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn nonnegative_cases() {
        // x + y = 0 forces both to zero
        let a = m(&[&[1, 1]]);
        assert_eq!(nonnegative_solutions(&a, &[int(0)], 2), NonnegativeSolutions::Unique(vec![int(0), int(0)]));
        // x + y = -1 is infeasible
        assert_eq!(nonnegative_solutions(&a, &[int(-1)], 2), NonnegativeSolutions::Empty);
        // x + y = 1 is a segment
        assert!(matches!(nonnegative_solutions(&a, &[int(1)], 2), NonnegativeSolutions::Undetermined { free: 1, .. }));
        // x - y = 0, x + y + z = 0
        let a = m(&[&[1, -1, 0], &[1, 1, 1]]);
        assert_eq!(
            nonnegative_solutions(&a, &[int(0), int(0)], 3),
            NonnegativeSolutions::Unique(vec![int(0), int(0), int(0)])
        );
    }
}

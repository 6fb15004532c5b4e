//! Exact linear algebra: dense rational matrices, and fraction-free
//! elimination over Novikov scalars.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::novikov::{Monomial, Scalar};

pub type QMatrix = Vec<Vec<BigRational>>;

/// Reduced row echelon form of a rational matrix, with the pivot columns.
pub fn rref(mut m: QMatrix) -> (QMatrix, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m.clone()).1.len()
}

/// Basis of `{x : m x = 0}`, one vector per free column.
pub fn nullspace(m: &QMatrix, cols: usize) -> Vec<Vec<BigRational>> {
    let (red, pivots) = rref(m.clone());
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -red[row][free].clone();
            }
            v
        })
        .collect()
}

/// Inverse of a square rational matrix.
pub fn inverse(m: &QMatrix) -> Option<QMatrix> {
    let n = m.len();
    let aug: QMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    let (red, pivots) = rref(aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solve `m x = b`, returning one solution if consistent.
pub fn solve(m: &QMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let cols = m.first().map_or(0, |r| r.len());
    let aug: QMatrix = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = red[row][cols].clone();
    }
    Some(x)
}

/// Outcome of solving over the Novikov scalars.
#[derive(Debug, Clone)]
pub enum ScalarSolve<M: Monomial> {
    Unique(Vec<Scalar<M>>),
    /// Singular; carries a nonzero kernel vector.
    Singular(Vec<Scalar<M>>),
    /// Invertible over the fraction field, but the solution is not a finite sum.
    NonFinite,
}

fn pick_pivot<M: Monomial>(rows: &[Vec<Scalar<M>>], from: usize, col: usize) -> Option<usize> {
    // Monomial pivots are units of the Laurent ring and keep entries small.
    let candidates = (from..rows.len()).filter(|&r| !rows[r][col].is_zero());
    candidates.min_by_key(|&r| {
        let e = &rows[r][col];
        (if e.as_monomial().is_some() { 0 } else { 1 }, e.len(), r)
    })
}

/// Fraction-free Gauss–Jordan elimination. Returns the reduced rows and the
/// `(row, column)` pivot positions; pivot entries are `1` when the pivot was
/// a monomial and an arbitrary nonzero scalar otherwise.
fn eliminate<M: Monomial>(mut rows: Vec<Vec<Scalar<M>>>, cols: usize) -> (Vec<Vec<Scalar<M>>>, Vec<(usize, usize)>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = pick_pivot(&rows, r, c) else {
            continue;
        };
        rows.swap(r, p);
        if let Some(inv) = rows[r][c].inverse_monomial() {
            for x in rows[r].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot = rows[r][c].clone();
        let unit_pivot = pivot.is_one();
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            let (head, tail) = if i < r {
                let (a, b) = rows.split_at_mut(r);
                (&mut a[i], &b[0])
            } else {
                let (a, b) = rows.split_at_mut(i);
                (&mut b[0], &a[r])
            };
            for j in 0..head.len() {
                let sub = &f * &tail[j];
                head[j] = if unit_pivot { &head[j] - &sub } else { &(&pivot * &head[j]) - &sub };
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    (rows, pivots)
}

/// Kernel vector attached to the first free column of the reduced rows.
fn kernel_from_reduced<M: Monomial>(rows: &[Vec<Scalar<M>>], pivots: &[(usize, usize)], cols: usize) -> Option<Vec<Scalar<M>>> {
    let free = (0..cols).find(|c| !pivots.iter().any(|&(_, pc)| pc == *c))?;
    // x_free = Π pivots, x_pc = -a[r][free] Π_{s≠r} pivot_s.
    let diag: Vec<Scalar<M>> = pivots.iter().map(|&(r, c)| rows[r][c].clone()).collect();
    let mut v = vec![Scalar::zero(); cols];
    v[free] = diag.iter().fold(Scalar::one(), |acc, d| &acc * d);
    for (k, &(r, c)) in pivots.iter().enumerate() {
        let others = diag.iter().enumerate().filter(|(j, _)| *j != k).fold(Scalar::one(), |acc, (_, d)| &acc * d);
        v[c] = -&(&rows[r][free] * &others);
    }
    Some(v)
}

/// Some nonzero `v` with `m v = 0`, or `None` when `m` has full column rank.
pub fn scalar_kernel<M: Monomial>(m: &[Vec<Scalar<M>>], cols: usize) -> Option<Vec<Scalar<M>>> {
    let (rows, pivots) = eliminate(m.to_vec(), cols);
    kernel_from_reduced(&rows, &pivots, cols)
}

/// Solve the square system `m x = b` over the Novikov scalars.
pub fn scalar_solve<M: Monomial>(m: &[Vec<Scalar<M>>], b: &[Scalar<M>]) -> ScalarSolve<M> {
    let n = m.len();
    let aug: Vec<Vec<Scalar<M>>> = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let (rows, pivots) = eliminate(aug, n);
    if pivots.len() < n {
        let (coeff_rows, coeff_pivots) = eliminate(m.to_vec(), n);
        return match kernel_from_reduced(&coeff_rows, &coeff_pivots, n) {
            Some(v) => ScalarSolve::Singular(v),
            None => ScalarSolve::NonFinite,
        };
    }
    let mut x = vec![Scalar::zero(); n];
    for &(r, c) in &pivots {
        match rows[r][n].div_exact(&rows[r][c]) {
            Some(v) => x[c] = v,
            None => return ScalarSolve::NonFinite,
        }
    }
    ScalarSolve::Unique(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::{rat, NovikovMonomial, NovikovScalar};

    fn q(rows: &[&[i64]]) -> QMatrix {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn rational_inverse_round_trip() {
        let m = q(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, q(&[&[1, -1], &[-1, 2]]));
        assert!(inverse(&q(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &m {
                let dot: BigRational = row.iter().zip(&v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
    }

    fn t(e: i64) -> NovikovScalar {
        NovikovScalar::monomial(NovikovMonomial::qt(0, e), rat(1))
    }

    #[test]
    fn scalar_solve_with_non_monomial_pivots() {
        // [[1+t, 1], [1, 1-t]] has determinant -t^2; the solution is finite.
        let one = NovikovScalar::one();
        let m = vec![vec![&one + &t(1), one.clone()], vec![one.clone(), &one - &t(1)]];
        let b = vec![one.clone(), NovikovScalar::zero()];
        match scalar_solve(&m, &b) {
            ScalarSolve::Unique(x) => {
                let r0 = &(&m[0][0] * &x[0]) + &(&m[0][1] * &x[1]);
                let r1 = &(&m[1][0] * &x[0]) + &(&m[1][1] * &x[1]);
                assert!(r0.is_one());
                assert!(r1.is_zero());
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn scalar_solve_reports_non_finite_inverse() {
        let one = NovikovScalar::one();
        let m = vec![vec![&one + &t(1)]];
        assert!(matches!(scalar_solve(&m, &[one]), ScalarSolve::NonFinite));
    }

    #[test]
    fn scalar_kernel_of_singular_matrix() {
        let one = NovikovScalar::one();
        let a = &one + &t(2);
        let m = vec![vec![a.clone(), &a * &t(1)], vec![one.clone(), t(1)]];
        let v = scalar_kernel(&m, 2).unwrap();
        for row in &m {
            assert!((&(&row[0] * &v[0]) + &(&row[1] * &v[1])).is_zero());
        }
        assert!(v.iter().any(|x| !x.is_zero()));
    }
}

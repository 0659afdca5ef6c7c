//! Dense Gaussian elimination, kept as an independent oracle for the tests.

use crate::scalar::Scalar;

/// Solves `a x = b` with partial pivoting. Returns `None` when a pivot falls
/// below `n * eps * max|a|`, i.e. the system is numerically singular.
pub fn solve<F: Scalar, const N: usize>(mut a: [[F; N]; N], mut b: [F; N]) -> Option<[F; N]> {
    let scale = a
        .iter()
        .flat_map(|row| row.iter())
        .fold(F::zero(), |m, v| m.max(v.abs()));
    if !(scale > F::zero()) {
        return None;
    }
    let tiny = F::epsilon() * F::lit(N as f64) * scale;

    for col in 0..N {
        let pivot_row = (col..N)
            .max_by(|&i, &j| {
                a[i][col]
                    .abs()
                    .partial_cmp(&a[j][col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(col);
        if !(a[pivot_row][col].abs() > tiny) {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);

        for row in col + 1..N {
            let factor = a[row][col] / a[col][col];
            if factor == F::zero() {
                continue;
            }
            for k in col..N {
                let sub = factor * a[col][k];
                a[row][k] = a[row][k] - sub;
            }
            b[row] = b[row] - factor * b[col];
        }
    }

    let mut x = [F::zero(); N];
    for row in (0..N).rev() {
        let mut acc = b[row];
        for k in row + 1..N {
            acc = acc - a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    if x.iter().all(|v| v.is_finite()) {
        Some(x)
    } else {
        None
    }
}

/// `a x` for a square matrix.
pub fn mat_vec<F: Scalar, const N: usize>(a: &[[F; N]; N], x: &[F; N]) -> [F; N] {
    let mut out = [F::zero(); N];
    for (o, row) in out.iter_mut().zip(a) {
        *o = row.iter().zip(x).fold(F::zero(), |s, (&r, &v)| s + r * v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let a = [[2.0f64, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 4.0]];
        let b = [3.0, 5.0, 5.0];
        let x = solve(a, b).unwrap();
        let r = mat_vec(&a, &x);
        for i in 0..3 {
            assert!((r[i] - b[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn needs_pivoting() {
        let a = [[0.0, 1.0], [1.0, 0.0]];
        assert_eq!(solve(a, [2.0, 3.0]), Some([3.0, 2.0]));
    }

    #[test]
    fn singular_is_none() {
        let a = [[1.0, 2.0], [2.0, 4.0]];
        assert!(solve(a, [1.0, 2.0]).is_none());
        assert!(solve([[0.0f64; 2]; 2], [0.0, 0.0]).is_none());
    }
}

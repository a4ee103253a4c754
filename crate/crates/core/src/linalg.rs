//! Small dense-matrix helpers: LU determinant over complex entries and a
//! pivoted row-echelon rank for real matrices. Sizes here are desk scale
//! (tens of rows), so partial pivoting in plain loops is plenty.

use ndarray::Array2;
use num_complex::Complex64;

/// Determinant of a square complex matrix by LU with partial pivoting.
/// Returns zero when a pivot collapses, which is exactly the singular case
/// the callers care about.
pub(crate) fn complex_determinant(m: &Array2<Complex64>) -> Complex64 {
    let n = m.nrows();
    debug_assert_eq!(n, m.ncols());
    let mut a = m.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let mut pivot = col;
        let mut best = a[(col, col)].norm();
        for row in col + 1..n {
            let mag = a[(row, col)].norm();
            if mag > best {
                best = mag;
                pivot = row;
            }
        }
        if best == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            for k in 0..n {
                let tmp = a[(col, k)];
                a[(col, k)] = a[(pivot, k)];
                a[(pivot, k)] = tmp;
            }
            det = -det;
        }
        let diag = a[(col, col)];
        det *= diag;
        for row in col + 1..n {
            let factor = a[(row, col)] / diag;
            if factor.norm() == 0.0 {
                continue;
            }
            for k in col..n {
                let sub = factor * a[(col, k)];
                a[(row, k)] -= sub;
            }
        }
    }
    det
}

/// Rank of a real matrix by Gaussian elimination with partial pivoting.
/// A pivot counts when its magnitude exceeds `tol` times the largest entry
/// of the original matrix.
pub(crate) fn real_rank(m: &Array2<f64>, tol: f64) -> usize {
    let rows = m.nrows();
    let cols = m.ncols();
    let scale = m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    if scale == 0.0 {
        return 0;
    }
    let threshold = tol * scale;
    let mut a = m.clone();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let mut pivot = row;
        let mut best = a[(row, col)].abs();
        for r in row + 1..rows {
            let mag = a[(r, col)].abs();
            if mag > best {
                best = mag;
                pivot = r;
            }
        }
        if best <= threshold {
            continue;
        }
        if pivot != row {
            for k in 0..cols {
                a.swap((row, k), (pivot, k));
            }
        }
        let diag = a[(row, col)];
        for r in row + 1..rows {
            let factor = a[(r, col)] / diag;
            if factor == 0.0 {
                continue;
            }
            for k in col..cols {
                let sub = factor * a[(row, k)];
                a[(r, k)] -= sub;
            }
        }
        rank += 1;
        row += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn determinant_of_identity() {
        let id: Array2<Complex64> = Array2::eye(4).mapv(|v: f64| Complex64::new(v, 0.0));
        let det = complex_determinant(&id);
        assert!((det - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn determinant_two_by_two() {
        let a = array![
            [Complex64::new(1.0, 2.0), Complex64::new(0.0, -1.0)],
            [Complex64::new(3.0, 0.0), Complex64::new(1.0, 1.0)],
        ];
        // ad - bc = (1+2i)(1+i) - (-i)(3) = (-1 + 3i) + 3i = -1 + 6i
        let det = complex_determinant(&a);
        assert!((det - Complex64::new(-1.0, 6.0)).norm() < 1e-13);
    }

    #[test]
    fn determinant_singular() {
        let a = array![
            [Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)],
            [Complex64::new(2.0, 0.0), Complex64::new(4.0, 0.0)],
        ];
        assert!(complex_determinant(&a).norm() < 1e-14);
    }

    #[test]
    fn rank_examples() {
        let full = array![[1.0, 0.0], [0.0, 2.0]];
        assert_eq!(real_rank(&full, 1e-12), 2);
        let deficient = array![[1.0, 2.0], [2.0, 4.0]];
        assert_eq!(real_rank(&deficient, 1e-12), 1);
        let zero: Array2<f64> = Array2::zeros((3, 3));
        assert_eq!(real_rank(&zero, 1e-12), 0);
    }
}

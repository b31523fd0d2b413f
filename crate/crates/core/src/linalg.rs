use num::{BigRational, Zero};

/// Solves `matrix * x = rhs` over the rationals by Gauss-Jordan elimination.
/// Returns `None` for singular systems.
pub(crate) fn solve(mut matrix: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = rhs.len();
    debug_assert!(matrix.len() == n && matrix.iter().all(|row| row.len() == n));
    for col in 0..n {
        let pivot = (col..n).find(|&r| !matrix[r][col].is_zero())?;
        matrix.swap(col, pivot);
        rhs.swap(col, pivot);
        let p = matrix[col][col].clone();
        for x in &mut matrix[col][col..] {
            *x = &*x / &p;
        }
        rhs[col] = &rhs[col] / &p;
        let pivot_row = matrix[col].clone();
        for row in 0..n {
            if row == col || matrix[row][col].is_zero() {
                continue;
            }
            let factor = matrix[row][col].clone();
            for (x, y) in matrix[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * y;
            }
            let delta = &factor * &rhs[col];
            rhs[row] -= delta;
        }
    }
    Some(rhs)
}

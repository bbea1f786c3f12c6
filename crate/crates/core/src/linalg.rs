//! Small exact linear algebra over [`Scalar`]: ranks, combinations and 4x4 matrices.

use crate::error::{Error, Result};
use crate::field::Scalar;

pub type Mat4 = [[Scalar; 4]; 4];

/// Row-reduce `rows` in place and return the rank.
fn eliminate(rows: &mut [Vec<Scalar>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &pivot;
            for c in col..ncols {
                let v = &rows[r][c] - &(&factor * &rows[rank][c]);
                rows[r][c] = v;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank of a family of 4-vectors.
pub fn rank(vectors: &[[Scalar; 4]]) -> usize {
    let mut rows: Vec<Vec<Scalar>> = vectors.iter().map(|v| v.to_vec()).collect();
    eliminate(&mut rows)
}

/// Do `a` and `b` span at most a line? Equivalent to `rank(&[a, b]) <= 1`,
/// by vanishing 2x2 minors, without division.
pub fn dependent(a: &[Scalar; 4], b: &[Scalar; 4]) -> bool {
    (0..4).all(|i| (i + 1..4).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

/// Coefficients `c` with `sum c_i basis_i = target`, if the target is in the span.
/// The basis is assumed linearly independent.
pub fn combination(target: &[Scalar; 4], basis: &[[Scalar; 4]]) -> Option<Vec<Scalar>> {
    let k = basis.len();
    // Augmented system: 4 equations, k unknowns.
    let mut rows: Vec<Vec<Scalar>> = (0..4)
        .map(|i| {
            let mut row: Vec<Scalar> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let r = eliminate(&mut rows);
    let mut coeffs = vec![Scalar::zero(); k];
    for row in rows.iter().take(r) {
        let lead = row.iter().position(|x| !x.is_zero())?;
        if lead == k {
            return None;
        }
        coeffs[lead] = &row[k] / &row[lead];
    }
    Some(coeffs)
}

pub fn identity() -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Scalar::one() } else { Scalar::zero() }))
}

pub fn mat_vec(m: &Mat4, v: &[Scalar; 4]) -> [Scalar; 4] {
    std::array::from_fn(|i| {
        let mut acc = Scalar::zero();
        for (a, b) in m[i].iter().zip(v) {
            acc = &acc + &(a * b);
        }
        acc
    })
}

pub fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = Scalar::zero();
            for k in 0..4 {
                acc = &acc + &(&a[i][k] * &b[k][j]);
            }
            acc
        })
    })
}

/// Exact inverse by Gauss-Jordan elimination.
pub fn invert(m: &Mat4) -> Result<Mat4> {
    let mut rows: Vec<Vec<Scalar>> = (0..4)
        .map(|i| {
            let mut row = m[i].to_vec();
            row.extend((0..4).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            row
        })
        .collect();
    for col in 0..4 {
        let p = (col..4).find(|&r| !rows[r][col].is_zero()).ok_or(Error::SingularMap)?;
        rows.swap(col, p);
        let pivot = rows[col][col].recip()?;
        for c in 0..8 {
            rows[col][c] = &rows[col][c] * &pivot;
        }
        for r in 0..4 {
            if r == col || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in 0..8 {
                let v = &rows[r][c] - &(&factor * &rows[col][c]);
                rows[r][c] = v;
            }
        }
    }
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| rows[i][j + 4].clone())))
}

pub fn determinant(m: &Mat4) -> Scalar {
    let mut rows: Vec<Vec<Scalar>> = m.iter().map(|r| r.to_vec()).collect();
    let mut det = Scalar::one();
    for col in 0..4 {
        let Some(p) = (col..4).find(|&r| !rows[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if p != col {
            rows.swap(col, p);
            det = -det;
        }
        det = &det * &rows[col][col];
        for r in col + 1..4 {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &rows[col][col];
            for c in col..4 {
                let v = &rows[r][c] - &(&factor * &rows[col][c]);
                rows[r][c] = v;
            }
        }
    }
    det
}

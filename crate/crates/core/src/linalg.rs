//! Small dense exact linear algebra over `Q`.

#![allow(clippy::needless_range_loop)]

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type QMatrix = Vec<Vec<BigRational>>;

pub(crate) fn to_q(rows: &[Vec<i64>]) -> QMatrix {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect()
}

/// Rank of the row space.
pub(crate) fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: QMatrix = rows.to_vec();
    row_echelon(&mut m)
}

/// Reduces in place to row echelon form and returns the rank.
pub(crate) fn row_echelon(m: &mut QMatrix) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(pivot) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        r += 1;
        if r == nrows {
            break;
        }
    }
    r
}

/// Inverse of a square matrix, `None` if singular.
pub(crate) fn inverse(a: &[Vec<BigRational>]) -> Option<QMatrix> {
    let n = a.len();
    let mut aug: QMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    // Echelon on the augmented matrix pivots in the left block iff invertible.
    for c in 0..n {
        let left_rank = c;
        let pivot = (left_rank..n).find(|&i| !aug[i][c].is_zero())?;
        aug.swap(left_rank, pivot);
        let inv = aug[left_rank][c].recip();
        for x in aug[left_rank].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != left_rank && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..2 * n {
                    let delta = &f * &aug[left_rank][j];
                    aug[i][j] -= delta;
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub(crate) fn determinant(a: &[Vec<BigRational>]) -> BigRational {
    let n = a.len();
    let mut m: QMatrix = a.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(pivot) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != c {
            m.swap(c, pivot);
            det = -det;
        }
        det *= &m[c][c];
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[c][c];
                for j in c..n {
                    let delta = &f * &m[c][j];
                    m[i][j] -= delta;
                }
            }
        }
    }
    det
}

/// `(positive, negative, zero)` counts of a symmetric form, by congruence
/// diagonalization.
pub(crate) fn signature(gram: &[Vec<BigRational>]) -> (usize, usize, usize) {
    let mut m: QMatrix = gram.to_vec();
    let n = m.len();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    for k in 0..n {
        if m[k][k].is_zero() {
            // Bring a nonzero diagonal entry into position, or create one.
            if let Some(i) = (k + 1..n).find(|&i| !m[i][i].is_zero()) {
                swap_sym(&mut m, k, i);
            } else if let Some(i) = (k + 1..n).find(|&i| !m[k][i].is_zero()) {
                // e_k <- e_k + e_i gives diagonal 2 m[k][i] (m[i][i] = 0).
                add_sym(&mut m, k, i);
            }
        }
        let d = m[k][k].clone();
        if d.is_zero() {
            zero += 1;
            continue;
        }
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        // Schur complement of the pivot.
        let pivot_row: Vec<BigRational> = m[k].clone();
        for i in k + 1..n {
            if pivot_row[i].is_zero() {
                continue;
            }
            let f = &pivot_row[i] / &d;
            for j in k + 1..n {
                let delta = &f * &pivot_row[j];
                m[i][j] -= delta;
            }
        }
        for i in k + 1..n {
            m[i][k] = BigRational::zero();
            m[k][i] = BigRational::zero();
        }
    }
    (pos, neg, zero)
}

fn swap_sym(m: &mut QMatrix, a: usize, b: usize) {
    m.swap(a, b);
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Basis change `e_a <- e_a + e_b` applied as a congruence.
fn add_sym(m: &mut QMatrix, a: usize, b: usize) {
    let n = m.len();
    for j in 0..n {
        let v = m[b][j].clone();
        m[a][j] += v;
    }
    for i in 0..n {
        let v = m[i][b].clone();
        m[i][a] += v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_inverse() {
        let m = to_q(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(rank(&m), 1);
        assert!(inverse(&m).is_none());
        let m = to_q(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(inverse(&m).unwrap(), to_q(&[vec![1, -1], vec![-1, 2]]));
        assert_eq!(determinant(&m), BigRational::one());
    }

    #[test]
    fn signatures() {
        assert_eq!(
            signature(&to_q(&[vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]])),
            (1, 2, 0)
        );
        // Hyperbolic plane plus a negative line.
        assert_eq!(
            signature(&to_q(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -1]])),
            (1, 2, 0)
        );
        assert_eq!(signature(&to_q(&[vec![0, 0], vec![0, 0]])), (0, 0, 2));
    }
}

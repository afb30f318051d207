use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{LinalgError, Rational};

/// Dense integer matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::BadShape {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows(rows: &[Vec<BigInt>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(LinalgError::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().cloned().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, LinalgError> {
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        Self {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn sub_multiple(target: &mut [BigInt], source: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

/// Row Hermite normal form. Zero rows are dropped, so the result has exactly
/// `rank` rows; pivots are positive and entries above a pivot lie in
/// `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, usize) {
    let mut a = m.to_rows();
    let nrows = a.len();
    let mut pivot = 0;
    for col in 0..m.cols() {
        if pivot == nrows {
            break;
        }
        loop {
            let best = (pivot..nrows)
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()));
            let Some(best) = best else { break };
            a.swap(pivot, best);
            let mut cleared = true;
            for i in pivot + 1..nrows {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[pivot][col]);
                let (head, tail) = a.split_at_mut(i);
                sub_multiple(&mut tail[0], &head[pivot], &q);
                if !a[i][col].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if a[pivot][col].is_zero() {
            continue;
        }
        if a[pivot][col].is_negative() {
            for x in &mut a[pivot] {
                *x = -x.clone();
            }
        }
        for i in 0..pivot {
            let q = a[i][col].div_floor(&a[pivot][col]);
            let (head, tail) = a.split_at_mut(pivot);
            sub_multiple(&mut head[i], &tail[0], &q);
        }
        pivot += 1;
    }
    a.truncate(pivot);
    let h = IntMatrix {
        rows: pivot,
        cols: m.cols(),
        entries: a.into_iter().flatten().collect(),
    };
    (h, pivot)
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn int_det(m: &IntMatrix) -> Result<BigInt, LinalgError> {
    if m.rows() != m.cols() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.to_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// Rank of a list of integer rows.
pub fn int_rank(rows: &[Vec<BigInt>]) -> usize {
    let Some(cols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            if a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            let g = a[rank][col].clone();
            for j in col..cols {
                a[i][j] = &a[i][j] * &g - &a[rank][j] * &f;
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Inverse of a square rational matrix given by rows, or `None` if singular.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for x in &mut a[col] {
            *x *= &inv;
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..2 * n {
                let delta = &f * &a[col][j];
                a[i][j] -= delta;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Whether the rows of `m` are linearly independent and extend to a Z-basis
/// of Z^cols: the row HNF of the transpose must have every pivot equal to 1.
pub fn saturated_rows(m: &IntMatrix) -> bool {
    let (h, rank) = hnf(&m.transpose());
    if rank != m.rows() {
        return false;
    }
    (0..rank).all(|i| {
        h.row(i)
            .iter()
            .find(|x| !x.is_zero())
            .is_some_and(|p| p.is_one())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn hnf_identity() {
        let (h, rank) = hnf(&IntMatrix::identity(4));
        assert_eq!(h, IntMatrix::identity(4));
        assert_eq!(rank, 4);
    }

    #[test]
    fn hnf_scaled_generators_of_a4_lattice() {
        let (h, rank) = hnf(&m(&[&[5, 0], &[0, 5], &[1, 4]]));
        assert_eq!(h, m(&[&[1, 4], &[0, 5]]));
        assert_eq!(rank, 2);
    }

    #[test]
    fn hnf_half_lattice() {
        let (h, rank) = hnf(&m(&[&[2, 0], &[0, 2], &[1, 1]]));
        assert_eq!(h, m(&[&[1, 1], &[0, 2]]));
        assert_eq!(rank, 2);
    }

    #[test]
    fn hnf_drops_dependent_rows() {
        let (h, rank) = hnf(&m(&[&[2, 4, 6], &[1, 2, 3], &[0, 0, 0]]));
        assert_eq!(rank, 1);
        assert_eq!(h, m(&[&[1, 2, 3]]));
    }

    #[test]
    fn determinants() {
        assert_eq!(int_det(&IntMatrix::identity(3)).unwrap(), int(1));
        assert_eq!(int_det(&m(&[&[5, -4], &[4, -3]])).unwrap(), int(1));
        assert_eq!(int_det(&m(&[&[2, 0], &[0, 2]])).unwrap(), int(4));
        assert_eq!(int_det(&m(&[&[0, 1], &[1, 0]])).unwrap(), int(-1));
        assert_eq!(
            int_det(&m(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 1]])).unwrap(),
            int(-3)
        );
    }

    #[test]
    fn determinant_of_non_square_is_an_error() {
        let err = int_det(&m(&[&[1, 2, 3], &[4, 5, 6]])).unwrap_err();
        assert_eq!(err, LinalgError::NotSquare { rows: 2, cols: 3 });
    }

    #[test]
    fn rank_and_inverse() {
        let rows = m(&[&[1, 2], &[2, 4], &[0, 1]]).to_rows();
        assert_eq!(int_rank(&rows), 2);
        let b = vec![vec![rat(1, 5), rat(4, 5)], vec![rat(0, 1), rat(1, 1)]];
        let inv = invert(&b).unwrap();
        assert_eq!(inv[0], vec![rat(5, 1), rat(-4, 1)]);
        assert_eq!(inv[1], vec![rat(0, 1), rat(1, 1)]);
        assert!(invert(&[vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]]).is_none());
    }

    #[test]
    fn saturation() {
        assert!(saturated_rows(&m(&[&[2, 1]])));
        assert!(!saturated_rows(&m(&[&[2, 0]])));
        assert!(saturated_rows(&m(&[&[1, 0, 0], &[0, 1, 0]])));
        assert!(!saturated_rows(&m(&[&[1, 1, 0], &[1, -1, 0]])));
        assert!(!saturated_rows(&m(&[&[1, 2], &[2, 4]])));
    }
}

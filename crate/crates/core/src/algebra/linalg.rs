//! Exact linear algebra: a small dense rational matrix with a solver, plus
//! integer kernels (determinant, adjugate, rank, normals) used by the
//! geometry modules on hot paths.

use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rat;
use crate::error::{Error, Result};

pub type QVector = Vec<Rat>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn from_rows(rows: &[Vec<Rat>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "rectangular rows");
        Self {
            rows: r,
            cols: c,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    /// Matrix whose columns are the given integer vectors.
    pub fn from_int_columns(cols: &[Vec<i64>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in cols {
                data.push(Rat::from_integer(col[i].into()));
            }
        }
        Self { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

/// Solves `A x = b` exactly for a full-column-rank `A`.
pub fn solve_linear(a: &QMatrix, b: &[Rat]) -> Result<QVector> {
    assert_eq!(a.rows, b.len(), "rhs length matches row count");
    let (m, n) = (a.rows, a.cols);
    let mut aug: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rat> = (0..n).map(|j| a.get(i, j).clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..n {
        let Some(p) = (pivot_row..m).find(|&r| !aug[r][col].is_zero()) else {
            return Err(Error::RankDeficient);
        };
        aug.swap(pivot_row, p);
        let inv = aug[pivot_row][col].recip();
        for x in aug[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m {
            if r != pivot_row && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for j in col..=n {
                    let delta = &f * &aug[pivot_row][j];
                    aug[r][j] -= delta;
                }
            }
        }
        pivot_row += 1;
    }
    if aug[n..].iter().any(|row| !row[n].is_zero()) {
        return Err(Error::Inconsistent);
    }
    Ok(aug[..n].iter().map(|row| row[n].clone()).collect())
}

/// Determinant of a square integer matrix (fraction-free Bareiss).
pub fn int_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Rank of an integer matrix given by rows.
pub fn int_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            if a[r][col] != 0 {
                let (x, y) = (a[rank][col], a[r][col]);
                for j in col..cols {
                    a[r][j] = a[r][j] * x - a[rank][j] * y;
                }
                let g = a[r].iter().fold(0i128, |g, v| g.gcd(v));
                if g > 1 {
                    for v in a[r].iter_mut() {
                        *v /= g;
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Adjugate and determinant of a square matrix given by columns `B`, so that
/// `adj * v = det * B^{-1} v`. The sign is normalized to make `det > 0`.
pub fn adjugate_of_columns(cols: &[Vec<i64>]) -> (Vec<Vec<i64>>, i64) {
    let n = cols.len();
    // Row-major B with B[i][j] = cols[j][i].
    let b: Vec<Vec<i64>> = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let det = int_det(&b);
    let mut adj = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| b[r][c]).collect())
                .collect();
            let cof = int_det(&minor) * if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = cof as i64;
        }
    }
    if det < 0 {
        for row in adj.iter_mut() {
            for x in row.iter_mut() {
                *x = -*x;
            }
        }
    }
    (adj, det.abs() as i64)
}

/// Normal to the hyperplane spanned by `n - 1` vectors in `Z^n`: the vector
/// of signed maximal minors. Zero iff the vectors are dependent.
pub fn cofactor_normal(vectors: &[Vec<i64>]) -> Vec<i64> {
    let n = vectors.len() + 1;
    (0..n)
        .map(|skip| {
            let minor: Vec<Vec<i64>> = vectors
                .iter()
                .map(|v| (0..n).filter(|&c| c != skip).map(|c| v[c]).collect())
                .collect();
            let d = int_det(&minor);
            (if skip % 2 == 0 { d } else { -d }) as i64
        })
        .collect()
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, x| g.gcd(x))
}

/// Splits `v` into `(primitive, multiplier)` with `v = multiplier * primitive`.
pub fn primitive(v: &[i64]) -> (Vec<i64>, i64) {
    let g = gcd_all(v);
    if g == 0 {
        return (v.to_vec(), 0);
    }
    (v.iter().map(|x| x / g).collect(), g)
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Index of the lattice generated by the columns inside its saturation:
/// gcd of the maximal minors.
pub fn sublattice_index(cols: &[Vec<i64>]) -> i64 {
    let k = cols.len();
    if k == 0 {
        return 1;
    }
    let d = cols[0].len();
    let mut g = 0i128;
    for rows in combinations(d, k) {
        let minor: Vec<Vec<i64>> = rows
            .iter()
            .map(|&r| cols.iter().map(|c| c[r]).collect())
            .collect();
        g = g.gcd(&int_det(&minor));
    }
    g as i64
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn is_one(r: &Rat) -> bool {
    r.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn cramer2(c1: [i64; 2], c2: [i64; 2], rhs: [i64; 2]) -> (Rat, Rat) {
        let det = c1[0] * c2[1] - c2[0] * c1[1];
        let x = rhs[0] * c2[1] - c2[0] * rhs[1];
        let y = c1[0] * rhs[1] - rhs[0] * c1[1];
        (rat(x, det), rat(y, det))
    }

    #[test]
    fn solve_examples() {
        let id = QMatrix::from_int_columns(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(solve_linear(&id, &[int(3), int(-2)]).unwrap(), vec![int(3), int(-2)]);

        let a = QMatrix::from_int_columns(&[vec![-1, 2], vec![-2, 1]]);
        let (x, y) = cramer2([-1, 2], [-2, 1], [-1, 1]);
        assert_eq!((x.clone(), y.clone()), (rat(1, 3), rat(1, 3)));
        assert_eq!(solve_linear(&a, &[int(-1), int(1)]).unwrap(), vec![x, y]);
        let (x, y) = cramer2([-1, 2], [-2, 1], [-2, 2]);
        assert_eq!(solve_linear(&a, &[int(-2), int(2)]).unwrap(), vec![x, y]);
        assert_eq!(
            solve_linear(&a, &[int(-2), int(2)]).unwrap(),
            vec![rat(2, 3), rat(2, 3)]
        );
    }

    #[test]
    fn solve_errors() {
        let a = QMatrix::from_int_columns(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(solve_linear(&a, &[int(1), int(2)]), Err(Error::RankDeficient));
        let tall = QMatrix::from_int_columns(&[vec![1, 0, 0]]);
        assert_eq!(solve_linear(&tall, &[int(1), int(1), int(0)]), Err(Error::Inconsistent));
        assert_eq!(solve_linear(&tall, &[int(5), int(0), int(0)]).unwrap(), vec![int(5)]);
    }

    #[test]
    fn integer_kernels() {
        assert_eq!(int_det(&[vec![2, 1], vec![1, 3]]), 5);
        assert_eq!(int_det(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]), -1);
        assert_eq!(int_rank(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]), 2);
        let (adj, det) = adjugate_of_columns(&[vec![-1, 2], vec![-2, 1]]);
        assert_eq!(det, 3);
        let v = [-1i64, 1];
        let coords: Vec<i64> = adj.iter().map(|r| dot(r, &v)).collect();
        assert_eq!(coords, vec![1, 1]);
        let nrm = cofactor_normal(&[vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(nrm, vec![0, 0, 1]);
        assert_eq!(primitive(&[4, -6]), (vec![2, -3], 2));
        assert_eq!(sublattice_index(&[vec![0, 2]]), 2);
        assert_eq!(sublattice_index(&[vec![-1, 2], vec![-2, 1]]), 3);
        assert_eq!(combinations(4, 2).len(), 6);
    }
}

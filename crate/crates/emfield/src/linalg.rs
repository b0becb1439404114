//! Dense exact linear algebra over a scalar field.
//!
//! Used for rational null-space computations (polynomial Maxwell solution
//! bases, conformal Killing parameter fitting, dual polarizations) and for
//! the integer dimension audits of the symmetry and current spans. Sizes are
//! small (at most a few hundred rows), so plain fraction-exact Gaussian
//! elimination is sufficient.

use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Clone, Debug)]
pub struct Mat<S> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    /// Reduced row echelon form; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                self.data.swap(row * self.cols + j, p * self.cols + j);
            }
            let inv = S::one().div(self.get(row, col));
            for j in col..self.cols {
                let v = self.get(row, j).mul(&inv);
                self.set(row, j, v);
            }
            for i in 0..self.rows {
                if i == row || self.get(i, col).is_zero() {
                    continue;
                }
                let f = self.get(i, col).clone();
                for j in col..self.cols {
                    let v = self.get(i, j).sub(&f.mul(self.get(row, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right null space `{ v : M v = 0 }`.
    pub fn null_space(&self) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let is_pivot = |c: usize| pivots.contains(&c);
        for free in (0..self.cols).filter(|&c| !is_pivot(c)) {
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m.get(r, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// One particular solution of `M x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // row [0 .. 0 | 1]
        }
        let mut x = vec![S::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn r(n: i64) -> Rat {
        Rat::int(n)
    }

    #[test]
    fn rank_and_null_space() {
        // Row space is 2-dimensional, null space 1-dimensional.
        let m = Mat::from_rows(vec![
            vec![r(1), r(2), r(3)],
            vec![r(2), r(4), r(6)],
            vec![r(0), r(1), r(1)],
        ]);
        assert_eq!(m.rank(), 2);
        let ns = m.null_space();
        assert_eq!(ns.len(), 1);
        // Check M v = 0 exactly.
        for i in 0..m.rows {
            let mut acc = Rat::int(0);
            for j in 0..m.cols {
                acc = acc.add(&m.get(i, j).mul(&ns[0][j]));
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Mat::from_rows(vec![vec![r(2), r(0)], vec![r(0), r(3)]]);
        let x = m.solve(&[r(1), r(1)]).unwrap();
        assert_eq!(x, vec![Rat::ratio(1, 2), Rat::ratio(1, 3)]);

        let sing = Mat::from_rows(vec![vec![r(1), r(1)], vec![r(1), r(1)]]);
        assert!(sing.solve(&[r(0), r(1)]).is_none());
        assert!(sing.solve(&[r(1), r(1)]).is_some());
    }
}

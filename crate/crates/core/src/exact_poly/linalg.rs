//! Dense exact linear algebra: row reduction, kernels, linear solves.

use super::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Panics if rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| F::from_i64(x)).collect()).collect(), cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// `[self | o]`
    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows);
        let cols = self.cols + o.cols;
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().chain(o.row(i)).cloned().collect())
            .collect();
        Self::from_rows(rows, cols)
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_mul_assign(a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let mut v = out.get(i, j).clone();
                        v.add_mul_assign(a, b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Reduced row echelon form in place, pivoting only within the first
    /// `limit` columns. Returns the pivot columns.
    pub fn rref_limited(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit.min(self.cols) {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inverse();
            for j in c..self.cols {
                let v = self.get(r, j).times(&inv);
                self.set(r, j, v);
            }
            let pivot_row: Vec<(usize, F)> = (c..self.cols)
                .filter(|&j| !self.get(r, j).is_zero())
                .map(|j| (j, self.get(r, j).clone()))
                .collect();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for (j, v) in &pivot_row {
                    let nv = self.get(i, *j).minus(&f.times(v));
                    self.set(i, *j, nv);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&mut self) -> Vec<usize> {
        self.rref_limited(self.cols)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = m.get(r, f).negated();
                }
                v
            })
            .collect()
    }

    /// Basis of `{y : yᵀ A = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<F>> {
        let mut aug = self.hstack(&Self::identity(self.rows));
        let pivots = aug.rref_limited(self.cols);
        (pivots.len()..self.rows).map(|i| aug.row(i)[self.cols..].to_vec()).collect()
    }
}

/// Result of row-reducing `[A | B]` on the columns of `A`.
#[derive(Clone, Debug)]
pub struct LinearSolution<F> {
    /// Reduced row echelon form of `A`.
    pub reduced: Matrix<F>,
    /// `B` after the same row operations.
    pub rhs: Matrix<F>,
    pub pivots: Vec<usize>,
    pub free: Vec<usize>,
    /// Per right-hand-side column: whether `A x = b` is solvable.
    pub consistent: Vec<bool>,
}

impl<F: Field> LinearSolution<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Solution of `A x = b_k` with all free variables zero, if consistent.
    pub fn particular(&self, k: usize) -> Option<Vec<F>> {
        if !self.consistent[k] {
            return None;
        }
        let mut x = vec![F::zero(); self.reduced.cols()];
        for (r, &p) in self.pivots.iter().enumerate() {
            x[p] = self.rhs.get(r, k).clone();
        }
        Some(x)
    }

    /// Pivot variable `p` as `constant_k − Σ_free a_f x_f`; returns `(rhs row, [(f, a_f)])`.
    pub fn pivot_expression(&self, row: usize) -> Vec<(usize, F)> {
        self.free
            .iter()
            .filter(|&&f| !self.reduced.get(row, f).is_zero())
            .map(|&f| (f, self.reduced.get(row, f).clone()))
            .collect()
    }
}

/// Row-reduces `A x = B` exactly. Inconsistency is reported per column, never as an error.
pub fn solve_linear<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> LinearSolution<F> {
    assert_eq!(a.rows(), b.rows(), "system and right-hand side differ in row count");
    let mut aug = a.hstack(b);
    let pivots = aug.rref_limited(a.cols());
    let n = a.cols();
    let split = |m: &Matrix<F>, lo: usize, hi: usize| {
        Matrix::from_rows((0..m.rows()).map(|i| m.row(i)[lo..hi].to_vec()).collect(), hi - lo)
    };
    let reduced = split(&aug, 0, n);
    let rhs = split(&aug, n, n + b.cols());
    let consistent = (0..b.cols())
        .map(|k| (pivots.len()..a.rows()).all(|i| rhs.get(i, k).is_zero()))
        .collect();
    let free = (0..n).filter(|c| !pivots.contains(c)).collect();
    LinearSolution { reduced, rhs, pivots, free, consistent }
}

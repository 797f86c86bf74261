use std::fmt;

use super::ring::{Field, IntegralDomain, Ring};
use super::AlgebraError;

/// Dense row-major matrix over a ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Ring> Matrix<K> {
    pub fn from_fn<F: FnMut(usize, usize) -> K>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Rows of length `cols`, allowing zero-row matrices with a set width.
    pub fn with_shape(rows: usize, cols: usize, data: Vec<K>) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::DimensionMismatch(format!("{} entries for {rows}x{cols}", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| K::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { K::one() } else { K::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<K> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map<L: Ring, F: Fn(&K) -> L>(&self, f: F) -> Matrix<L> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, k: &K) -> Self {
        self.map(|x| x.mul_ref(k))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).add_ref(other.get(i, j))))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).sub_ref(other.get(i, j))))
    }

    fn same_shape(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(K::zero(), |acc, k| acc.add_ref(&self.get(i, k).mul_ref(other.get(k, j))))
        }))
    }

    pub fn mul_vec(&self, v: &[K]) -> Result<Vec<K>, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(K::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b))))
            .collect())
    }

    pub fn trace(&self) -> Result<K, AlgebraError> {
        self.require_square()?;
        Ok((0..self.rows).fold(K::zero(), |acc, i| acc.add_ref(self.get(i, i))))
    }

    fn require_square(&self) -> Result<(), AlgebraError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(AlgebraError::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self, AlgebraError> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(AlgebraError::DimensionMismatch("incompatible blocks".into()));
        }
        let (r, s) = (a.rows, c.rows);
        let (p, q) = (a.cols, b.cols);
        Ok(Self::from_fn(r + s, p + q, |i, j| match (i < r, j < p) {
            (true, true) => a.get(i, j).clone(),
            (true, false) => b.get(i, j - p).clone(),
            (false, true) => c.get(i - r, j).clone(),
            (false, false) => d.get(i - r, j - p).clone(),
        }))
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let n = self.rows;
        Self::from_fn(n - 1, n - 1, |i, j| {
            let ii = if i < skip_row { i } else { i + 1 };
            let jj = if j < skip_col { j } else { j + 1 };
            self.get(ii, jj).clone()
        })
    }
}

impl<K: IntegralDomain> Matrix<K> {
    /// Fraction-free (Bareiss) determinant: every division is exact.
    pub fn det_bareiss(&self) -> Result<K, AlgebraError> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(K::one());
        }
        let mut a = self.data.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut sign_flip = false;
        let mut prev = K::one();
        for k in 0..n - 1 {
            if a[idx(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[idx(i, k)].is_zero()) else {
                    return Ok(K::zero());
                };
                for j in 0..n {
                    a.swap(idx(k, j), idx(p, j));
                }
                sign_flip = !sign_flip;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[idx(i, j)].mul_ref(&a[idx(k, k)]).sub_ref(&a[idx(i, k)].mul_ref(&a[idx(k, j)]));
                    a[idx(i, j)] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
                a[idx(i, k)] = K::zero();
            }
            prev = a[idx(k, k)].clone();
        }
        let d = a[idx(n - 1, n - 1)].clone();
        Ok(if sign_flip { d.neg_ref() } else { d })
    }

    /// Adjugate via cofactor determinants; `self * adj = det * I`.
    pub fn adjugate(&self) -> Result<Self, AlgebraError> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(Self::zeros(0, 0));
        }
        if n == 1 {
            return Ok(Self::identity(1));
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let m = self.minor(i, j).det_bareiss()?;
                out.set(j, i, if (i + j) % 2 == 0 { m } else { m.neg_ref() });
            }
        }
        Ok(out)
    }
}

impl<K: Field> Matrix<K> {
    /// Determinant by Gaussian elimination over a field.
    pub fn det_gauss(&self) -> Result<K, AlgebraError> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.clone();
        let mut det = K::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Ok(K::zero());
            };
            if p != k {
                a.swap_rows(p, k);
                det = det.neg_ref();
            }
            let pivot = a.get(k, k).clone();
            det = det.mul_ref(&pivot);
            let inv = pivot.inv().expect("nonzero pivot");
            for i in k + 1..n {
                let f = a.get(i, k).mul_ref(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = a.get(i, j).sub_ref(&f.mul_ref(a.get(k, j)));
                    a.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form and its pivot columns (leftmost first).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = a.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = a.get(r, j).mul_ref(&inv);
                a.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in c..self.cols {
                    let v = a.get(i, j).sub_ref(&f.mul_ref(a.get(r, j)));
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Right null space basis: one vector per free column (in column order),
    /// with that free variable set to one and the other free variables zero.
    pub fn kernel(&self) -> Vec<Vec<K>> {
        let (r, pivots) = self.rref();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![K::zero(); self.cols];
                v[free] = K::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.get(row, free).neg_ref();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        self.require_square()?;
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                K::one()
            } else {
                K::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(AlgebraError::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| r.get(i, j + n).clone()))
    }
}

impl<K: Ring + fmt::Display> fmt::Display for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

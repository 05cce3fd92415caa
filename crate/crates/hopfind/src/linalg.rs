//! Dense exact linear algebra over cyclotomic scalars.
//!
//! Everything here is plain Gaussian elimination over the field
//! `Q(zeta_N)`; no pivoting heuristics are needed because the arithmetic is
//! exact. Sparse column vectors (`SparseVec`) are the workhorse of the
//! structure-constant evaluators in [`crate::hopf`] and
//! [`crate::indicators`].

use crate::cyclotomic::CycNumber;

/// Sparse vector: strictly increasing indices, nonzero entries.
pub type SparseVec = Vec<(usize, CycNumber)>;

/// Collapses duplicate indices, drops zeros, sorts by index.
pub fn sparse_normalize(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        if let Some((j, acc)) = out.last_mut() {
            if *j == i {
                *acc = &*acc + &c;
                continue;
            }
        }
        out.push((i, c));
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

pub fn sparse_from_dense(v: &[CycNumber]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, dim: usize, conductor: u64) -> Vec<CycNumber> {
    let mut out = vec![CycNumber::zero(conductor); dim];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// A dense matrix of cyclotomic scalars, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CycNumber>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, conductor: u64) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![CycNumber::zero(conductor); rows * cols],
        }
    }

    pub fn identity(n: usize, conductor: u64) -> Self {
        let mut m = Self::zero(n, n, conductor);
        for i in 0..n {
            m.set(i, i, CycNumber::one(conductor));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycNumber>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose j-th column is `cols[j]`.
    pub fn from_sparse_cols(dim: usize, cols: &[SparseVec], conductor: u64) -> Self {
        let mut m = Self::zero(dim, cols.len(), conductor);
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col {
                m.set(*i, j, c.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycNumber {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycNumber) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<CycNumber> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn sparse_column(&self, c: usize) -> SparseVec {
        (0..self.rows)
            .filter(|&r| !self.get(r, c).is_zero())
            .map(|r| (r, self.get(r, c).clone()))
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows, 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn trace(&self) -> CycNumber {
        assert_eq!(self.rows, self.cols);
        let mut t = CycNumber::from_integer(0);
        for i in 0..self.rows {
            t = &t + self.get(i, i);
        }
        t
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols, 1);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let cur = out.get(r, c).clone();
                        out.set(r, c, &cur + &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[CycNumber]) -> Vec<CycNumber> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = CycNumber::from_integer(0);
                for c in 0..self.cols {
                    let a = self.get(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc = &acc + &(a * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn apply_sparse(&self, v: &SparseVec) -> SparseVec {
        let mut out: SparseVec = Vec::new();
        for (c, x) in v {
            for r in 0..self.rows {
                let a = self.get(r, *c);
                if !a.is_zero() {
                    out.push((r, a * x));
                }
            }
        }
        sparse_normalize(out)
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if r == c {
                    if !v.is_one() {
                        return false;
                    }
                } else if !v.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycNumber::is_zero)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row-echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            for c in 0..self.cols {
                self.data.swap(rank * self.cols + c, p * self.cols + c);
            }
            let inv = self.get(rank, col).inv().unwrap();
            for c in col..self.cols {
                let v = self.get(rank, c) * &inv;
                self.set(rank, c, v);
            }
            for r in 0..self.rows {
                if r != rank && !self.get(r, col).is_zero() {
                    let f = self.get(r, col).clone();
                    for c in col..self.cols {
                        let v = self.get(r, c) - &(&f * self.get(rank, c));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel `{v : Av = 0}`.
    pub fn kernel(&self) -> Vec<Vec<CycNumber>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            pivot_of_col[c] = Some(r);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![CycNumber::from_integer(0); self.cols];
            v[free] = CycNumber::from_integer(1);
            for (c, pr) in pivot_of_col.iter().enumerate() {
                if let Some(r) = pr {
                    v[c] = -m.get(*r, free);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `Ax = b`; `None` when inconsistent. When the solution space is
    /// positive-dimensional, free variables are set to zero.
    pub fn solve(&self, b: &[CycNumber]) -> Option<Vec<CycNumber>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Matrix::zero(self.rows, self.cols + 1, 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![CycNumber::from_integer(0); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n, 1);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, CycNumber::from_integer(1));
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        let mut inv = Matrix::zero(n, n, 1);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    /// Smallest `t` in `1..=bound` with `M^t = I`, if any.
    pub fn multiplicative_order(&self, bound: u64) -> Option<u64> {
        let mut p = self.clone();
        for t in 1..=bound {
            if p.is_identity() {
                return Some(t);
            }
            p = p.matmul(self);
        }
        None
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

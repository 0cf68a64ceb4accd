use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use super::field::Fp;

/// Dense row-major matrix over 𝔽_p.
///
/// Matrices act on column vectors from the left. Tensor products of spaces
/// follow the Kronecker convention: basis vector `e_i ⊗ f_j` sits at index
/// `i * dim(F) + j`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMatrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Quotient of 𝔽_p^n by the span of a family of vectors.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub dim: usize,
    /// `dim × n`, kills exactly the relation span.
    pub projection: FpMatrix,
    /// `n × dim`, with `projection * section = I`.
    pub section: FpMatrix,
}

impl FpMatrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        FpMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p();
        }
        m
    }

    pub fn from_fn(field: Fp, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(field.reduce(f(i, j)));
            }
        }
        FpMatrix { field, rows, cols, data }
    }

    /// Builds a matrix from signed integer rows, reducing mod p.
    pub fn from_rows(field: Fp, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn from_vec(field: Fp, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        let data = data.into_iter().map(|x| field.reduce(x)).collect();
        FpMatrix { field, rows, cols, data }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: Fp, rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &x) in col.iter().enumerate() {
                m[(i, j)] = field.reduce(x);
            }
        }
        m
    }

    pub fn column_vector(field: Fp, v: &[u64]) -> Self {
        Self::from_columns(field, v.len(), &[v.to_vec()])
    }

    pub fn row_vector(field: Fp, v: &[u64]) -> Self {
        Self::from_vec(field, 1, v.len(), v.to_vec())
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.field, self.rows)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        assert_eq!(self.field, other.field);
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o = (*o + a * b) % f.p();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| (acc + a * b) % f.p())
            })
            .collect()
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        FpMatrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        FpMatrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u64) -> FpMatrix {
        let f = self.field;
        let c = f.reduce(c);
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        FpMatrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    /// Kronecker product: row index `i_A * rows_B + i_B`, column likewise.
    pub fn kron(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.field, other.field);
        let f = self.field;
        let (br, bc) = (other.rows, other.cols);
        Self::from_fn(f, self.rows * br, self.cols * bc, |i, j| {
            f.mul(self[(i / br, j / bc)], other[(i % br, j % bc)])
        })
    }

    pub fn hstack(blocks: &[&FpMatrix]) -> FpMatrix {
        let first = blocks.first().expect("hstack of nothing");
        let rows = first.rows;
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(first.field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            for i in 0..rows {
                for j in 0..b.cols {
                    out[(i, off + j)] = b[(i, j)];
                }
            }
            off += b.cols;
        }
        out
    }

    pub fn vstack(blocks: &[&FpMatrix]) -> FpMatrix {
        let first = blocks.first().expect("vstack of nothing");
        let cols = first.cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        FpMatrix { field: first.field, rows, cols, data }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[&FpMatrix]) -> FpMatrix {
        let field = blocks.first().expect("direct sum of nothing").field;
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &FpMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FpMatrix {
        Self::from_fn(self.field, rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn select_columns(&self, cols: &[usize]) -> FpMatrix {
        Self::from_fn(self.field, self.rows, cols.len(), |i, j| self[(i, cols[j])])
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m[(i, c)] != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m[(r, c)]);
            for j in c..m.cols {
                m[(r, j)] = f.mul(m[(r, j)], inv);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m[(i, c)];
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let sub = f.mul(factor, m[(r, j)]);
                    m[(i, j)] = f.sub(m[(i, j)], sub);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of the right null space.
    pub fn kernel_basis(&self) -> FpMatrix {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out[(fc, k)] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                out[(pc, k)] = f.neg(r[(i, fc)]);
            }
        }
        out
    }

    /// Basis (as columns, canonical from rref) of the column space.
    pub fn column_space(&self) -> FpMatrix {
        let (r, pivots) = self.transpose().rref();
        let rank = pivots.len();
        r.block(0, 0, rank, self.rows).transpose()
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = FpMatrix::hstack(&[self, &FpMatrix::identity(self.field, n)]);
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    /// Extends the independent columns of `self` to a basis of the whole space,
    /// appending standard basis vectors not in the pivot set.
    pub fn complete_basis(&self) -> FpMatrix {
        let n = self.rows;
        let (_, pivots) = self.transpose().rref();
        assert_eq!(pivots.len(), self.cols, "columns are not independent");
        let extra: Vec<Vec<u64>> = (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|c| {
                let mut e = vec![0; n];
                e[c] = 1;
                e
            })
            .collect();
        let ext = FpMatrix::from_columns(self.field, n, &extra);
        FpMatrix::hstack(&[self, &ext])
    }

    /// Left inverse of a matrix with independent columns.
    pub fn left_inverse(&self) -> FpMatrix {
        let full = self.complete_basis().inverse().expect("completed basis is invertible");
        full.block(0, 0, self.cols, self.rows)
    }

    /// Solves `self * x = b` for one solution, if any.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let aug = FpMatrix::hstack(&[self, &FpMatrix::column_vector(self.field, b)]);
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(i, self.cols)];
        }
        Some(x)
    }

    /// Quotient of 𝔽_p^n (n = `self.rows`) by the span of the columns.
    pub fn cokernel(&self) -> Cokernel {
        let f = self.field;
        let n = self.rows;
        let (r, pivots) = self.transpose().rref();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let dim = free.len();
        let mut projection = FpMatrix::zeros(f, dim, n);
        let mut section = FpMatrix::zeros(f, n, dim);
        for (k, &fc) in free.iter().enumerate() {
            projection[(k, fc)] = 1 % f.p();
            section[(fc, k)] = 1 % f.p();
        }
        // e_pc ≡ e_pc - row_i, which is supported on free columns.
        for (i, &pc) in pivots.iter().enumerate() {
            for (k, &fc) in free.iter().enumerate() {
                projection[(k, pc)] = f.neg(r[(i, fc)]);
            }
        }
        Cokernel { dim, projection, section }
    }
}

impl Index<(usize, usize)> for FpMatrix {
    type Output = u64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for FpMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} over F_{}", self.rows, self.cols, self.field.p())?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Permutation matrix of `A ⊗ B → B ⊗ A`.
pub fn swap_matrix(field: Fp, a: usize, b: usize) -> FpMatrix {
    let mut m = FpMatrix::zeros(field, a * b, a * b);
    for i in 0..a {
        for j in 0..b {
            m[(j * a + i, i * b + j)] = 1 % field.p();
        }
    }
    m
}

/// Matrix of a linear map given by its action on standard basis vectors.
pub fn matrix_of(field: Fp, dim_in: usize, dim_out: usize, mut map: impl FnMut(usize) -> Vec<u64>) -> FpMatrix {
    let cols: Vec<Vec<u64>> = (0..dim_in).map(&mut map).collect();
    if cols.is_empty() {
        return FpMatrix::zeros(field, dim_out, 0);
    }
    FpMatrix::from_columns(field, dim_out, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> Fp {
        Fp::new(7).unwrap()
    }

    #[test]
    fn rref_of_identity_and_zero() {
        let i3 = FpMatrix::identity(f7(), 3);
        let (r, piv) = i3.rref();
        assert_eq!(r, i3);
        assert_eq!(piv, vec![0, 1, 2]);
        let z = FpMatrix::zeros(f7(), 2, 3);
        let (r, piv) = z.rref();
        assert!(r.is_zero());
        assert!(piv.is_empty());
    }

    #[test]
    fn rref_hand_reduction() {
        // [[2,4],[1,2]]: scale row 0 by 2^{-1}=4 -> [1,2]; row 1 - row 0 -> 0.
        let m = FpMatrix::from_rows(f7(), &[vec![2, 4], vec![1, 2]]);
        let (r, piv) = m.rref();
        assert_eq!(r, FpMatrix::from_rows(f7(), &[vec![1, 2], vec![0, 0]]));
        assert_eq!(piv, vec![0]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(FpMatrix::identity(f7(), 4).kernel_basis().cols(), 0);
        let k = FpMatrix::zeros(f7(), 2, 3).kernel_basis();
        assert_eq!(k, FpMatrix::identity(f7(), 3));
        let k = FpMatrix::from_rows(f7(), &[vec![1, 1]]).kernel_basis();
        assert_eq!(k.columns(), vec![vec![6, 1]]);
        // x + y = 0 has solution (1, 6) up to scale.
        assert_eq!(f7().add(k[(0, 0)], k[(1, 0)]), 0);
    }

    #[test]
    fn cokernel_examples() {
        let f = f7();
        let full = FpMatrix::identity(f, 3).cokernel();
        assert_eq!(full.dim, 0);
        let none = FpMatrix::zeros(f, 3, 0).cokernel();
        assert_eq!(none.dim, 3);
        assert!(none.projection.is_identity());
        let line = FpMatrix::from_columns(f, 3, &[vec![1, 1, 0]]);
        let q = line.cokernel();
        assert_eq!(q.dim, 2);
        assert!(q.projection.mul(&line).is_zero());
        assert!(q.projection.mul(&q.section).is_identity());
    }

    #[test]
    fn kron_examples() {
        let f = f7();
        let a = FpMatrix::from_rows(f, &[vec![1, 2], vec![3, 4]]);
        assert_eq!(a.kron(&FpMatrix::identity(f, 1)), a);
        assert!(FpMatrix::identity(f, 2).kron(&FpMatrix::identity(f, 3)).is_identity());
        let b = FpMatrix::from_rows(f, &[vec![0, 5], vec![6, 1]]);
        let c = FpMatrix::from_rows(f, &[vec![2, 2], vec![1, 3]]);
        let d = FpMatrix::from_rows(f, &[vec![4, 0], vec![1, 1]]);
        assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
    }

    #[test]
    fn swap_matrix_swaps_kron_factors() {
        let f = f7();
        let a = FpMatrix::from_rows(f, &[vec![1, 2], vec![3, 4]]);
        let b = FpMatrix::from_rows(f, &[vec![0, 5, 1], vec![6, 1, 2], vec![1, 1, 1]]);
        let s = swap_matrix(f, 2, 3);
        let t = swap_matrix(f, 3, 2);
        assert_eq!(s.mul(&a.kron(&b)), b.kron(&a).mul(&s));
        assert!(t.mul(&s).is_identity());
    }

    #[test]
    fn inverse_and_solve() {
        let f = f7();
        let m = FpMatrix::from_rows(f, &[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(FpMatrix::from_rows(f, &[vec![1, 2], vec![2, 4]]).inverse().is_none());
        let x = m.solve(&[3, 2]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![3, 2]);
    }
}

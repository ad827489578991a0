use std::fmt;

use super::PrimeField;

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFp {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for MatrixFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixFp {}x{} mod {}", self.rows, self.cols, self.field.modulus())?;
        for r in 0..self.rows.min(16) {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl MatrixFp {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        MatrixFp {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from rows of (possibly signed) integers, reduced mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, field.from_i64(v));
            }
        }
        m
    }

    pub fn from_row_vectors(field: PrimeField, cols: usize, rows: Vec<Vec<u64>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        MatrixFp {
            field,
            rows: n,
            cols,
            data,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.field.modulus();
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> MatrixFp {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixFp) -> MatrixFp {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, c)));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Place `block` with its top-left corner at `(r0, c0)`, scaled by `sign`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &MatrixFp, negate: bool) {
        let f = self.field;
        for r in 0..block.rows {
            for c in 0..block.cols {
                let v = block.get(r, c);
                self.data[(r0 + r) * self.cols + c0 + c] = if negate { f.neg(v) } else { v };
            }
        }
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let p = f.modulus();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for k in 0..cols {
                    self.data.swap(piv * cols + k, r * cols + k);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            for k in c..cols {
                let idx = r * cols + k;
                self.data[idx] = self.data[idx] * inv % p;
            }
            let (head, tail) = self.data.split_at_mut(r * cols);
            let (pivot_row, rest) = tail.split_at_mut(cols);
            for other in head.chunks_exact_mut(cols).chain(rest.chunks_exact_mut(cols)) {
                let factor = other[c];
                if factor == 0 {
                    continue;
                }
                let factor = p - factor;
                for k in c..cols {
                    other[k] = (other[k] + factor * pivot_row[k]) % p;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

/// Rank by Gaussian elimination (forward elimination only).
pub fn mat_rank(m: &MatrixFp) -> usize {
    let f = m.field;
    let p = f.modulus();
    let cols = m.cols;
    let mut data = m.data.clone();
    let mut rank = 0;
    for c in 0..cols {
        if rank == m.rows {
            break;
        }
        let Some(piv) = (rank..m.rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if piv != rank {
            for k in c..cols {
                data.swap(piv * cols + k, rank * cols + k);
            }
        }
        let inv = f.inv(data[rank * cols + c]);
        let (top, bottom) = data.split_at_mut((rank + 1) * cols);
        let pivot_row = &mut top[rank * cols..];
        for x in &mut pivot_row[c..cols] {
            *x = *x * inv % p;
        }
        for other in bottom.chunks_exact_mut(cols) {
            let factor = other[c];
            if factor == 0 {
                continue;
            }
            let factor = p - factor;
            for k in c..cols {
                other[k] = (other[k] + factor * pivot_row[k]) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of the right kernel, one vector per row.
pub fn mat_kernel(m: &MatrixFp) -> MatrixFp {
    let f = m.field;
    let mut r = m.clone();
    let pivots = r.rref_in_place();
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..m.cols).filter(|&c| !is_pivot[c]).collect();
    let mut k = MatrixFp::zeros(f, free.len(), m.cols);
    for (i, &fc) in free.iter().enumerate() {
        k.set(i, fc, 1);
        for (row, &pc) in pivots.iter().enumerate() {
            k.set(i, pc, f.neg(r.get(row, fc)));
        }
    }
    k
}

/// A subspace of `F_p^n` kept in reduced row echelon form.
///
/// Coordinates of a member vector in the stored basis are its entries at the
/// pivot columns.
#[derive(Debug, Clone)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by<I: IntoIterator<Item = Vec<u64>>>(
        field: PrimeField,
        ambient: usize,
        vectors: I,
    ) -> Self {
        let mut s = Self::new(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the basis; the result is zero iff `v` is a member.
    pub fn reduce(&self, v: &mut [u64]) {
        let p = self.field.modulus();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let factor = v[pc];
            if factor == 0 {
                continue;
            }
            let factor = p - factor;
            for (x, &r) in v.iter_mut().zip(row) {
                if r != 0 {
                    *x = (*x + factor * r) % p;
                }
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Insert a vector; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field;
        let p = f.modulus();
        let inv = f.inv(v[pc]);
        for x in v.iter_mut() {
            *x = *x * inv % p;
        }
        for row in &mut self.rows {
            let factor = row[pc];
            if factor == 0 {
                continue;
            }
            let factor = p - factor;
            for (x, &r) in row.iter_mut().zip(&v) {
                if r != 0 {
                    *x = (*x + factor * r) % p;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(pc);
        true
    }

    /// Coordinates of a member vector in the stored basis.
    pub fn coordinates(&self, v: &[u64]) -> Vec<u64> {
        debug_assert!(self.contains(v));
        self.pivots.iter().map(|&pc| v[pc]).collect()
    }
}

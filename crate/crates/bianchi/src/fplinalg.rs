//! Exact dense linear algebra over small prime fields.
//!
//! Every degreewise computation in the workbench bottoms out here: quotient
//! bases, kernel/image dimensions of restriction maps, Bockstein page ranks.
//! Matrices over 𝔽₂ pack rows into `u64` blocks and eliminate with XOR;
//! odd primes use one byte per residue. Pivoting is deterministic (leftmost
//! nonzero in the first available row), so kernel bases and reduced forms
//! are reproducible across runs.

use std::fmt;

/// Row storage: bit-packed for p = 2, byte residues otherwise.
#[derive(Clone, PartialEq, Eq)]
enum Rows {
    Bits { blocks_per_row: usize, data: Vec<u64> },
    Bytes { data: Vec<u8> },
}

/// Dense matrix over 𝔽ₚ for a small prime p (p ≤ 251).
#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u8,
    rows: usize,
    cols: usize,
    storage: Rows,
}

/// Reduced row echelon form together with its pivot columns.
pub struct Rref {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
}

fn assert_prime(p: u8) {
    assert!(p >= 2, "modulus must be a prime >= 2");
    assert!((2..p).all(|d| !p.is_multiple_of(d)), "modulus {p} is not prime");
}

impl FpMatrix {
    /// Zero matrix of the given shape.
    pub fn zero(p: u8, rows: usize, cols: usize) -> Self {
        assert_prime(p);
        let storage = if p == 2 {
            let bpr = cols.div_ceil(64);
            Rows::Bits { blocks_per_row: bpr, data: vec![0; bpr * rows] }
        } else {
            Rows::Bytes { data: vec![0; rows * cols] }
        };
        FpMatrix { p, rows, cols, storage }
    }

    /// Identity matrix of size n.
    pub fn identity(p: u8, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from a row-major closure; values are reduced mod p.
    pub fn from_fn(p: u8, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut m = Self::zero(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j) % p);
            }
        }
        m
    }

    /// Build from explicit rows of residues.
    pub fn from_rows(p: u8, cols: usize, entries: &[Vec<u8>]) -> Self {
        let mut m = Self::zero(p, entries.len(), cols);
        for (i, row) in entries.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {i} has wrong length");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        debug_assert!(i < self.rows && j < self.cols);
        match &self.storage {
            Rows::Bits { blocks_per_row, data } => {
                ((data[i * blocks_per_row + j / 64] >> (j % 64)) & 1) as u8
            }
            Rows::Bytes { data } => data[i * self.cols + j],
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        debug_assert!(i < self.rows && j < self.cols);
        debug_assert!(v < self.p);
        match &mut self.storage {
            Rows::Bits { blocks_per_row, data } => {
                let idx = i * *blocks_per_row + j / 64;
                let bit = 1u64 << (j % 64);
                if v & 1 == 1 {
                    data[idx] |= bit;
                } else {
                    data[idx] &= !bit;
                }
            }
            Rows::Bytes { data } => data[i * self.cols + j] = v,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.storage {
            Rows::Bits { data, .. } => data.iter().all(|&b| b == 0),
            Rows::Bytes { data } => data.iter().all(|&b| b == 0),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.p, self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Matrix-vector product m·v.
    pub fn mat_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        let mut out = vec![0u8; self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc: u32 = 0;
            for (j, &vj) in v.iter().enumerate() {
                acc += self.get(i, j) as u32 * vj as u32;
            }
            *o = (acc % self.p as u32) as u8;
        }
        out
    }

    /// Matrix product self·other.
    pub fn mat_mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "moduli must agree");
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        Self::from_fn(self.p, self.rows, other.cols, |i, j| {
            let mut acc: u32 = 0;
            for k in 0..self.cols {
                acc += self.get(i, k) as u32 * other.get(k, j) as u32;
            }
            (acc % self.p as u32) as u8
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        match &mut self.storage {
            Rows::Bits { blocks_per_row, data } => {
                let bpr = *blocks_per_row;
                for k in 0..bpr {
                    data.swap(a * bpr + k, b * bpr + k);
                }
            }
            Rows::Bytes { data } => {
                let c = self.cols;
                for k in 0..c {
                    data.swap(a * c + k, b * c + k);
                }
            }
        }
    }

    /// row[dst] += factor * row[src], in place.
    fn add_scaled_row(&mut self, dst: usize, src: usize, factor: u8) {
        if factor == 0 {
            return;
        }
        match &mut self.storage {
            Rows::Bits { blocks_per_row, data } => {
                let bpr = *blocks_per_row;
                let (d, s) = (dst * bpr, src * bpr);
                for k in 0..bpr {
                    let sv = data[s + k];
                    data[d + k] ^= sv;
                }
            }
            Rows::Bytes { data } => {
                let c = self.cols;
                let p = self.p as u16;
                for k in 0..c {
                    let sv = data[src * c + k] as u16;
                    let dv = data[dst * c + k] as u16;
                    data[dst * c + k] = ((dv + factor as u16 * sv) % p) as u8;
                }
            }
        }
    }

    fn scale_row(&mut self, row: usize, factor: u8) {
        if factor == 1 {
            return;
        }
        if let Rows::Bytes { data } = &mut self.storage {
            let c = self.cols;
            let p = self.p as u16;
            for k in 0..c {
                data[row * c + k] = ((data[row * c + k] as u16 * factor as u16) % p) as u8;
            }
        }
    }

    fn inv_mod(&self, a: u8) -> u8 {
        let p = self.p as u32;
        let mut r = 1u32;
        let mut base = a as u32 % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        r as u8
    }

    /// Reduced row echelon form with leftmost-nonzero pivoting.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = m.inv_mod(m.get(row, col));
            m.scale_row(row, inv);
            for r in 0..m.rows {
                if r != row {
                    let f = m.get(r, col);
                    if f != 0 {
                        let neg = (m.p - f) % m.p;
                        m.add_scaled_row(r, row, neg);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    /// Row rank via exact elimination.
    pub fn rank(&self) -> usize {
        if self.p == 2 {
            let mut m = self.clone();
            let mut rank = 0usize;
            for col in 0..m.cols {
                if rank == m.rows {
                    break;
                }
                let Some(pr) = (rank..m.rows).find(|&r| m.get(r, col) != 0) else {
                    continue;
                };
                m.swap_rows(rank, pr);
                for r in (rank + 1)..m.rows {
                    if m.get(r, col) != 0 {
                        m.add_scaled_row(r, rank, 1);
                    }
                }
                rank += 1;
            }
            rank
        } else {
            self.rref().pivots.len()
        }
    }

    /// Basis of the right kernel {v : m·v = 0}, one vector per free column,
    /// ordered by ascending free-column index.
    pub fn kernel_basis(&self) -> Vec<Vec<u8>> {
        let Rref { matrix, pivots } = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![0u8; self.cols];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                let entry = matrix.get(r, free);
                if entry != 0 {
                    v[c] = (self.p - entry) % self.p;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution x of m·x = b, or `None` when b is outside the column span.
    pub fn solve(&self, b: &[u8]) -> Option<Vec<u8>> {
        assert_eq!(b.len(), self.rows, "right-hand side length must equal row count");
        let mut aug = FpMatrix::zero(self.p, self.rows, self.cols + 1);
        for (i, &bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, bi % self.p);
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u8; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = matrix.get(r, self.cols);
        }
        Some(x)
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} mod {}", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{}", self.get(i, j))?;
                if j + 1 < self.cols {
                    write!(f, " ")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_zero_matrix() {
        assert_eq!(FpMatrix::zero(2, 3, 3).rank(), 0);
    }

    #[test]
    fn rank_identity() {
        assert_eq!(FpMatrix::identity(3, 4).rank(), 4);
    }

    #[test]
    fn rank_ones_mod2() {
        let m = FpMatrix::from_rows(2, 2, &[vec![1, 1], vec![1, 1]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(FpMatrix::identity(2, 2).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_is_full() {
        let basis = FpMatrix::zero(2, 2, 3).kernel_basis();
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn kernel_single_row_mod2() {
        let m = FpMatrix::from_rows(2, 3, &[vec![1, 1, 0]]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.mat_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_identity() {
        let m = FpMatrix::identity(5, 3);
        let b = vec![2, 0, 4];
        assert_eq!(m.solve(&b), Some(b));
    }

    #[test]
    fn solve_inconsistent() {
        let m = FpMatrix::zero(2, 2, 2);
        assert_eq!(m.solve(&[1, 0]), None);
    }

    #[test]
    fn solve_upper_triangular_mod2() {
        let m = FpMatrix::from_rows(2, 2, &[vec![1, 1], vec![0, 1]]);
        let x = m.solve(&[0, 1]).unwrap();
        assert_eq!(x, vec![1, 1]);
    }

    #[test]
    fn rref_scales_and_eliminates_mod3() {
        let m = FpMatrix::from_rows(3, 3, &[vec![0, 2, 1], vec![1, 1, 2]]);
        let r = m.rref();
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.matrix.get(0, 0), 1);
        assert_eq!(r.matrix.get(0, 1), 0);
        assert_eq!(r.matrix.get(0, 2), 0);
        assert_eq!(r.matrix.get(1, 1), 1);
        assert_eq!(r.matrix.get(1, 2), 2);
    }

    #[test]
    fn rref_detects_dependent_rows_mod3() {
        let m = FpMatrix::from_rows(3, 3, &[vec![0, 2, 1], vec![0, 1, 2]]);
        let r = m.rref();
        assert_eq!(r.pivots, vec![1]);
        assert_eq!(m.rank(), 1);
    }
}

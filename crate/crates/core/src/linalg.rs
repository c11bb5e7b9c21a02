//! Dense matrices over a prime field, sized for desk-scale verification work.

use crate::modpoly::{add_mod, inv_mod, mul_mod, sub_mod};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMat {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMat {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(p: u64, rows: usize, cols: usize, f: impl Fn(usize, usize) -> u64) -> Self {
        let mut m = Self::zeros(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j) % p);
            }
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| add_mod(a, b, self.p))
            .collect();
        Self { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| sub_mod(a, b, self.p))
            .collect();
        Self { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u64) -> Self {
        let data = self.data.iter().map(|&a| mul_mod(a, c, self.p)).collect();
        Self { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = add_mod(out.get(i, j), mul_mod(a, other.get(k, j), self.p), self.p);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Self::identity(self.p, self.rows);
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.p, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    pub fn trace(&self) -> u64 {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).fold(0, |acc, i| add_mod(acc, self.get(i, i), self.p))
    }

    /// Kronecker (tensor) product.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.p, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(
                            i * other.rows + k,
                            j * other.cols + l,
                            mul_mod(a, other.get(k, l), self.p),
                        );
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().1
    }

    /// In-place reduced row echelon form; returns (pivot columns, rank).
    fn row_reduce(mut self) -> (Self, usize, Vec<usize>) {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pivot_row) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pivot_row != r {
                for j in 0..self.cols {
                    let (a, b) = (self.get(r, j), self.get(pivot_row, j));
                    self.set(r, j, b);
                    self.set(pivot_row, j, a);
                }
            }
            let inv = inv_mod(self.get(r, c), p);
            for j in 0..self.cols {
                let v = mul_mod(self.get(r, j), inv, p);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) != 0 {
                    let f = self.get(i, c);
                    for j in 0..self.cols {
                        let v = sub_mod(self.get(i, j), mul_mod(f, self.get(r, j), p), p);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = r;
        (self, rank, pivots)
    }

    /// Basis of the right kernel, as column vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let (rref, _rank, pivots) = self.clone().row_reduce();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                let coeff = rref.get(row, free);
                if coeff != 0 {
                    v[pc] = p - coeff;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `self * x = b`; `None` when inconsistent.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let p = self.p;
        let mut aug = Self::zeros(p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (rref, _rank, pivots) = aug.row_reduce();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![0u64; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = rref.get(row, self.cols);
        }
        Some(x)
    }
}

/// Jordan block sizes (descending) of a unipotent matrix `m`, read off from
/// the rank sequence of powers of `m - I`.
pub fn jordan_type_of_unipotent(m: &FpMat) -> Vec<u64> {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let nil = m.sub(&FpMat::identity(m.p(), n));
    // ranks[k] = rank((m - I)^k)
    let mut ranks = vec![n];
    let mut power = FpMat::identity(m.p(), n);
    loop {
        power = power.mul(&nil);
        let r = power.rank();
        ranks.push(r);
        if r == 0 {
            break;
        }
        assert!(
            ranks.len() <= n + 1,
            "matrix is not unipotent: rank sequence does not reach zero"
        );
    }
    // Number of blocks of size >= k is ranks[k-1] - ranks[k].
    let mut blocks = Vec::new();
    for k in 1..ranks.len() {
        let count_ge_k = ranks[k - 1] - ranks[k];
        let count_ge_k1 = if k < ranks.len() - 1 { ranks[k] - ranks[k + 1] } else { 0 };
        for _ in 0..count_ge_k.saturating_sub(count_ge_k1) {
            blocks.push(k as u64);
        }
    }
    blocks.sort_unstable_by(|a, b| b.cmp(a));
    blocks
}

/// Incremental row span over `F_p`, for membership tests in a subspace.
#[derive(Clone, Debug)]
pub struct RowSpan {
    p: u64,
    dim: usize,
    rows: Vec<Vec<u64>>, // reduced: each has a unit leading entry at a distinct column
    leads: Vec<usize>,
}

impl RowSpan {
    pub fn new(p: u64, dim: usize) -> Self {
        Self { p, dim, rows: Vec::new(), leads: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u64]) {
        for (row, &lead) in self.rows.iter().zip(&self.leads) {
            let c = v[lead];
            if c != 0 {
                for j in 0..self.dim {
                    v[j] = sub_mod(v[j], mul_mod(c, row[j], self.p), self.p);
                }
            }
        }
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        match w.iter().position(|&c| c != 0) {
            None => false,
            Some(lead) => {
                let inv = inv_mod(w[lead], self.p);
                for c in w.iter_mut() {
                    *c = mul_mod(*c, inv, self.p);
                }
                self.rows.push(w);
                self.leads.push(lead);
                true
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&c| c == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jordan_block(p: u64, k: usize) -> FpMat {
        FpMat::from_fn(p, k, k, |i, j| u64::from(i == j || (i == j + 1)))
    }

    #[test]
    fn rank_and_kernel() {
        let m = FpMat::from_fn(5, 3, 3, |i, j| ((i + j) % 5) as u64);
        let rank = m.rank();
        let kernel = m.kernel_basis();
        assert_eq!(rank + kernel.len(), 3);
        for v in kernel {
            let mv: Vec<u64> = (0..3)
                .map(|i| (0..3).fold(0, |acc, j| add_mod(acc, mul_mod(m.get(i, j), v[j], 5), 5)))
                .collect();
            assert!(mv.iter().all(|&c| c == 0));
        }
    }

    #[test]
    fn jordan_type_of_single_block() {
        for p in [3u64, 5, 7] {
            for k in 1..=p as usize {
                let m = jordan_block(p, k);
                assert_eq!(jordan_type_of_unipotent(&m), vec![k as u64]);
            }
        }
    }

    #[test]
    fn solve_consistent_system() {
        let m = FpMat::from_fn(7, 2, 2, |i, j| [[2, 3], [1, 4]][i][j]);
        let x = m.solve(&[5, 6]).unwrap();
        let b0 = add_mod(mul_mod(2, x[0], 7), mul_mod(3, x[1], 7), 7);
        let b1 = add_mod(mul_mod(1, x[0], 7), mul_mod(4, x[1], 7), 7);
        assert_eq!((b0, b1), (5, 6));
    }

    #[test]
    fn row_span_membership() {
        let mut span = RowSpan::new(5, 3);
        assert!(span.insert(&[1, 2, 3]));
        assert!(span.insert(&[0, 1, 1]));
        assert!(!span.insert(&[1, 3, 4])); // sum of the two
        assert!(span.contains(&[2, 4, 1])); // 2 * first
        assert!(!span.contains(&[0, 0, 1]));
    }
}

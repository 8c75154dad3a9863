//! Sparse matrices over prime fields, with deterministic row-major elimination.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FpError {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u32),
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    OutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    reduce(t, p)
}

/// A vector over F_p stored densely.
pub type FpVector = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), u32>,
}

impl FpMatrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Result<Self, FpError> {
        if !is_prime(p) {
            return Err(FpError::NonPrimeModulus(p));
        }
        Ok(FpMatrix {
            p,
            rows,
            cols,
            entries: BTreeMap::new(),
        })
    }

    pub fn identity(p: u32, n: usize) -> Result<Self, FpError> {
        Self::from_triplets(p, n, n, (0..n).map(|i| (i, i, 1)))
    }

    /// Duplicate keys are summed.
    pub fn from_triplets<I>(p: u32, rows: usize, cols: usize, triplets: I) -> Result<Self, FpError>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut m = Self::zero(p, rows, cols)?;
        for (r, c, v) in triplets {
            m.add_to(r, c, v)?;
        }
        Ok(m)
    }

    pub fn from_dense(p: u32, rows: &[Vec<i64>]) -> Result<Self, FpError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let trip = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, v)));
        Self::from_triplets(p, rows.len(), cols, trip)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries.get(&(r, c)).copied().unwrap_or(0)
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: i64) -> Result<(), FpError> {
        if r >= self.rows || c >= self.cols {
            return Err(FpError::OutOfBounds {
                row: r,
                col: c,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let cur = self.get(r, c) as i64;
        let new = reduce(cur + v, self.p);
        if new == 0 {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), new);
        }
        Ok(())
    }

    /// Nonzero entries in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.entries.iter().map(|(&(r, c), &v)| (r, c, v))
    }

    pub fn transpose(&self) -> FpMatrix {
        FpMatrix {
            p: self.p,
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(r, c), &v)| ((c, r), v)).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[u32]) -> FpVector {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![0u64; self.rows];
        for (&(r, c), &x) in &self.entries {
            out[r] = (out[r] + x as u64 * v[c] as u64) % self.p as u64;
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        let mut d = vec![vec![0u32; self.cols]; self.rows];
        for (&(r, c), &v) in &self.entries {
            d[r][c] = v;
        }
        d
    }

    pub fn rank(&self) -> usize {
        let mut d = self.to_dense();
        rref(&mut d, self.p).len()
    }

    /// Rank and a kernel basis; the basis is read off the reduced row echelon form,
    /// one vector per free column in increasing column order.
    pub fn rank_kernel(&self) -> (usize, Vec<FpVector>) {
        let mut d = self.to_dense();
        let pivots = rref(&mut d, self.p);
        let rank = pivots.len();
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        let mut kernel = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (row, &c) in pivots.iter().enumerate() {
                let x = d[row][free];
                if x != 0 {
                    v[c] = self.p - x;
                }
            }
            kernel.push(v);
        }
        (rank, kernel)
    }
}

/// Brings `m` to reduced row echelon form in place, scanning columns left to right and
/// taking the first row with a nonzero entry as pivot. Returns the pivot columns.
pub fn rref(m: &mut [Vec<u32>], p: u32) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let pp = p as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(sel) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, sel);
        let inv = inv_mod(m[r][c], p) as u64;
        for x in m[r].iter_mut() {
            *x = ((*x as u64 * inv) % pp) as u32;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c] as u64;
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = ((*x as u64 + pp * pp - f * y as u64) % pp) as u32;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Incremental echelon basis of a subspace of F_p^n: supports membership tests,
/// reduction and solving in terms of the inserted vectors.
#[derive(Debug, Clone)]
pub struct Subspace {
    p: u32,
    dim: usize,
    // Echelon rows keyed by pivot column, each with its expression in inserted vectors.
    rows: BTreeMap<usize, (FpVector, FpVector)>,
    inserted: usize,
}

impl Subspace {
    pub fn new(p: u32, dim: usize) -> Self {
        Subspace {
            p,
            dim,
            rows: BTreeMap::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn reduce_with_combo(&self, v: &[u32], capacity: usize) -> (FpVector, FpVector) {
        let pp = self.p as u64;
        let mut v = v.to_vec();
        let mut combo = vec![0u32; capacity];
        for (&c, (row, expr)) in &self.rows {
            let f = v[c] as u64;
            if f == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                *x = ((*x as u64 + pp * pp - f * y as u64) % pp) as u32;
            }
            for (x, &y) in combo.iter_mut().zip(expr) {
                *x = ((*x as u64 + f * y as u64) % pp) as u32;
            }
        }
        (v, combo)
    }

    /// Remainder of `v` after reduction against the basis.
    pub fn reduce(&self, v: &[u32]) -> FpVector {
        self.reduce_with_combo(v, self.inserted).0
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns true when it enlarged the subspace. Every call counts as an
    /// inserted vector for [`Subspace::solve`], even when dependent.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        for (_, (_, expr)) in self.rows.iter_mut() {
            expr.push(0);
        }
        let (mut rem, combo) = self.reduce_with_combo(v, self.inserted);
        let Some(c) = rem.iter().position(|&x| x != 0) else {
            return false;
        };
        let pp = self.p as u64;
        // rem = v - sum combo_i * inserted_i
        let mut expr: FpVector = combo.iter().map(|&x| ((pp - x as u64) % pp) as u32).collect();
        expr[idx] = 1;
        let inv = inv_mod(rem[c], self.p) as u64;
        for x in rem.iter_mut() {
            *x = ((*x as u64 * inv) % pp) as u32;
        }
        for x in expr.iter_mut() {
            *x = ((*x as u64 * inv) % pp) as u32;
        }
        // keep rows fully reduced at the new pivot
        for (_, (row, rexpr)) in self.rows.iter_mut() {
            let f = row[c] as u64;
            if f == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&rem) {
                *x = ((*x as u64 + pp * pp - f * y as u64) % pp) as u32;
            }
            for (x, &y) in rexpr.iter_mut().zip(&expr) {
                *x = ((*x as u64 + pp * pp - f * y as u64) % pp) as u32;
            }
        }
        self.rows.insert(c, (rem, expr));
        true
    }

    /// Coefficients `x` over the inserted vectors with `sum x_i v_i = target`, if any.
    pub fn solve(&self, target: &[u32]) -> Option<FpVector> {
        let (rem, combo) = self.reduce_with_combo(target, self.inserted);
        rem.iter().all(|&x| x == 0).then_some(combo)
    }

    pub fn basis(&self) -> Vec<FpVector> {
        self.rows.values().map(|(r, _)| r.clone()).collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_identity() {
        let z = FpMatrix::zero(3, 2, 2).unwrap();
        let (r, k) = z.rank_kernel();
        assert_eq!((r, k.len()), (0, 2));
        let id = FpMatrix::identity(5, 4).unwrap();
        let (r, k) = id.rank_kernel();
        assert_eq!((r, k.len()), (4, 0));
    }

    #[test]
    fn rank_one_over_f5_against_enumeration() {
        let m = FpMatrix::from_dense(5, &[vec![1, 2], vec![2, 4]]).unwrap();
        let (r, k) = m.rank_kernel();
        // oracle: count all vectors of F_5^2 in the kernel
        let mut count = 0;
        for a in 0..5u32 {
            for b in 0..5u32 {
                if m.mul_vec(&[a, b]).iter().all(|&x| x == 0) {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 5);
        assert_eq!((r, k.len()), (1, 1));
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(FpMatrix::zero(9, 1, 1), Err(FpError::NonPrimeModulus(9)));
    }

    #[test]
    fn subspace_solve_expresses_target() {
        let mut s = Subspace::new(7, 3);
        assert!(s.insert(&[1, 2, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 3, 1]));
        let x = s.solve(&[2, 5, 1]).unwrap();
        let vs = [[1u32, 2, 0], [0, 1, 1], [1, 3, 1]];
        let mut acc = [0u32; 3];
        for (c, v) in x.iter().zip(vs) {
            for j in 0..3 {
                acc[j] = (acc[j] + c * v[j]) % 7;
            }
        }
        assert_eq!(acc, [2, 5, 1]);
        assert!(s.solve(&[0, 0, 1]).is_none());
    }
}

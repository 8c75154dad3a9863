//! Integer matrices, Smith normal form and the lattice operations built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::abgroup::AbGroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix");
                r.iter().cloned().map(Into::into).collect()
            })
            .collect();
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zero(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                m.data[i][j] = c[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r][c]
    }
    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r][c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.data[r][c].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if !other.data[k][j].is_zero() {
                        out.data[i][j] += &self.data[i][k] * &other.data[k][j];
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i][j] = self.data[i][j].clone();
            }
            for j in 0..other.cols {
                m.data[i][self.cols + j] = other.data[i][j].clone();
            }
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = idx.iter().map(|&c| self.column(c)).collect();
        Self::from_columns(self.rows, &cols)
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        IntMatrix {
            rows: idx.len(),
            cols: self.cols,
            data: idx.iter().map(|&r| self.data[r].clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }
    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in self.data.iter_mut() {
            r.swap(a, b);
        }
    }
    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src][j] * f;
            self.data[dst][j] += v;
        }
    }
    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        if f.is_zero() {
            return;
        }
        for r in self.data.iter_mut() {
            let v = &r[src] * f;
            r[dst] += v;
        }
    }
    fn negate_row(&mut self, r: usize) {
        for x in self.data[r].iter_mut() {
            *x = -x.clone();
        }
    }
}

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal with a divisibility chain.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    pub fn diag(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.data[i][i].clone())
            .collect()
    }
}

pub fn smith_decomposition(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    // Every pass re-selects the smallest pivot of the trailing block and reduces with nearest
    // quotients, so entries of d (and hence of u, v) stay small.
    'outer: while t < rows.min(cols) {
        loop {
            // pivot: smallest nonzero absolute value in the trailing block, first in row-major order
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &d.data[i][j];
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if d.data[bi][bj].abs() <= x.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'outer };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let piv = d.data[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                let q = nearest_quotient(&d.data[i][t], &piv);
                if !q.is_zero() {
                    d.add_row(i, t, &-q.clone());
                    u.add_row(i, t, &-q);
                }
                dirty |= !d.data[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = nearest_quotient(&d.data[t][j], &piv);
                if !q.is_zero() {
                    d.add_col(j, t, &-q.clone());
                    v.add_col(j, t, &-q);
                }
                dirty |= !d.data[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility: fold a non-divisible row into the pivot row
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&d.data[i][j] % &piv).is_zero()));
            match bad {
                Some(i) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.data[t][t].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SmithDecomposition { u, v, d, rank: t }
}

/// q with |a − q·b| ≤ |b|/2.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_mod_floor(b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        // floor remainder has the sign of b; stepping q toward it halves the remainder
        q += 1;
    }
    q
}

/// Invariant factors of `m` (length min(rows, cols)) and the cokernel of `m: Z^cols -> Z^rows`.
pub fn smith_normal_form(m: &IntMatrix) -> (Vec<BigInt>, AbGroup) {
    let s = smith_decomposition(m);
    let diag = s.diag();
    let mut orders = Vec::new();
    for i in 0..m.rows {
        let x = if i < diag.len() { diag[i].clone() } else { BigInt::zero() };
        if x.is_one() {
            continue;
        }
        orders.push(x.magnitude().clone());
    }
    let names = (1..=orders.len()).map(|i| format!("e{i}")).collect();
    (diag, AbGroup::from_big_orders(names, orders))
}

/// Basis (as columns) of the integer kernel of `m`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let s = smith_decomposition(m);
    let idx: Vec<usize> = (s.rank..m.cols).collect();
    s.v.select_columns(&idx)
}

/// Basis (as independent columns) of the lattice spanned by the columns of `g`.
pub fn lattice_basis(g: &IntMatrix) -> IntMatrix {
    let s = smith_decomposition(g);
    let gv = g.mul(&s.v);
    let idx: Vec<usize> = (0..s.rank).collect();
    gv.select_columns(&idx)
}

/// Some integer solution of `m x = b`, if one exists.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let s = smith_decomposition(m);
    let ub = s.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); m.cols];
    for (i, x) in ub.iter().enumerate() {
        if i < s.rank {
            let di = &s.d.data[i][i];
            if !(x % di).is_zero() {
                return None;
            }
            y[i] = x / di;
        } else if !x.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}

/// The quotient `L / R` of lattices given by column bases, where `R ⊆ L`.
/// Returns `None` when some column of `r` is not in `L`.
pub fn lattice_quotient(l: &IntMatrix, r: &IntMatrix) -> Option<AbGroup> {
    let coords = lattice_coordinates(l, r)?;
    let (_, g) = smith_normal_form(&coords);
    Some(g)
}

/// Coordinates of the columns of `r` in the basis `l` (columns), if they lie in the lattice.
pub fn lattice_coordinates(l: &IntMatrix, r: &IntMatrix) -> Option<IntMatrix> {
    let mut cols = Vec::with_capacity(r.cols);
    for c in r.columns() {
        cols.push(solve_integer(l, &c)?);
    }
    Some(IntMatrix::from_columns(l.cols, &cols))
}

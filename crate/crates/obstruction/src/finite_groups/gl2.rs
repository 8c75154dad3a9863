//! GL₂(p) acting on binary forms of degree p by linear substitution.

use std::collections::BTreeSet;

use crate::exact::fp::{inv_mod, reduce};
use crate::exact::Subspace;

/// 2×2 invertible matrix over F_p, row-major.
pub type Mat2 = [[u32; 2]; 2];

fn mat_mul(x: &Mat2, y: &Mat2, p: u32) -> Mat2 {
    let mut out = [[0; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = (x[r][0] * y[0][c] + x[r][1] * y[1][c]) % p;
        }
    }
    out
}

fn primitive_root(p: u32) -> u32 {
    (2..p)
        .find(|&g| {
            let mut x = 1u64;
            (1..p - 1).all(|_| {
                x = x * u64::from(g) % u64::from(p);
                x != 1
            })
        })
        .unwrap_or(1)
}

/// All of GL₂(p), generated from diag(ω, 1) and [[−1, 1], [−1, 0]] by closure.
pub fn gl2_elements(p: u32) -> Vec<Mat2> {
    let w = primitive_root(p);
    let gens: [Mat2; 2] = [[[w, 0], [0, 1]], [[p - 1, 1], [p - 1, 0]]];
    let id: Mat2 = [[1, 0], [0, 1]];
    let mut seen = BTreeSet::from([id]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = mat_mul(&x, g, p);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// Forms of degree `deg` in α, β over F_p with basis α^{deg−i}β^i, i = 0..=deg.
#[derive(Debug, Clone)]
pub struct GL2Module {
    pub p: u32,
    pub deg: u32,
}

impl GL2Module {
    pub fn new(p: u32, deg: u32) -> Self {
        GL2Module { p, deg }
    }

    pub fn dim(&self) -> usize {
        self.deg as usize + 1
    }

    // coefficients of (xα + yβ)^n
    fn power(&self, x: u32, y: u32, n: u32) -> Vec<u32> {
        let p = self.p;
        let mut out = vec![1u32];
        for _ in 0..n {
            let mut next = vec![0u32; out.len() + 1];
            for (i, &c) in out.iter().enumerate() {
                next[i] = (next[i] + c * x) % p;
                next[i + 1] = (next[i + 1] + c * y) % p;
            }
            out = next;
        }
        out
    }

    /// Matrix (columns = images of basis forms) of f ↦ f((α, β)·A), i.e. α ↦ aα + cβ,
    /// β ↦ bα + dβ. This is a left action: ρ(A)ρ(B) = ρ(AB).
    pub fn action(&self, m: &Mat2) -> Vec<Vec<u32>> {
        let p = self.p;
        let n = self.dim();
        let mut cols = Vec::with_capacity(n);
        for i in 0..=self.deg {
            let left = self.power(m[0][0], m[1][0], self.deg - i);
            let right = self.power(m[0][1], m[1][1], i);
            let mut col = vec![0u32; n];
            for (a, &x) in left.iter().enumerate() {
                for (b, &y) in right.iter().enumerate() {
                    col[a + b] = (col[a + b] + x * y) % p;
                }
            }
            cols.push(col);
        }
        cols
    }

    pub fn apply(&self, m: &Mat2, v: &[u32]) -> Vec<u32> {
        self.apply_cols(&self.action(m), v)
    }

    fn apply_cols(&self, cols: &[Vec<u32>], v: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.dim()];
        for (j, &c) in v.iter().enumerate() {
            for (o, &x) in out.iter_mut().zip(&cols[j]) {
                *o = (*o + c * x) % self.p;
            }
        }
        out
    }

    /// Checks ρ(A)ρ(B) = ρ(AB) on the given triples of basis index and two matrices.
    pub fn is_homomorphism_on(&self, samples: &[(usize, Mat2, Mat2)]) -> bool {
        samples.iter().all(|(i, a, b)| {
            let mut v = vec![0; self.dim()];
            v[*i] = 1;
            self.apply(a, &self.apply(b, &v)) == self.apply(&mat_mul(a, b, self.p), &v)
        })
    }

    /// Parses forms such as `"beta^3 - beta*alpha^2"`.
    pub fn parse(&self, s: &str) -> Option<Vec<u32>> {
        let mut v = vec![0u32; self.dim()];
        let cleaned = s.replace(' ', "").replace('-', "+-");
        for term in cleaned.split('+').filter(|t| !t.is_empty()) {
            let (sign, body) = match term.strip_prefix('-') {
                Some(b) => (-1i64, b),
                None => (1, term),
            };
            let mut coeff = sign;
            let (mut ea, mut eb) = (0u32, 0u32);
            for f in body.split('*') {
                let (name, e) = match f.split_once('^') {
                    Some((n, e)) => (n, e.parse().ok()?),
                    None => (f, 1),
                };
                match name {
                    "alpha" => ea += e,
                    "beta" => eb += e,
                    c => coeff *= c.parse::<i64>().ok()?,
                }
            }
            if ea + eb != self.deg {
                return None;
            }
            let i = eb as usize;
            v[i] = (v[i] + reduce(coeff, self.p)) % self.p;
        }
        Some(v)
    }
}

/// Dimension of the smallest GL₂(p)-stable subspace containing the seeds, closing under
/// `group` (all elements or just generators).
pub fn span_under(module: &GL2Module, group: &[Mat2], seeds: &[Vec<u32>]) -> usize {
    let actions: Vec<_> = group.iter().map(|g| module.action(g)).collect();
    let mut space = Subspace::new(module.p, module.dim());
    let mut frontier: Vec<Vec<u32>> = Vec::new();
    for s in seeds {
        if !space.contains(s) && space.insert(s) {
            frontier.push(s.clone());
        }
    }
    while let Some(v) = frontier.pop() {
        if space.rank() == module.dim() {
            break;
        }
        for cols in &actions {
            let w = module.apply_cols(cols, &v);
            // insert() records solve data per call, so only feed it new directions
            if !space.contains(&w) && space.insert(&w) {
                frontier.push(w);
            }
        }
    }
    space.rank()
}

/// Span dimension in V_{p+1}, realised as forms of degree p, under all of GL₂(p).
pub fn gl2_submodule_span(p: u32, seeds: &[Vec<u32>]) -> usize {
    span_under(&GL2Module::new(p, p), &gl2_elements(p), seeds)
}

/// Order of GL₂(p).
pub fn gl2_order(p: u32) -> usize {
    let p = p as usize;
    (p * p - 1) * (p * p - p)
}

/// Determinant, for reports.
pub fn det(m: &Mat2, p: u32) -> u32 {
    (m[0][0] * m[1][1] + p * p - m[0][1] * m[1][0] % p) % p
}

/// Inverse matrix.
pub fn mat_inv(m: &Mat2, p: u32) -> Mat2 {
    let d = inv_mod(det(m, p), p);
    [
        [m[1][1] * d % p, (p - m[0][1]) * d % p],
        [(p - m[1][0]) * d % p, m[0][0] * d % p],
    ]
}

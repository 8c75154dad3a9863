use std::fmt;

use crate::exact::mpoly::Coeff;

use super::sym::Conjugate;

/// 3×3 matrix over any commutative coefficient ring.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat3<T> {
    pub e: [[T; 3]; 3],
}

impl<T: Coeff> Mat3<T> {
    pub fn from_fn(f: impl Fn(usize, usize) -> T) -> Self {
        Mat3 {
            e: std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))),
        }
    }

    pub fn identity() -> Self {
        Self::from_fn(|r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn diag(d: [T; 3]) -> Self {
        Self::from_fn(|r, c| if r == c { d[r].clone() } else { T::zero() })
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_fn(|r, c| {
            (0..3).fold(T::zero(), |acc, k| acc + self.e[r][k].clone() * o.e[k][c].clone())
        })
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_fn(|r, c| self.e[r][c].clone() - o.e[r][c].clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::from_fn(|r, c| s.clone() * self.e[r][c].clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self.e[c][r].clone())
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Mat3<U> {
        Mat3::from_fn(|r, c| f(&self.e[r][c]))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| acc.mul(self))
    }

    pub fn det(&self) -> T {
        let m = &self.e;
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            m[r1][c1].clone() * m[r2][c2].clone() - m[r1][c2].clone() * m[r2][c1].clone()
        };
        m[0][0].clone() * minor(1, 2, 1, 2) - m[0][1].clone() * minor(1, 2, 0, 2)
            + m[0][2].clone() * minor(1, 2, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(|x| x.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..3).all(|r| (0..3).all(|c| r == c || self.e[r][c].is_zero()))
    }

    /// Nonzero entries as `(row, col): value`, 1-based.
    pub fn residual(&self) -> Vec<String>
    where
        T: fmt::Display,
    {
        let mut out = Vec::new();
        for r in 0..3 {
            for c in 0..3 {
                if !self.e[r][c].is_zero() {
                    out.push(format!("({},{}): {}", r + 1, c + 1, self.e[r][c]));
                }
            }
        }
        out
    }
}

impl<T: Coeff + Conjugate> Mat3<T> {
    pub fn adjoint(&self) -> Self {
        Self::from_fn(|r, c| self.e[c][r].conj())
    }
}

impl<T: fmt::Display> fmt::Display for Mat3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .e
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

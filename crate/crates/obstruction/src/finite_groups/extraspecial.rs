//! The extraspecial group of order p³ and exponent p, its cyclic-subgroup census and
//! Oliver's order formula.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::GroupError;
use crate::Rational;

/// Normal form aⁱbʲcᵏ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Element {
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

// upper unitriangular 3×3 matrix over F_p, stored by its three entries above the diagonal
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Heis {
    m12: u32,
    m13: u32,
    m23: u32,
}

impl Heis {
    fn mul(self, o: Heis, p: u32) -> Heis {
        Heis {
            m12: (self.m12 + o.m12) % p,
            m23: (self.m23 + o.m23) % p,
            m13: (self.m13 + o.m13 + self.m12 * o.m23) % p,
        }
    }
}

/// The group with elements in normal form. The multiplication is taken from the matrix
/// model a = I + E₁₂, b = I + E₂₃, c = I + E₁₃ and then checked against the presentation.
#[derive(Debug, Clone)]
pub struct ExtraspecialGroup {
    pub p: u32,
}

impl ExtraspecialGroup {
    pub fn new(p: u32) -> Result<Self, GroupError> {
        if p < 3 || !crate::exact::fp::is_prime(p) {
            return Err(GroupError::BadPrime(p));
        }
        Ok(ExtraspecialGroup { p })
    }

    pub fn order(&self) -> usize {
        (self.p as usize).pow(3)
    }

    pub fn identity(&self) -> Element {
        Element { i: 0, j: 0, k: 0 }
    }

    pub fn a(&self) -> Element {
        Element { i: 1, j: 0, k: 0 }
    }

    pub fn b(&self) -> Element {
        Element { i: 0, j: 1, k: 0 }
    }

    pub fn c(&self) -> Element {
        Element { i: 0, j: 0, k: 1 }
    }

    pub fn elements(&self) -> Vec<Element> {
        let p = self.p;
        let mut out = Vec::with_capacity(self.order());
        for i in 0..p {
            for j in 0..p {
                for k in 0..p {
                    out.push(Element { i, j, k });
                }
            }
        }
        out
    }

    fn to_matrix(&self, e: Element) -> Heis {
        // aⁱbʲ = I + iE₁₂ + jE₂₃ + ijE₁₃, then cᵏ adds kE₁₃
        Heis {
            m12: e.i,
            m23: e.j,
            m13: (e.i * e.j + e.k) % self.p,
        }
    }

    fn from_matrix(&self, m: Heis) -> Element {
        let p = self.p;
        Element {
            i: m.m12,
            j: m.m23,
            k: (m.m13 + p * p - m.m12 * m.m23 % p) % p,
        }
    }

    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.from_matrix(self.to_matrix(x).mul(self.to_matrix(y), self.p))
    }

    /// The closed form (i₁+i₂, j₁+j₂, k₁+k₂−j₁i₂).
    pub fn mul_formula(&self, x: Element, y: Element) -> Element {
        let p = self.p;
        Element {
            i: (x.i + y.i) % p,
            j: (x.j + y.j) % p,
            k: (x.k + y.k + p * p - x.j * y.i % p) % p,
        }
    }

    pub fn inv(&self, x: Element) -> Element {
        let p = self.p;
        // solve x·y = 1 with the closed form
        let i = (p - x.i) % p;
        let j = (p - x.j) % p;
        let k = (p * p - x.k + x.j * i % p) % p;
        Element { i, j, k }
    }

    pub fn pow(&self, x: Element, n: u32) -> Element {
        (0..n).fold(self.identity(), |acc, _| self.mul(acc, x))
    }

    /// x⁻¹y⁻¹xy.
    pub fn commutator(&self, x: Element, y: Element) -> Element {
        let xy = self.mul(x, y);
        self.mul(self.mul(self.inv(x), self.inv(y)), xy)
    }

    /// Checks the defining relations: generators of order p, c central, [a,b] = c,
    /// and that a, b generate a group of order p³.
    pub fn check_presentation(&self) -> bool {
        let (a, b, c, e) = (self.a(), self.b(), self.c(), self.identity());
        let p = self.p;
        let rel = self.pow(a, p) == e
            && self.pow(b, p) == e
            && self.pow(c, p) == e
            && self.commutator(a, c) == e
            && self.commutator(b, c) == e
            && self.commutator(a, b) == c;
        let mut seen = BTreeSet::from([e]);
        let mut frontier = vec![e];
        while let Some(x) = frontier.pop() {
            for g in [a, b] {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        rel && seen.len() == self.order()
    }

    pub fn center(&self) -> Vec<Element> {
        let all = self.elements();
        all.iter()
            .copied()
            .filter(|&z| all.iter().all(|&x| self.mul(x, z) == self.mul(z, x)))
            .collect()
    }

    pub fn conjugate(&self, g: Element, x: Element) -> Element {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Sizes of the conjugacy classes of elements.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut left: BTreeSet<Element> = self.elements().into_iter().collect();
        let mut out = Vec::new();
        while let Some(&x) = left.iter().next() {
            let class: BTreeSet<Element> = self.elements().into_iter().map(|g| self.conjugate(g, x)).collect();
            out.push(class.len());
            for y in class {
                left.remove(&y);
            }
        }
        out
    }

    pub fn cyclic_subgroup(&self, g: Element) -> BTreeSet<Element> {
        let mut out = BTreeSet::from([self.identity()]);
        let mut x = g;
        while out.insert(x) {
            x = self.mul(x, g);
        }
        out
    }
}

/// One conjugacy class of cyclic subgroups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupRecord {
    pub generator: Element,
    pub order: usize,
    pub normalizer_order: usize,
    pub centralizer_order: usize,
    pub class_id: usize,
    pub class_size: usize,
    pub central: bool,
}

impl SubgroupRecord {
    /// |N/H|² / |Z| as an exact rational.
    pub fn factor(&self) -> Rational {
        let q = BigInt::from(self.normalizer_order / self.order);
        Rational::new(&q * &q, BigInt::from(self.centralizer_order))
    }
}

/// One record per conjugacy class of cyclic subgroups, found by brute force.
pub fn cyclic_subgroup_census(g: &ExtraspecialGroup) -> Vec<SubgroupRecord> {
    let all = g.elements();
    let mut subgroups: Vec<BTreeSet<Element>> = Vec::new();
    for &x in &all {
        let h = g.cyclic_subgroup(x);
        if !subgroups.contains(&h) {
            subgroups.push(h);
        }
    }
    let mut assigned = vec![None; subgroups.len()];
    let mut out = Vec::new();
    for idx in 0..subgroups.len() {
        if assigned[idx].is_some() {
            continue;
        }
        let h = &subgroups[idx];
        let class_id = out.len();
        let mut class_size = 0;
        for x in &all {
            let conj: BTreeSet<Element> = h.iter().map(|&y| g.conjugate(*x, y)).collect();
            if let Some(j) = subgroups.iter().position(|s| *s == conj) {
                if assigned[j].is_none() {
                    assigned[j] = Some(class_id);
                    class_size += 1;
                }
            }
        }
        let normalizer = all
            .iter()
            .filter(|&&x| h.iter().all(|&y| h.contains(&g.conjugate(x, y))))
            .count();
        let centralizer = all
            .iter()
            .filter(|&&x| h.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
            .count();
        let generator = h.iter().copied().find(|&y| y != g.identity()).unwrap_or(g.identity());
        out.push(SubgroupRecord {
            generator,
            order: h.len(),
            normalizer_order: normalizer,
            centralizer_order: centralizer,
            class_id,
            class_size,
            central: centralizer == all.len(),
        });
    }
    out
}

/// The product of |N/H|²/|Z| over the census and its exact square root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OliverReport {
    pub p: u32,
    pub product: String,
    pub order: u64,
    pub trivial_factor: String,
    pub center_factor: String,
    pub non_central_factors: Vec<String>,
}

pub fn oliver_order(p: u32) -> Result<OliverReport, GroupError> {
    let g = ExtraspecialGroup::new(p)?;
    let census = cyclic_subgroup_census(&g);
    let product = census.iter().fold(Rational::one(), |acc, r| acc * r.factor());
    if !product.is_integer() || product.is_negative() {
        return Err(GroupError::NonSquareProduct(product.to_string()));
    }
    let n = product.to_integer();
    let root = n.sqrt();
    if &root * &root != n {
        return Err(GroupError::NonSquareProduct(n.to_string()));
    }
    let factor_of = |pred: &dyn Fn(&SubgroupRecord) -> bool| -> Vec<String> {
        census.iter().filter(|r| pred(r)).map(|r| r.factor().to_string()).collect()
    };
    Ok(OliverReport {
        p,
        product: n.to_string(),
        order: num_traits::ToPrimitive::to_u64(&root).ok_or(GroupError::NonSquareProduct(n.to_string()))?,
        trivial_factor: factor_of(&|r| r.order == 1).join(","),
        center_factor: factor_of(&|r| r.order > 1 && r.central).join(","),
        non_central_factors: factor_of(&|r| !r.central),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_convention() {
        let g = ExtraspecialGroup::new(3).unwrap();
        let ab = g.mul(g.a(), g.b());
        let bac = g.mul(g.mul(g.b(), g.a()), g.c());
        assert_eq!(ab, bac);
        assert_eq!(g.mul(g.identity(), g.b()), g.b());
    }

    #[test]
    fn inverse_is_two_sided() {
        let g = ExtraspecialGroup::new(5).unwrap();
        for x in g.elements() {
            assert_eq!(g.mul(x, g.inv(x)), g.identity());
            assert_eq!(g.mul(g.inv(x), x), g.identity());
        }
    }
}

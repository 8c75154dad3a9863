//! Finitely generated abelian groups as named cyclic summands.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A direct sum of cyclic groups; an order of 0 encodes an infinite cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbGroup {
    gens: Vec<String>,
    orders: Vec<BigUint>,
}

impl AbGroup {
    pub fn trivial() -> Self {
        AbGroup {
            gens: Vec::new(),
            orders: Vec::new(),
        }
    }

    /// Factors of order 1 are dropped.
    pub fn new<S: Into<String>>(summands: impl IntoIterator<Item = (S, u64)>) -> Self {
        let (gens, orders) = summands
            .into_iter()
            .map(|(g, o)| (g.into(), BigUint::from(o)))
            .unzip();
        Self::from_big_orders(gens, orders)
    }

    pub fn from_big_orders(gens: Vec<String>, orders: Vec<BigUint>) -> Self {
        assert_eq!(gens.len(), orders.len());
        let (gens, orders) = gens
            .into_iter()
            .zip(orders)
            .filter(|(_, o)| !o.is_one())
            .unzip();
        AbGroup { gens, orders }
    }

    /// `Z^free ⊕ ⊕ Z/t` with synthetic generator names.
    pub fn from_orders(orders: &[u64]) -> Self {
        Self::new(orders.iter().enumerate().map(|(i, &o)| (format!("g{}", i + 1), o)))
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn orders(&self) -> &[BigUint] {
        &self.orders
    }

    pub fn summands(&self) -> impl Iterator<Item = (&str, &BigUint)> {
        self.gens.iter().map(String::as_str).zip(&self.orders)
    }

    pub fn free_rank(&self) -> usize {
        self.orders.iter().filter(|o| o.is_zero()).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigUint {
        self.orders
            .iter()
            .filter(|o| !o.is_zero())
            .fold(BigUint::one(), |a, b| a * b)
    }

    /// Dimension of `G ⊗ F_p`.
    pub fn tensor_rank(&self, p: u64) -> usize {
        let p = BigUint::from(p);
        self.orders
            .iter()
            .filter(|o| o.is_zero() || (*o % &p).is_zero())
            .count()
    }

    /// Dimension of `Tor(G, F_p)`, the number of cyclic summands with order divisible by p.
    pub fn p_torsion_rank(&self, p: u64) -> usize {
        let p = BigUint::from(p);
        self.orders
            .iter()
            .filter(|o| !o.is_zero() && (*o % &p).is_zero())
            .count()
    }

    /// Quotient by the torsion prime to `p`: each finite order is replaced by its p-part.
    pub fn p_localize(&self, p: u64) -> AbGroup {
        let pb = BigUint::from(p);
        let (gens, orders) = self
            .gens
            .iter()
            .zip(&self.orders)
            .map(|(g, o)| {
                if o.is_zero() {
                    return (g.clone(), o.clone());
                }
                let mut part = BigUint::one();
                let mut rest = o.clone();
                while (&rest % &pb).is_zero() {
                    rest /= &pb;
                    part *= &pb;
                }
                (g.clone(), part)
            })
            .unzip();
        Self::from_big_orders(gens, orders)
    }

    pub fn direct_sum(&self, other: &AbGroup) -> AbGroup {
        let mut g = self.clone();
        g.gens.extend(other.gens.iter().cloned());
        g.orders.extend(other.orders.iter().cloned());
        g
    }

    /// Invariant factor form: torsion factors d1 | d2 | ... followed by the free factors.
    pub fn normalized(&self) -> AbGroup {
        // split every finite order into prime powers, then regroup
        let mut prime_powers: Vec<(u64, Vec<BigUint>)> = Vec::new();
        for o in self.orders.iter().filter(|o| !o.is_zero()) {
            for (q, e) in factor(o) {
                let pw = BigUint::from(q).pow(e);
                match prime_powers.iter_mut().find(|(pq, _)| *pq == q) {
                    Some((_, v)) => v.push(pw),
                    None => prime_powers.push((q, vec![pw])),
                }
            }
        }
        let len = prime_powers.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        let mut factors = vec![BigUint::one(); len];
        for (_, mut v) in prime_powers {
            v.sort();
            let off = len - v.len();
            for (i, x) in v.into_iter().enumerate() {
                factors[off + i] *= x;
            }
        }
        let free = self.free_rank();
        factors.extend(std::iter::repeat(BigUint::zero()).take(free));
        let gens = (1..=factors.len()).map(|i| format!("g{i}")).collect();
        Self::from_big_orders(gens, factors)
    }

    /// Isomorphism test through invariant factors.
    pub fn isomorphic(&self, other: &AbGroup) -> bool {
        self.normalized().orders == other.normalized().orders
    }
}

fn factor(n: &BigUint) -> Vec<(u64, u32)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = 2u64;
    while !n.is_one() {
        let db = BigUint::from(d);
        if &db * &db > n {
            let last = n.to_u64().expect("cyclic order too large to factor");
            out.push((last, 1));
            break;
        }
        let mut e = 0;
        while (&n % &db).is_zero() {
            n /= &db;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    out
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        for _ in 0..self.free_rank() {
            parts.push("Z".into());
        }
        let mut tors: Vec<&BigUint> = self.orders.iter().filter(|o| !o.is_zero()).collect();
        tors.sort();
        parts.extend(tors.into_iter().map(|o| format!("Z/{o}")));
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn localize_examples() {
        let g = AbGroup::new([("x", 0), ("y", 6)]);
        assert_eq!(g.p_localize(3).to_string(), "Z ⊕ Z/3");
        let h = AbGroup::new([("a", 3), ("b", 3)]);
        assert_eq!(h.p_localize(3), h);
        // 240 = 16 * 3 * 5
        assert_eq!(AbGroup::new([("c", 240)]).p_localize(3).to_string(), "Z/3");
    }

    #[test]
    fn normal_form_chain() {
        let g = AbGroup::from_orders(&[4, 6, 0]);
        let n = g.normalized();
        let o: Vec<u64> = n.orders().iter().map(|x| x.to_u64().unwrap()).collect();
        assert_eq!(o, vec![2, 12, 0]);
    }

    #[test]
    fn ranks() {
        let g = AbGroup::from_orders(&[0, 3, 9, 2]);
        assert_eq!(g.tensor_rank(3), 3);
        assert_eq!(g.p_torsion_rank(3), 2);
        assert_eq!(g.free_rank(), 1);
    }
}

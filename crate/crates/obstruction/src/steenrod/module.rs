//! Finite graded modules over the Steenrod algebra, given by matrices for β and the P^s.

use std::collections::BTreeMap;

use super::algebra::{binom_mod, SteenrodAlgebra, Tok};
use super::SteenrodError;
use crate::exact::FpMatrix;

/// A graded F_p-module, zero above `top`, with generator actions as matrices
/// (columns index the source basis).
#[derive(Debug, Clone)]
pub struct ModuleWithAction {
    pub name: String,
    pub p: u32,
    pub top: u32,
    /// Degrees above `valid_through` are an artificial truncation.
    pub valid_through: Option<u32>,
    pub basis: Vec<Vec<String>>,
    actions: BTreeMap<(Tok, u32), FpMatrix>,
}

impl ModuleWithAction {
    pub fn dim(&self, d: u32) -> usize {
        self.basis.get(d as usize).map_or(0, Vec::len)
    }

    /// Applies one generator to a vector in degree `d`.
    pub fn act_tok(&self, tok: Tok, d: u32, v: &[u32]) -> Vec<u32> {
        let e = d + tok.degree(self.p);
        if e > self.top || tok == Tok::P(0) {
            return if tok == Tok::P(0) { v.to_vec() } else { Vec::new() };
        }
        match self.actions.get(&(tok, d)) {
            Some(m) => m.mul_vec(v),
            None => vec![0; self.dim(e)],
        }
    }

    /// Applies a word (rightmost letter first).
    pub fn act_word(&self, word: &[Tok], d: u32, v: &[u32]) -> Vec<u32> {
        let mut cur = v.to_vec();
        let mut deg = d;
        for &t in word.iter().rev() {
            cur = self.act_tok(t, deg, &cur);
            deg += t.degree(self.p);
            if deg > self.top {
                return Vec::new();
            }
        }
        cur
    }

    /// Image of a basis element under a word, as a vector (empty when above `top`).
    pub fn act_basis(&self, word: &[Tok], d: u32, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim(d)];
        v[i] = 1;
        self.act_word(word, d, &v)
    }

    /// Labels of the nonzero entries of a vector in degree `d`, for reports.
    pub fn describe(&self, d: u32, v: &[u32]) -> String {
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let l = &self.basis[d as usize][i];
                if c == 1 { l.clone() } else { format!("{c}{l}") }
            })
            .collect();
        if parts.is_empty() { "0".into() } else { parts.join(" + ") }
    }

    /// Checks β² = 0 and every Adem relation between two generators as an operator
    /// identity on the basis; returns the number of identities checked.
    pub fn check_adem(&self, alg: &SteenrodAlgebra) -> Result<usize, SteenrodError> {
        let p = self.p;
        let step = 2 * (p - 1);
        let smax = self.top / step + 1;
        let mut words: Vec<Vec<Tok>> = vec![vec![Tok::Beta, Tok::Beta]];
        for a in 1..=smax {
            for b in 1..=smax {
                if a < p * b {
                    words.push(vec![Tok::P(a), Tok::P(b)]);
                }
                if a <= p * b {
                    words.push(vec![Tok::P(a), Tok::Beta, Tok::P(b)]);
                }
            }
        }
        let mut checked = 0;
        for w in words {
            let wd: u32 = w.iter().map(|t| t.degree(p)).sum();
            let rhs = alg.adem_reduce(&w);
            for d in 0..=self.top {
                if d + wd > self.top {
                    break;
                }
                for i in 0..self.dim(d) {
                    let lhs = self.act_basis(&w, d, i);
                    let mut right = vec![0u32; self.dim(d + wd)];
                    for (m, &c) in &rhs.terms {
                        let x = self.act_basis(m.word(), d, i);
                        for (r, y) in right.iter_mut().zip(&x) {
                            *r = (*r + c * y) % p;
                        }
                    }
                    let lhs = if lhs.is_empty() { vec![0; right.len()] } else { lhs };
                    if lhs != right {
                        return Err(SteenrodError::AdemViolated {
                            word: format!("{w:?}"),
                            degree: d,
                            index: i,
                        });
                    }
                    checked += 1;
                }
            }
        }
        Ok(checked)
    }
}

/// The module of the sphere: F_p in degree 0.
pub fn sphere(p: u32) -> ModuleWithAction {
    ModuleWithAction {
        name: "S".into(),
        p,
        top: 0,
        valid_through: None,
        basis: vec![vec!["ι".into()]],
        actions: BTreeMap::new(),
    }
}

/// Groups whose Thom module is modelled; `t` picks the subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ThomKind {
    /// The circle: U·F_p[τ̄].
    S1,
    /// The order-p² subgroup: U·Λ(u)⊗F_p[v].
    Dt(u32),
    /// Their product: U·Λ(u)⊗F_p[v]⊗F_p[τ̄].
    Ht(u32),
}

// basis monomial U u^e v^a τ̄^b
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Mono {
    e: u32,
    a: u32,
    b: u32,
}

impl Mono {
    fn degree(self) -> u32 {
        self.e + 2 * self.a + 2 * self.b
    }

    fn label(self) -> String {
        let pw = |name: &str, k: u32| match k {
            0 => String::new(),
            1 => name.to_string(),
            _ => format!("{name}^{k}"),
        };
        format!("U{}{}{}", pw("u", self.e), pw("v", self.a), pw("τ", self.b))
    }
}

// polynomials in v, τ̄ over F_p keyed by (exponent of v, exponent of τ̄)
type Poly2 = BTreeMap<(u32, u32), u32>;

fn poly_mul(x: &Poly2, y: &Poly2, p: u32, cap: u32) -> Poly2 {
    let mut out = Poly2::new();
    for (&(a, b), &c) in x {
        for (&(a2, b2), &c2) in y {
            if 2 * (a + a2 + b + b2) > cap {
                continue;
            }
            let e = out.entry((a + a2, b + b2)).or_insert(0);
            *e = (*e + c * c2) % p;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Total Wu class Σ_k w_k of the bundle over the group, with w_k in degree 2k(p−1):
/// the inverse of ∏(1 + x^{p−1}) over the first Chern classes x of the lines of the
/// representation the bundle is stably inverse to. Truncated at degree `cap`.
pub fn total_wu_class(kind: ThomKind, p: u32, cap: u32) -> Vec<Vec<((u32, u32), u32)>> {
    // lines as (coefficient of τ̄, coefficient of v)
    let (t, keep_v, keep_tau) = match kind {
        ThomKind::S1 => (0, false, true),
        ThomKind::Dt(t) => (t, true, false),
        ThomKind::Ht(t) => (t, true, true),
    };
    let (res_a, res_b) = if t < p { (1, t) } else { (0, 1) };
    let mut lines: Vec<(u32, u32)> = (0..p).map(|k| (1, k)).collect();
    lines.extend(std::iter::repeat((0, res_a)).take(p as usize));
    lines.extend(std::iter::repeat((0, res_b)).take(p as usize));
    let mut prod: Poly2 = Poly2::from([((0, 0), 1)]);
    for (ct, cv) in lines {
        let ct = if keep_tau { ct } else { 0 };
        let cv = if keep_v { cv % p } else { 0 };
        // x^{p−1} = Σ C(p−1, j) (cv v)^j (ct τ̄)^{p−1−j}
        let mut factor = Poly2::from([((0, 0), 1)]);
        for j in 0..p {
            let c = binom_mod(i64::from(p - 1), i64::from(j), p) * pow_mod(cv, j, p) % p
                * pow_mod(ct, p - 1 - j, p)
                % p;
            if c != 0 {
                let e = factor.entry((j, p - 1 - j)).or_insert(0);
                *e = (*e + c) % p;
            }
        }
        factor.retain(|_, c| *c != 0);
        prod = poly_mul(&prod, &factor, p, cap);
    }
    // 1/(1 + y) = Σ (−y)^n
    let mut y = prod.clone();
    y.remove(&(0, 0));
    let neg_y: Poly2 = y.iter().map(|(&k, &c)| (k, (p - c) % p)).collect();
    let mut inv = Poly2::from([((0, 0), 1)]);
    let mut power = inv.clone();
    loop {
        power = poly_mul(&power, &neg_y, p, cap);
        if power.is_empty() {
            break;
        }
        for (&k, &c) in &power {
            let e = inv.entry(k).or_insert(0);
            *e = (*e + c) % p;
        }
        inv.retain(|_, c| *c != 0);
    }
    let step = 2 * (p - 1);
    let mut out = vec![Vec::new(); (cap / step) as usize + 1];
    for ((a, b), c) in inv {
        let d = 2 * (a + b);
        out[(d / step) as usize].push(((a, b), c));
    }
    out
}

fn pow_mod(x: u32, e: u32, p: u32) -> u32 {
    (0..e).fold(1u64, |acc, _| acc * u64::from(x) % u64::from(p)) as u32
}

/// Thom module of the fixed bundle over the group, truncated above `cap`. The Thom class
/// is killed by β and P(U) = U·w for the total Wu class w; the rest follows from the
/// Cartan formula with βu = v, P¹v = v^p and P¹τ̄ = τ̄^p.
pub fn thom_module(kind: ThomKind, p: u32, cap: u32) -> ModuleWithAction {
    let (has_uv, has_tau) = match kind {
        ThomKind::S1 => (false, true),
        ThomKind::Dt(_) => (true, false),
        ThomKind::Ht(_) => (true, true),
    };
    let mut monos: Vec<Vec<Mono>> = vec![Vec::new(); cap as usize + 1];
    for e in 0..=u32::from(has_uv) {
        for a in 0..=(if has_uv { cap / 2 } else { 0 }) {
            for b in 0..=(if has_tau { cap / 2 } else { 0 }) {
                let m = Mono { e, a, b };
                if m.degree() <= cap {
                    monos[m.degree() as usize].push(m);
                }
            }
        }
    }
    for v in &mut monos {
        v.sort();
    }
    let index = |m: Mono| monos[m.degree() as usize].iter().position(|x| *x == m);
    let wu = total_wu_class(kind, p, cap);
    let mut actions = BTreeMap::new();
    let step = 2 * (p - 1);
    for d in 0..=cap {
        let src = &monos[d as usize];
        if src.is_empty() {
            continue;
        }
        if d < cap {
            let tgt_dim = monos[d as usize + 1].len();
            let mut trip = Vec::new();
            for (j, m) in src.iter().enumerate() {
                if m.e == 1 {
                    let img = Mono { e: 0, a: m.a + 1, b: m.b };
                    if let Some(i) = index(img) {
                        trip.push((i, j, 1i64));
                    }
                }
            }
            if tgt_dim > 0 {
                let mat = FpMatrix::from_triplets(p, tgt_dim, src.len(), trip).expect("valid prime");
                actions.insert((Tok::Beta, d), mat);
            }
        }
        // Cartan: P^s(U·m) = Σ_k U·w_k·P^{s−k}(m)
        let mut s = 1;
        while d + s * step <= cap {
            let e = d + s * step;
            let tgt_dim = monos[e as usize].len();
            let mut trip = Vec::new();
            for (j, m) in src.iter().enumerate() {
                for (k, wk) in wu.iter().enumerate().take(s as usize + 1) {
                    let rest = s - k as u32;
                    for &((wa, wb), wc) in wk {
                        // P^rest(v^a τ̄^b) = Σ C(a,i) C(b,rest−i) v^{a+i(p−1)} τ̄^{b+(rest−i)(p−1)}
                        for i in 0..=rest {
                            let c = binom_mod(i64::from(m.a), i64::from(i), p)
                                * binom_mod(i64::from(m.b), i64::from(rest - i), p)
                                % p
                                * wc
                                % p;
                            if c == 0 {
                                continue;
                            }
                            let img = Mono {
                                e: m.e,
                                a: m.a + i * (p - 1) + wa,
                                b: m.b + (rest - i) * (p - 1) + wb,
                            };
                            if let Some(r) = index(img) {
                                trip.push((r, j, i64::from(c)));
                            }
                        }
                    }
                }
            }
            if tgt_dim > 0 {
                let mat = FpMatrix::from_triplets(p, tgt_dim, src.len(), trip).expect("valid prime");
                actions.insert((Tok::P(s), d), mat);
            }
            s += 1;
        }
    }
    let name = match kind {
        ThomKind::S1 => "MS1".to_string(),
        ThomKind::Dt(t) => format!("MD{t}"),
        ThomKind::Ht(t) => format!("MH{t}"),
    };
    ModuleWithAction {
        name,
        p,
        top: cap,
        valid_through: Some(cap),
        basis: monos.iter().map(|v| v.iter().map(|m| m.label()).collect()).collect(),
        actions,
    }
}

/// A degree-preserving linear map between modules, one matrix per degree.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    pub p: u32,
    pub matrices: BTreeMap<u32, FpMatrix>,
}

impl ModuleMap {
    /// Sends the first basis element in degree 0 to the first one and everything else to 0:
    /// the restriction to a bottom cell.
    pub fn bottom_cell(src: &ModuleWithAction, tgt: &ModuleWithAction) -> ModuleMap {
        let mut matrices = BTreeMap::new();
        let m = FpMatrix::from_triplets(src.p, tgt.dim(0), src.dim(0), [(0, 0, 1)]).expect("valid prime");
        matrices.insert(0, m);
        ModuleMap { p: src.p, matrices }
    }

    pub fn identity(m: &ModuleWithAction) -> ModuleMap {
        let matrices = (0..=m.top)
            .filter(|&d| m.dim(d) > 0)
            .map(|d| (d, FpMatrix::identity(m.p, m.dim(d)).expect("valid prime")))
            .collect();
        ModuleMap { p: m.p, matrices }
    }

    pub fn apply(&self, d: u32, v: &[u32], tgt_dim: usize) -> Vec<u32> {
        match self.matrices.get(&d) {
            Some(m) => m.mul_vec(v),
            None => vec![0; tgt_dim],
        }
    }

    /// Checks that the map commutes with β and every P^s on the basis.
    pub fn is_linear(&self, src: &ModuleWithAction, tgt: &ModuleWithAction) -> bool {
        let p = src.p;
        let step = 2 * (p - 1);
        for d in 0..=src.top {
            let mut toks = vec![Tok::Beta];
            toks.extend((1..=src.top / step + 1).map(Tok::P));
            for tok in toks {
                let e = d + tok.degree(p);
                if e > src.top.max(tgt.top) {
                    continue;
                }
                for i in 0..src.dim(d) {
                    let mut v = vec![0; src.dim(d)];
                    v[i] = 1;
                    let moved = src.act_tok(tok, d, &v);
                    let left = if moved.is_empty() {
                        vec![0; tgt.dim(e)]
                    } else {
                        self.apply(e, &moved, tgt.dim(e))
                    };
                    let fv = self.apply(d, &v, tgt.dim(d));
                    let right = tgt.act_tok(tok, d, &fv);
                    let right = if right.is_empty() { vec![0; tgt.dim(e)] } else { right };
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(m: &ModuleWithAction, d: u32, label: &str) -> Vec<u32> {
        let i = m.basis[d as usize].iter().position(|l| l == label).unwrap();
        let mut v = vec![0; m.dim(d)];
        v[i] = 1;
        v
    }

    #[test]
    fn dt_generators_at_three() {
        let m = thom_module(ThomKind::Dt(1), 3, 9);
        let u = vec_of(&m, 0, "U");
        assert_eq!(m.describe(4, &m.act_tok(Tok::P(1), 0, &u)), "Uv^2");
        let uu = vec_of(&m, 1, "Uu");
        assert_eq!(m.describe(2, &m.act_tok(Tok::Beta, 1, &uu)), "Uv");
        // P¹(U u v²) = U u v⁴ (1 + 2) = 0
        let x = vec_of(&m, 5, "Uuv^2");
        assert_eq!(m.describe(9, &m.act_tok(Tok::P(1), 5, &x)), "0");
        assert_eq!(m.describe(0, &m.act_tok(Tok::Beta, 0, &u)), "0");
    }

    #[test]
    fn circle_thom_class_is_inert() {
        let m = thom_module(ThomKind::S1, 3, 12);
        let u = vec_of(&m, 0, "U");
        assert_eq!(m.describe(4, &m.act_tok(Tok::P(1), 0, &u)), "0");
        let t = vec_of(&m, 2, "Uτ");
        assert_eq!(m.describe(6, &m.act_tok(Tok::P(1), 2, &t)), "Uτ^3");
        for d in 0..12 {
            for i in 0..m.dim(d) {
                let mut v = vec![0; m.dim(d)];
                v[i] = 1;
                assert!(m.act_tok(Tok::Beta, d, &v).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn p2_kills_the_thom_class() {
        for p in [3, 5] {
            let m = thom_module(ThomKind::Ht(1), p, 4 * p - 3);
            let u = vec_of(&m, 0, "U");
            let img = m.act_tok(Tok::P(2), 0, &u);
            assert!(img.iter().all(|&x| x == 0));
        }
    }
}

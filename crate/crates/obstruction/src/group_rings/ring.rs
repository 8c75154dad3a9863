//! Degree-capped graded rings given by bases and a partial product table.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::monomial::{Monomial, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RingKind {
    /// Classifying space of the circle.
    BS1,
    /// The order-p extensions H̃ₜ of the circle (tables do not depend on t).
    BHt,
    /// The central product G̃ₚ.
    BGt,
    /// The finite subgroups Dₜ of order p.
    BDt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Coefficients {
    Integral,
    ModP,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RingId {
    pub kind: RingKind,
    pub p: u32,
    pub coeffs: Coefficients,
}

impl RingId {
    pub fn new(kind: RingKind, p: u32, coeffs: Coefficients) -> Self {
        RingId { kind, p, coeffs }
    }

    /// Stem used for data file names, e.g. `bgt_p3_z`.
    pub fn file_stem(&self) -> String {
        let k = match self.kind {
            RingKind::BS1 => "bs1",
            RingKind::BHt => "bht",
            RingKind::BGt => "bgt",
            RingKind::BDt => "bdt",
        };
        let c = match self.coeffs {
            Coefficients::Integral => "z",
            Coefficients::ModP => "fp",
        };
        format!("{k}_p{}_{c}", self.p)
    }
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.coeffs {
            Coefficients::Integral => "Z".to_string(),
            Coefficients::ModP => format!("F{}", self.p),
        };
        write!(f, "{:?}({};{c})", self.kind, self.p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("degree {degree} is above the cap {cap}")]
    DegreeAboveCap { degree: u32, cap: u32 },
    #[error("product {left} * {right} is not in the table of {ring}")]
    UnknownProduct {
        ring: RingId,
        left: Monomial,
        right: Monomial,
    },
    #[error("elements from different rings: {0} and {1}")]
    RingMismatch(RingId, RingId),
    #[error("monomial {0} is not a basis element of {1}")]
    NotInBasis(Monomial, RingId),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Terms = BTreeMap<Monomial, i64>;

/// Sparse element of a [`TruncatedRing`], coefficients reduced by the order of each monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedElement {
    ring: RingId,
    terms: Terms,
}

impl GradedElement {
    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Degree of the first term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree(self.ring.p))
    }
}

/// A ring model through a degree cap: per-degree monomial bases with additive orders
/// (0 for infinite), a product table on monomial pairs, and element-level product entries.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedRing {
    pub(crate) id: RingId,
    pub(crate) cap: u32,
    pub(crate) basis: BTreeMap<u32, Vec<(Monomial, u64)>>,
    pub(crate) products: BTreeMap<(Monomial, Monomial), Terms>,
    pub(crate) aliases: Vec<(String, Terms)>,
    pub(crate) alias_products: Vec<(String, Monomial, Terms)>,
}

impl TruncatedRing {
    pub fn id(&self) -> RingId {
        self.id
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn prime(&self) -> u32 {
        self.id.p
    }

    pub fn ring_basis(&self, degree: u32) -> Result<Vec<Monomial>, RingError> {
        if degree > self.cap {
            return Err(RingError::DegreeAboveCap {
                degree,
                cap: self.cap,
            });
        }
        Ok(self
            .basis
            .get(&degree)
            .map(|v| v.iter().map(|(m, _)| m.clone()).collect())
            .unwrap_or_default())
    }

    /// Additive order of a basis monomial, 0 meaning infinite.
    pub fn order(&self, m: &Monomial) -> Option<u64> {
        let d = m.degree(self.id.p);
        self.basis
            .get(&d)?
            .iter()
            .find(|(b, _)| b == m)
            .map(|(_, o)| *o)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.order(m).is_some()
    }

    pub fn products(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Terms)> {
        self.products.iter()
    }

    pub fn alias(&self, name: &str) -> Option<GradedElement> {
        self.aliases
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, t)| self.from_terms(t.clone()))
    }

    fn reduce_coeff(&self, m: &Monomial, c: i64) -> i64 {
        match self.order(m) {
            Some(0) => c,
            Some(o) => c.rem_euclid(o as i64),
            None => c,
        }
    }

    /// Builds an element, reducing coefficients; monomials must be basis elements.
    pub fn element<'a>(
        &self,
        terms: impl IntoIterator<Item = (i64, &'a Monomial)>,
    ) -> Result<GradedElement, RingError> {
        let mut out = Terms::new();
        for (c, m) in terms {
            if !self.contains(m) {
                return Err(RingError::NotInBasis(m.clone(), self.id));
            }
            *out.entry(m.clone()).or_insert(0) += c;
        }
        Ok(self.from_terms(out))
    }

    pub fn from_terms(&self, terms: Terms) -> GradedElement {
        let terms = terms
            .into_iter()
            .map(|(m, c)| {
                let c = self.reduce_coeff(&m, c);
                (m, c)
            })
            .filter(|(_, c)| *c != 0)
            .collect();
        GradedElement {
            ring: self.id,
            terms,
        }
    }

    /// Reduces every stored coefficient by the order of its monomial.
    pub(crate) fn canonicalize(mut self) -> Self {
        let products = std::mem::take(&mut self.products);
        self.products = products
            .into_iter()
            .map(|(k, t)| (k, self.from_terms(t).terms))
            .collect();
        let aliases = std::mem::take(&mut self.aliases);
        self.aliases = aliases
            .into_iter()
            .map(|(n, t)| (n, self.from_terms(t).terms))
            .collect();
        let ap = std::mem::take(&mut self.alias_products);
        self.alias_products = ap
            .into_iter()
            .map(|(n, m, t)| (n, m, self.from_terms(t).terms))
            .collect();
        self
    }

    pub fn zero(&self) -> GradedElement {
        self.from_terms(Terms::new())
    }

    pub fn one(&self) -> GradedElement {
        self.monomial(&Monomial::one())
    }

    pub fn monomial(&self, m: &Monomial) -> GradedElement {
        let mut t = Terms::new();
        t.insert(m.clone(), 1);
        self.from_terms(t)
    }

    /// Parses a sum such as `alpha^3 - alpha^2*beta + 2*beta^3`; aliases are accepted as terms.
    pub fn parse(&self, s: &str) -> Result<GradedElement, RingError> {
        if let Some(a) = self.alias(s.trim()) {
            return Ok(a);
        }
        let terms = parse_terms(s)?;
        for m in terms.keys() {
            if !self.contains(m) {
                return Err(RingError::NotInBasis(m.clone(), self.id));
            }
        }
        Ok(self.from_terms(terms))
    }

    pub fn add(&self, a: &GradedElement, b: &GradedElement) -> GradedElement {
        let mut t = a.terms.clone();
        for (m, c) in &b.terms {
            *t.entry(m.clone()).or_insert(0) += c;
        }
        self.from_terms(t)
    }

    pub fn scale(&self, a: &GradedElement, k: i64) -> GradedElement {
        self.from_terms(a.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect())
    }

    pub fn sub(&self, a: &GradedElement, b: &GradedElement) -> GradedElement {
        self.add(a, &self.scale(b, -1))
    }

    /// Table lookup for a monomial pair, with the graded sign for reversed pairs.
    pub fn lookup(&self, a: &Monomial, b: &Monomial) -> Option<Terms> {
        if a.is_one() || b.is_one() {
            let m = if a.is_one() { b } else { a };
            return Some(Terms::from([(m.clone(), 1)]));
        }
        if a <= b {
            self.products.get(&(a.clone(), b.clone())).cloned()
        } else {
            let s = a.swap_sign(b, self.id.p);
            self.products
                .get(&(b.clone(), a.clone()))
                .map(|t| t.iter().map(|(m, c)| (m.clone(), c * s)).collect())
        }
    }

    pub fn multiply(&self, a: &GradedElement, b: &GradedElement) -> Result<GradedElement, RingError> {
        for x in [a, b] {
            if x.ring != self.id {
                return Err(RingError::RingMismatch(x.ring, self.id));
            }
        }
        let p = self.id.p;
        let mut acc = Terms::new();
        let mut missing = None;
        'outer: for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                if m1.degree(p) + m2.degree(p) > self.cap {
                    continue;
                }
                match self.lookup(m1, m2) {
                    Some(t) => {
                        for (m, c) in t {
                            *acc.entry(m).or_insert(0) += c1 * c2 * c;
                        }
                    }
                    None => {
                        missing = Some((m1.clone(), m2.clone()));
                        break 'outer;
                    }
                }
            }
        }
        let Some((left, right)) = missing else {
            return Ok(self.from_terms(acc));
        };
        // element-level entries, matched exactly in either order
        for (name, rhs_mono, value) in &self.alias_products {
            let lhs = self.alias(name).expect("alias products reference declared aliases");
            let rhs = self.monomial(rhs_mono);
            if (a == &lhs && b == &rhs) || (a == &rhs && b == &lhs) {
                return Ok(self.from_terms(value.clone()));
            }
        }
        Err(RingError::UnknownProduct {
            ring: self.id,
            left,
            right,
        })
    }

    pub fn pow(&self, a: &GradedElement, n: u32) -> Result<GradedElement, RingError> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.multiply(&acc, a)?;
        }
        Ok(acc)
    }

    /// Keeps only the terms of the given degree.
    pub fn homogeneous(&self, a: &GradedElement, degree: u32) -> GradedElement {
        let p = self.id.p;
        self.from_terms(
            a.terms
                .iter()
                .filter(|(m, _)| m.degree(p) == degree)
                .map(|(m, c)| (m.clone(), *c))
                .collect(),
        )
    }

    pub fn display(&self, a: &GradedElement) -> String {
        format_terms(&a.terms, |m| self.order(m).unwrap_or(0))
    }
}

/// Symmetric residue for display: torsion coefficients print in (-o/2, o/2].
fn signed(c: i64, order: u64) -> i64 {
    if order == 0 {
        return c;
    }
    let o = order as i64;
    let r = c.rem_euclid(o);
    if 2 * r > o {
        r - o
    } else {
        r
    }
}

pub(crate) fn format_terms(terms: &Terms, order: impl Fn(&Monomial) -> u64) -> String {
    let mut out = String::new();
    for (m, c) in terms.iter().rev() {
        let c = signed(*c, order(m));
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        let body = if m.is_one() {
            mag.to_string()
        } else if mag == 1 {
            m.to_string()
        } else {
            format!("{mag}*{m}")
        };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(crate) fn parse_terms(s: &str) -> Result<Terms, ParseError> {
    let s = s.trim();
    let mut out = Terms::new();
    if s == "0" {
        return Ok(out);
    }
    // split on top-level + and - separated by spaces
    let mut chunks: Vec<(i64, String)> = Vec::new();
    let mut sign = 1;
    let mut cur = String::new();
    let toks: Vec<&str> = s.split_whitespace().collect();
    for tok in toks {
        match tok {
            "+" | "-" => {
                if !cur.is_empty() {
                    chunks.push((sign, std::mem::take(&mut cur)));
                }
                sign = if tok == "-" { -1 } else { 1 };
            }
            _ => cur.push_str(tok),
        }
    }
    if !cur.is_empty() {
        chunks.push((sign, cur));
    }
    for (sign, mut chunk) in chunks {
        let mut sign = sign;
        if let Some(rest) = chunk.strip_prefix('-') {
            sign = -sign;
            chunk = rest.to_string();
        }
        let (coef, mono) = match chunk.split_once('*') {
            Some((c, rest)) if c.chars().all(|ch| ch.is_ascii_digit()) => {
                (c.parse::<i64>().map_err(|_| ParseError::Malformed(chunk.clone()))?, rest.to_string())
            }
            _ if chunk.chars().all(|ch| ch.is_ascii_digit()) => (
                chunk
                    .parse::<i64>()
                    .map_err(|_| ParseError::Malformed(chunk.clone()))?,
                "1".to_string(),
            ),
            _ => (1, chunk.clone()),
        };
        let m: Monomial = mono.parse()?;
        *out.entry(m).or_insert(0) += sign * coef;
    }
    Ok(out)
}

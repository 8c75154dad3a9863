//! Named cohomology classes built from fundamental classes by β, P¹, the integral
//! Bockstein δ and cup products, with the relations needed inside the tabled window.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Class {
    /// The unit in degree 0.
    Unit,
    /// Mod-p fundamental class ι_j of K_p.
    Iota(u8),
    /// Integral fundamental class z_j of K.
    Z(u8),
    /// Mod-p reduction z̄_j of z_j.
    ZBar(u8),
    Beta(Box<Class>),
    P1(Box<Class>),
    /// Integral Bockstein of a mod-p class.
    Delta(Box<Class>),
    Cup(Box<Class>, Box<Class>),
}

/// Linear combination with coefficients reduced mod p into [0, p).
pub type Combo = Vec<(u32, Class)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse class {0:?}")]
pub struct ClassParseError(pub String);

impl Class {
    pub fn beta(x: Class) -> Class {
        Class::Beta(Box::new(x))
    }
    pub fn p1(x: Class) -> Class {
        Class::P1(Box::new(x))
    }
    pub fn delta(x: Class) -> Class {
        Class::Delta(Box::new(x))
    }
    pub fn cup(a: Class, b: Class) -> Class {
        Class::Cup(Box::new(a), Box::new(b))
    }

    pub fn degree(&self, p: u32) -> u32 {
        match self {
            Class::Unit => 0,
            Class::Iota(_) | Class::Z(_) | Class::ZBar(_) => 2 * p - 1,
            Class::Beta(x) | Class::Delta(x) => x.degree(p) + 1,
            Class::P1(x) => x.degree(p) + 2 * (p - 1),
            Class::Cup(a, b) => a.degree(p) + b.degree(p),
        }
    }

    /// Unicode rendering, e.g. `βP¹ι₁` or `z̄₁∪z̄₂`.
    pub fn pretty(&self) -> String {
        let sub = |j: &u8| if *j == 1 { "₁" } else { "₂" };
        match self {
            Class::Unit => "1".into(),
            Class::Iota(j) => format!("ι{}", sub(j)),
            Class::Z(j) => format!("z{}", sub(j)),
            Class::ZBar(j) => format!("z̄{}", sub(j)),
            Class::Beta(x) => format!("β{}", x.pretty()),
            Class::P1(x) => format!("P¹{}", x.pretty()),
            Class::Delta(x) => format!("δ{}", x.pretty()),
            Class::Cup(a, b) => format!("{}∪{}", a.pretty(), b.pretty()),
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Class::Unit => write!(f, "1"),
            Class::Iota(j) => write!(f, "i{j}"),
            Class::Z(j) => write!(f, "z{j}"),
            Class::ZBar(j) => write!(f, "zb{j}"),
            Class::Beta(x) => write!(f, "b({x})"),
            Class::P1(x) => write!(f, "P({x})"),
            Class::Delta(x) => write!(f, "d({x})"),
            Class::Cup(a, b) => write!(f, "{a}*{b}"),
        }
    }
}

fn parse_term(s: &str) -> Result<(Class, &str), ClassParseError> {
    let err = || ClassParseError(s.to_string());
    if let Some(rest) = s.strip_prefix('1') {
        return Ok((Class::Unit, rest));
    }
    for (name, ctor) in [
        ("b(", Class::beta as fn(Class) -> Class),
        ("P(", Class::p1),
        ("d(", Class::delta),
    ] {
        if let Some(rest) = s.strip_prefix(name) {
            let (inner, rest) = parse_expr(rest)?;
            let rest = rest.strip_prefix(')').ok_or_else(err)?;
            return Ok((ctor(inner), rest));
        }
    }
    for (name, ctor) in [
        ("zb", Class::ZBar as fn(u8) -> Class),
        ("z", Class::Z),
        ("i", Class::Iota),
    ] {
        if let Some(rest) = s.strip_prefix(name) {
            let j = match rest.as_bytes().first() {
                Some(b'1') => 1,
                Some(b'2') => 2,
                _ => return Err(err()),
            };
            return Ok((ctor(j), &rest[1..]));
        }
    }
    Err(err())
}

fn parse_expr(s: &str) -> Result<(Class, &str), ClassParseError> {
    let (a, rest) = parse_term(s)?;
    if let Some(rest) = rest.strip_prefix('*') {
        let (b, rest) = parse_term(rest)?;
        return Ok((Class::cup(a, b), rest));
    }
    Ok((a, rest))
}

impl FromStr for Class {
    type Err = ClassParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_expr(s.trim())? {
            (c, "") => Ok(c),
            _ => Err(ClassParseError(s.to_string())),
        }
    }
}

fn is_integral(c: &Class) -> bool {
    match c {
        Class::Z(_) | Class::Delta(_) => true,
        Class::Cup(a, b) => is_integral(a) || is_integral(b),
        _ => false,
    }
}

fn push(out: &mut Combo, c: u32, x: Class, p: u32) {
    if let Some(e) = out.iter_mut().find(|(_, y)| *y == x) {
        e.0 = (e.0 + c) % p;
    } else {
        out.push((c % p, x));
    }
    out.retain(|(c, _)| *c != 0);
}

fn signed(c: u32, negate: bool, p: u32) -> u32 {
    if negate {
        (p - c % p) % p
    } else {
        c % p
    }
}

/// Graded-commutative product of two basic classes, ordered canonically.
fn cup_basic(a: Class, b: Class, p: u32) -> Combo {
    match (&a, &b) {
        (Class::Unit, _) => return vec![(1, b)],
        (_, Class::Unit) => return vec![(1, a)],
        _ => {}
    }
    let (da, db) = (a.degree(p), b.degree(p));
    if a == b && da % 2 == 1 {
        return Vec::new();
    }
    if a <= b {
        vec![(1, Class::cup(a, b))]
    } else {
        vec![(signed(1, da * db % 2 == 1, p), Class::cup(b, a))]
    }
}

fn beta_basic(x: Class, p: u32) -> Combo {
    match x {
        // β of a reduction of an integral class, and β∘β, vanish
        Class::Unit | Class::ZBar(_) | Class::Beta(_) => Vec::new(),
        Class::Cup(a, b) => {
            let mut out = Combo::new();
            let sign = a.degree(p) % 2 == 1;
            for (c, t) in cup_combo(&beta_basic((*a).clone(), p), &[(1, (*b).clone())], p) {
                push(&mut out, c, t, p);
            }
            for (c, t) in cup_combo(&[(1, (*a).clone())], &beta_basic((*b).clone(), p), p) {
                push(&mut out, signed(c, sign, p), t, p);
            }
            out
        }
        x => vec![(1, Class::beta(x))],
    }
}

fn p1_basic(x: Class, p: u32) -> Combo {
    match x {
        Class::Cup(a, b) => {
            // Cartan formula with P⁰ = 1
            let mut out = Combo::new();
            for (c, t) in cup_combo(&p1_basic((*a).clone(), p), &[(1, (*b).clone())], p) {
                push(&mut out, c, t, p);
            }
            for (c, t) in cup_combo(&[(1, (*a).clone())], &p1_basic((*b).clone(), p), p) {
                push(&mut out, c, t, p);
            }
            out
        }
        Class::Unit => Vec::new(),
        x => vec![(1, Class::p1(x))],
    }
}

fn cup_combo(a: &[(u32, Class)], b: &[(u32, Class)], p: u32) -> Combo {
    let mut out = Combo::new();
    for (ca, x) in a {
        for (cb, y) in b {
            for (c, t) in cup_basic(x.clone(), y.clone(), p) {
                push(&mut out, (ca * cb % p) * c, t, p);
            }
        }
    }
    out
}

/// Normal form of a mod-p class as a combination of basic named classes.
pub fn normalize(x: &Class, p: u32) -> Combo {
    let apply = |inner: &Class, f: &dyn Fn(Class) -> Combo| {
        let mut out = Combo::new();
        for (c, t) in normalize(inner, p) {
            for (d, s) in f(t) {
                push(&mut out, c * d, s, p);
            }
        }
        out
    };
    match x {
        Class::Unit | Class::Iota(_) | Class::Z(_) | Class::ZBar(_) => vec![(1, x.clone())],
        Class::Beta(inner) => apply(inner, &|t| beta_basic(t, p)),
        Class::P1(inner) => apply(inner, &|t| p1_basic(t, p)),
        Class::Delta(inner) => apply(inner, &|t| vec![(1, Class::delta(t))]),
        Class::Cup(a, b) => cup_combo(&normalize(a, p), &normalize(b, p), p),
    }
}

/// The mod-p operations applied in closure checks; integral classes are rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operation {
    Bockstein,
    P1,
}

pub fn apply_operation(op: Operation, x: &Class, p: u32) -> Option<Combo> {
    if is_integral(x) {
        return None;
    }
    let wrapped = match op {
        Operation::Bockstein => Class::beta(x.clone()),
        Operation::P1 => Class::p1(x.clone()),
    };
    Some(normalize(&wrapped, p))
}

//! Generator symbols and monomials of the cohomology rings.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Ring generators. Integral names carry no decoration; mod-p names follow the usual
/// convention (x, x' reduce α, β; y, y' are the odd classes whose Bocksteins are α, β).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    Alpha,
    Beta,
    Chi(u32),
    Zeta,
    X,
    XPrime,
    C(u32),
    Z,
    Y,
    YPrime,
    TauPrime,
    Tau,
    TauBar,
    VPrime,
    V,
    U,
}

impl Gen {
    pub fn degree(self, p: u32) -> u32 {
        match self {
            Gen::Alpha | Gen::Beta | Gen::X | Gen::XPrime => 2,
            Gen::TauPrime | Gen::Tau | Gen::TauBar | Gen::VPrime | Gen::V => 2,
            Gen::Y | Gen::YPrime | Gen::U => 1,
            Gen::Chi(k) | Gen::C(k) => 2 * k,
            Gen::Zeta | Gen::Z => 2 * p,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Gen::Y | Gen::YPrime | Gen::U)
    }

    pub fn name(self) -> String {
        match self {
            Gen::Alpha => "alpha".into(),
            Gen::Beta => "beta".into(),
            Gen::Chi(k) => format!("chi{k}"),
            Gen::Zeta => "zeta".into(),
            Gen::X => "x".into(),
            Gen::XPrime => "x'".into(),
            Gen::C(k) => format!("c{k}"),
            Gen::Z => "z".into(),
            Gen::Y => "y".into(),
            Gen::YPrime => "y'".into(),
            Gen::TauPrime => "tau'".into(),
            Gen::Tau => "tau".into(),
            Gen::TauBar => "taub".into(),
            Gen::VPrime => "v'".into(),
            Gen::V => "v".into(),
            Gen::U => "u".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed term `{0}`")]
    Malformed(String),
}

impl FromStr for Gen {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let g = match s {
            "alpha" => Gen::Alpha,
            "beta" => Gen::Beta,
            "zeta" => Gen::Zeta,
            "x" => Gen::X,
            "x'" => Gen::XPrime,
            "z" => Gen::Z,
            "y" => Gen::Y,
            "y'" => Gen::YPrime,
            "tau'" => Gen::TauPrime,
            "tau" => Gen::Tau,
            "taub" => Gen::TauBar,
            "v'" => Gen::VPrime,
            "v" => Gen::V,
            "u" => Gen::U,
            _ => {
                if let Some(k) = s.strip_prefix("chi").and_then(|k| k.parse().ok()) {
                    Gen::Chi(k)
                } else if let Some(k) = s.strip_prefix('c').and_then(|k| k.parse().ok()) {
                    Gen::C(k)
                } else {
                    return Err(ParseError::UnknownGenerator(s.into()));
                }
            }
        };
        Ok(g)
    }
}

/// Commutative product of generator powers, sorted by generator, no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Gen, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn gen(g: Gen) -> Self {
        Monomial(vec![(g, 1)])
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Gen, u32)>) -> Self {
        let mut m = Monomial::one();
        for (g, e) in factors {
            m.add_power(g, e);
        }
        m
    }

    fn add_power(&mut self, g: Gen, e: u32) {
        if e == 0 {
            return;
        }
        match self.0.binary_search_by(|(h, _)| h.cmp(&g)) {
            Ok(i) => self.0[i].1 += e,
            Err(i) => self.0.insert(i, (g, e)),
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Gen, u32)] {
        &self.0
    }

    pub fn exponent(&self, g: Gen) -> u32 {
        self.0
            .iter()
            .find(|(h, _)| *h == g)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn degree(&self, p: u32) -> u32 {
        self.0.iter().map(|(g, e)| g.degree(p) * e).sum()
    }

    /// Formal product, no relations applied.
    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut m = self.clone();
        for &(g, e) in &other.0 {
            m.add_power(g, e);
        }
        m
    }

    pub fn with_exponent(&self, g: Gen, e: u32) -> Monomial {
        let mut v: Vec<(Gen, u32)> = self.0.iter().copied().filter(|(h, _)| *h != g).collect();
        if e > 0 {
            v.push((g, e));
            v.sort();
        }
        Monomial(v)
    }

    /// Sign picked up by reversing the order of two factors.
    pub fn swap_sign(&self, other: &Monomial, p: u32) -> i64 {
        if (self.degree(p) * other.degree(p)) % 2 == 1 {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(g, e)| {
                if *e == 1 {
                    g.name()
                } else {
                    format!("{}^{e}", g.name())
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl FromStr for Monomial {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::one());
        }
        let mut m = Monomial::one();
        for part in s.split('*') {
            let part = part.trim();
            let (g, e) = match part.split_once('^') {
                Some((g, e)) => (
                    g,
                    e.parse::<u32>()
                        .map_err(|_| ParseError::Malformed(part.into()))?,
                ),
                None => (part, 1),
            };
            m.add_power(g.parse()?, e);
        }
        Ok(m)
    }
}

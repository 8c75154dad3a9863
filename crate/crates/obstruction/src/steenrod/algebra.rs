//! The odd-primary Steenrod algebra on the admissible basis, with Adem reduction.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use super::SteenrodError;

/// One letter of a word in the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tok {
    Beta,
    P(u32),
}

impl Tok {
    pub fn degree(self, p: u32) -> u32 {
        match self {
            Tok::Beta => 1,
            Tok::P(s) => 2 * s * (p - 1),
        }
    }
}

/// β^{ε₀}P^{s₁}β^{ε₁}…P^{s_k}β^{ε_k} stored as its word; the unit is the empty word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissibleMonomial {
    word: Vec<Tok>,
}

fn superscript(n: u32) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| SUP[c.to_digit(10).unwrap_or(0) as usize])
        .collect()
}

fn first_inadmissible(word: &[Tok], p: u32, from_right: bool) -> Option<(usize, usize)> {
    let n = word.len();
    let mut spots = Vec::new();
    for i in 0..n {
        match (word[i], word.get(i + 1), word.get(i + 2)) {
            (Tok::Beta, Some(Tok::Beta), _) => spots.push((i, 2)),
            (Tok::P(a), Some(Tok::P(b)), _) if a < p * b => spots.push((i, 2)),
            (Tok::P(a), Some(Tok::Beta), Some(Tok::P(b))) if a <= p * b => spots.push((i, 3)),
            _ => {}
        }
        if !from_right && !spots.is_empty() {
            break;
        }
    }
    if from_right {
        spots.pop()
    } else {
        spots.into_iter().next()
    }
}

impl AdmissibleMonomial {
    pub fn one() -> Self {
        AdmissibleMonomial { word: Vec::new() }
    }

    /// Builds β^{ε₀}P^{s₁}…P^{s_k}β^{ε_k}; `eps` has one more entry than `s`.
    pub fn from_parts(eps: &[bool], s: &[u32], p: u32) -> Result<Self, SteenrodError> {
        if eps.len() != s.len() + 1 || s.contains(&0) {
            return Err(SteenrodError::Malformed(format!("eps {eps:?}, powers {s:?}")));
        }
        let mut word = Vec::new();
        for (i, &e) in eps.iter().enumerate() {
            if e {
                word.push(Tok::Beta);
            }
            if let Some(&x) = s.get(i) {
                word.push(Tok::P(x));
            }
        }
        Self::from_word(word, p)
    }

    pub fn from_word(word: Vec<Tok>, p: u32) -> Result<Self, SteenrodError> {
        if word.contains(&Tok::P(0)) || first_inadmissible(&word, p, false).is_some() {
            return Err(SteenrodError::NotAdmissible(format!("{word:?}")));
        }
        Ok(AdmissibleMonomial { word })
    }

    pub fn word(&self) -> &[Tok] {
        &self.word
    }

    pub fn is_one(&self) -> bool {
        self.word.is_empty()
    }

    pub fn degree(&self, p: u32) -> u32 {
        self.word.iter().map(|t| t.degree(p)).sum()
    }

    /// Admissibility re-checked against the prime.
    pub fn is_admissible(&self, p: u32) -> bool {
        !self.word.contains(&Tok::P(0)) && first_inadmissible(&self.word, p, false).is_none()
    }
}

impl fmt::Display for AdmissibleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for t in &self.word {
            match t {
                Tok::Beta => write!(f, "β")?,
                Tok::P(s) => write!(f, "P{}", superscript(*s))?,
            }
        }
        Ok(())
    }
}

/// Parses space-separated ASCII words such as `"b P1 b"` or `"P2 P1"`.
pub fn parse_word(s: &str) -> Result<Vec<Tok>, SteenrodError> {
    s.split_whitespace()
        .map(|t| match t {
            "b" | "β" => Ok(Tok::Beta),
            _ => t
                .strip_prefix('P')
                .and_then(|n| n.parse().ok())
                .map(Tok::P)
                .ok_or_else(|| SteenrodError::Malformed(t.to_string())),
        })
        .collect()
}

/// F_p-combination of admissible monomials of one degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SteenrodElement {
    pub terms: BTreeMap<AdmissibleMonomial, u32>,
}

impl SteenrodElement {
    pub fn zero() -> Self {
        SteenrodElement::default()
    }

    pub fn monomial(m: AdmissibleMonomial) -> Self {
        SteenrodElement {
            terms: BTreeMap::from([(m, 1)]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &AdmissibleMonomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn add_scaled(&mut self, other: &SteenrodElement, c: u32, p: u32) {
        for (m, &x) in &other.terms {
            let e = self.terms.entry(m.clone()).or_insert(0);
            *e = (*e + c * x) % p;
            if *e == 0 {
                self.terms.remove(m);
            }
        }
    }
}

impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| if *c == 1 { m.to_string() } else { format!("{c}{m}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Binomial coefficient mod p by Lucas; zero for negative top.
pub fn binom_mod(n: i64, k: i64, p: u32) -> u32 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let (mut n, mut k, p64) = (n as u64, k as u64, u64::from(p));
    let mut out = 1u64;
    while n > 0 || k > 0 {
        let (a, b) = (n % p64, k % p64);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..b {
            c = c * (a - i) / (i + 1);
        }
        out = out * (c % p64) % p64;
        n /= p64;
        k /= p64;
    }
    out as u32
}

/// Which inadmissible spot is rewritten first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionOrder {
    LeftFirst,
    RightFirst,
}

/// The algebra at a fixed odd prime; reductions are memoized.
#[derive(Debug)]
pub struct SteenrodAlgebra {
    p: u32,
    cache: Mutex<HashMap<(Vec<Tok>, ReductionOrder), SteenrodElement>>,
}

impl Clone for SteenrodAlgebra {
    fn clone(&self) -> Self {
        SteenrodAlgebra::new(self.p).expect("prime already validated")
    }
}

impl SteenrodAlgebra {
    pub fn new(p: u32) -> Result<Self, SteenrodError> {
        if p < 3 || !crate::exact::fp::is_prime(p) {
            return Err(SteenrodError::BadPrime(p));
        }
        Ok(SteenrodAlgebra {
            p,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn monomial(&self, s: &str) -> Result<AdmissibleMonomial, SteenrodError> {
        AdmissibleMonomial::from_word(parse_word(s)?, self.p)
    }

    /// Admissible monomials of degree `d`, in a fixed order.
    pub fn basis(&self, d: u32) -> Vec<AdmissibleMonomial> {
        let p = self.p;
        let mut out = Vec::new();
        // words are built right to left; `next` is the power just to the right (0 = none yet)
        fn go(p: u32, rem: u32, next: u32, suffix: Vec<Tok>, out: &mut Vec<Vec<Tok>>) {
            if rem == 0 {
                out.push(suffix.clone());
            }
            // a leading β closes the word
            if rem == 1 {
                let mut w = vec![Tok::Beta];
                w.extend(suffix.iter().copied());
                out.push(w);
            }
            // next letter to the left is P^s, possibly followed by β
            let step = 2 * (p - 1);
            for with_beta in [false, true] {
                let eps = u32::from(with_beta);
                let min = if next == 0 { 1 } else { p * next + eps };
                let mut s = min;
                while s * step + eps <= rem {
                    let mut w = vec![Tok::P(s)];
                    if with_beta {
                        w.push(Tok::Beta);
                    }
                    w.extend(suffix.iter().copied());
                    go(p, rem - s * step - eps, s, w, out);
                    s += 1;
                }
            }
        }
        let mut words = Vec::new();
        go(p, d, 0, Vec::new(), &mut words);
        for w in words {
            if w.iter().map(|t| t.degree(p)).sum::<u32>() == d {
                out.push(AdmissibleMonomial { word: w });
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Admissible normal form of a word.
    pub fn adem_reduce(&self, word: &[Tok]) -> SteenrodElement {
        self.reduce_with(word, ReductionOrder::LeftFirst)
    }

    pub fn reduce_with(&self, word: &[Tok], strategy: ReductionOrder) -> SteenrodElement {
        let word: Vec<Tok> = word.iter().copied().filter(|t| *t != Tok::P(0)).collect();
        let key = (word.clone(), strategy);
        if let Some(hit) = self.cache.lock().expect("cache").get(&key) {
            return hit.clone();
        }
        let out = self.reduce_uncached(&word, strategy);
        self.cache.lock().expect("cache").insert(key, out.clone());
        out
    }

    fn reduce_uncached(&self, word: &[Tok], strategy: ReductionOrder) -> SteenrodElement {
        let p = self.p;
        let Some((i, len)) = first_inadmissible(word, p, strategy == ReductionOrder::RightFirst) else {
            return SteenrodElement::monomial(AdmissibleMonomial { word: word.to_vec() });
        };
        let mut out = SteenrodElement::zero();
        for (c, middle) in self.relation(&word[i..i + len]) {
            let mut w = word[..i].to_vec();
            w.extend(middle);
            w.extend_from_slice(&word[i + len..]);
            let r = self.reduce_with(&w, strategy);
            out.add_scaled(&r, c, p);
        }
        out
    }

    /// Right-hand side of the Adem relation for an inadmissible pair or triple.
    fn relation(&self, spot: &[Tok]) -> Vec<(u32, Vec<Tok>)> {
        let p = self.p;
        let pi = i64::from(p);
        let sign = |e: i64| if e % 2 == 0 { 1 } else { p - 1 };
        let mut out = Vec::new();
        match *spot {
            [Tok::Beta, Tok::Beta] => {}
            [Tok::P(a), Tok::P(b)] => {
                let (a, b) = (i64::from(a), i64::from(b));
                for t in 0..=a / pi {
                    let c = binom_mod((pi - 1) * (b - t) - 1, a - pi * t, p);
                    let c = c * sign(a + t) % p;
                    if c != 0 {
                        out.push((c, vec![Tok::P((a + b - t) as u32), Tok::P(t as u32)]));
                    }
                }
            }
            [Tok::P(a), Tok::Beta, Tok::P(b)] => {
                let (a, b) = (i64::from(a), i64::from(b));
                for t in 0..=a / pi {
                    let c = binom_mod((pi - 1) * (b - t), a - pi * t, p) * sign(a + t) % p;
                    if c != 0 {
                        out.push((c, vec![Tok::Beta, Tok::P((a + b - t) as u32), Tok::P(t as u32)]));
                    }
                    let c = binom_mod((pi - 1) * (b - t) - 1, a - pi * t - 1, p) * sign(a + t + 1) % p;
                    if c != 0 {
                        out.push((c, vec![Tok::P((a + b - t) as u32), Tok::Beta, Tok::P(t as u32)]));
                    }
                }
            }
            _ => unreachable!("relation called on an admissible spot"),
        }
        out
    }

    /// Product of two elements.
    pub fn multiply(&self, a: &SteenrodElement, b: &SteenrodElement) -> SteenrodElement {
        let mut out = SteenrodElement::zero();
        for (x, &c) in &a.terms {
            for (y, &d) in &b.terms {
                let mut w = x.word.clone();
                w.extend_from_slice(&y.word);
                out.add_scaled(&self.adem_reduce(&w), c * d % self.p, self.p);
            }
        }
        out
    }

    pub fn multiply_monomials(&self, a: &AdmissibleMonomial, b: &AdmissibleMonomial) -> SteenrodElement {
        let mut w = a.word.clone();
        w.extend_from_slice(&b.word);
        self.adem_reduce(&w)
    }
}

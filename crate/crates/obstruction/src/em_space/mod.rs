//! Curated cohomology of K = K(Z⊕Z, 2p−1) and K_p = K(Z/p⊕Z/p, 2p−1) through degree 4p−1,
//! with machine checks: degree bookkeeping, Steenrod closure, the Bockstein counting rule
//! and the universal-coefficient dual in homology.

pub mod class;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::exact::AbGroup;
use crate::group_rings::Coefficients;

pub use class::{apply_operation, normalize, Class, ClassParseError, Combo, Operation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Space {
    /// K(Z⊕Z, 2p−1).
    K,
    /// K(Z/p⊕Z/p, 2p−1).
    Kp,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmError {
    #[error("degree {degree} is above the tabled range {top}")]
    OutOfRange { degree: u32, top: u32 },
    #[error("degree {degree} is in range but the group is not determined by the tabled facts")]
    NotDetermined { degree: u32 },
    #[error("prime-to-p torsion in degree {degree} is unknown; only p-local groups are stored")]
    PrimeToPUnknown { degree: u32 },
    #[error("no table for {space:?} with {coeffs:?} coefficients")]
    NotTabulated { space: Space, coeffs: Coefficients },
    #[error("{0} is not an odd prime")]
    BadPrime(u32),
    #[error("tables are inconsistent in degree {degree}: {detail}")]
    InconsistentTables { degree: u32, detail: String },
    #[error("generator {class} sits in degree {found}, table says {listed}")]
    DegreeMismatch { class: String, listed: u32, found: u32 },
    #[error("{op:?} of {class} leaves the table span")]
    NotClosed { class: String, op: Operation },
    #[error("malformed table line {line}: {text}")]
    Parse { line: usize, text: String },
}

/// One degree: the group with a generator per cyclic summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmEntry {
    pub group: AbGroup,
    pub basis: Vec<Class>,
}

impl EmEntry {
    fn new(basis: Vec<Class>, orders: &[u64]) -> Self {
        let group = AbGroup::new(basis.iter().map(|c| c.to_string()).zip(orders.iter().copied()));
        EmEntry { group, basis }
    }

    fn zero() -> Self {
        EmEntry {
            group: AbGroup::trivial(),
            basis: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EMTable {
    pub space: Space,
    pub p: u32,
    pub coeffs: Coefficients,
    /// Highest degree with a known group; degrees up to 4p−1 above it are undetermined.
    pub top: u32,
    pub entries: BTreeMap<u32, EmEntry>,
}

impl EMTable {
    pub fn range_top(p: u32) -> u32 {
        4 * p - 1
    }

    pub fn entry(&self, degree: u32) -> Result<&EmEntry, EmError> {
        let range = Self::range_top(self.p);
        if degree > range {
            return Err(EmError::OutOfRange { degree, top: range });
        }
        self.entries
            .get(&degree)
            .ok_or(EmError::NotDetermined { degree })
    }

    /// The stored group; p-local for integral coefficients.
    pub fn group(&self, degree: u32) -> Result<&AbGroup, EmError> {
        self.entry(degree).map(|e| &e.group)
    }

    /// The full integral group, which would need the prime-to-p torsion the tables omit.
    pub fn full_group(&self, degree: u32) -> Result<&AbGroup, EmError> {
        let g = self.group(degree)?;
        match self.coeffs {
            Coefficients::ModP => Ok(g),
            // degree 0 and the bottom class are free, so nothing is lost there
            Coefficients::Integral if degree < 2 * self.p => Ok(g),
            Coefficients::Integral => Err(EmError::PrimeToPUnknown { degree }),
        }
    }

    pub fn dim(&self, degree: u32) -> Result<usize, EmError> {
        Ok(self.group(degree)?.tensor_rank(u64::from(self.p)))
    }

    /// Every named generator lives in the degree its construction predicts.
    pub fn check_degrees(&self) -> Result<(), EmError> {
        for (&deg, e) in &self.entries {
            for c in &e.basis {
                let found = c.degree(self.p);
                if found != deg {
                    return Err(EmError::DegreeMismatch {
                        class: c.to_string(),
                        listed: deg,
                        found,
                    });
                }
            }
        }
        Ok(())
    }

    /// β and P¹ of every generator land in the tabled span whenever the target degree is known.
    pub fn check_steenrod_closure(&self) -> Result<(), EmError> {
        if self.coeffs != Coefficients::ModP {
            return Ok(());
        }
        for e in self.entries.values() {
            for c in &e.basis {
                for op in [Operation::Bockstein, Operation::P1] {
                    let Some(image) = apply_operation(op, c, self.p) else {
                        continue;
                    };
                    let Some((_, first)) = image.first() else {
                        continue;
                    };
                    let target = first.degree(self.p);
                    let Some(te) = self.entries.get(&target) else {
                        continue;
                    };
                    if !image.iter().all(|(_, t)| te.basis.contains(t)) {
                        return Err(EmError::NotClosed {
                            class: c.to_string(),
                            op,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Plain-text form in the style of the ring tables.
    pub fn to_text(&self) -> String {
        let coeffs = match self.coeffs {
            Coefficients::Integral => "Z",
            Coefficients::ModP => "Fp",
        };
        let mut s = format!(
            "# emtable space={:?} p={} coefficients={} top={}\n",
            self.space, self.p, coeffs, self.top
        );
        for (d, e) in &self.entries {
            let items: Vec<String> = e
                .basis
                .iter()
                .zip(e.group.orders())
                .map(|(c, o)| format!("{c}:{o}"))
                .collect();
            s.push_str(&format!("{d} | {}\n", items.join(", ")));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<EMTable, EmError> {
        let bad = |line: usize, t: &str| EmError::Parse {
            line,
            text: t.to_string(),
        };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| bad(1, ""))?;
        let mut fields = BTreeMap::new();
        for kv in header.trim_start_matches("# emtable").split_whitespace() {
            let (k, v) = kv.split_once('=').ok_or_else(|| bad(1, header))?;
            fields.insert(k, v);
        }
        let space = match fields.get("space") {
            Some(&"K") => Space::K,
            Some(&"Kp") => Space::Kp,
            _ => return Err(bad(1, header)),
        };
        let coeffs = match fields.get("coefficients") {
            Some(&"Z") => Coefficients::Integral,
            Some(&"Fp") => Coefficients::ModP,
            _ => return Err(bad(1, header)),
        };
        let num = |k: &str| -> Result<u32, EmError> {
            fields
                .get(k)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad(1, header))
        };
        let (p, top) = (num("p")?, num("top")?);
        let mut entries = BTreeMap::new();
        for (i, l) in lines {
            let (d, rest) = l.split_once('|').ok_or_else(|| bad(i + 1, l))?;
            let d: u32 = d.trim().parse().map_err(|_| bad(i + 1, l))?;
            let mut basis = Vec::new();
            let mut orders = Vec::new();
            for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (c, o) = item.rsplit_once(':').ok_or_else(|| bad(i + 1, l))?;
                basis.push(c.parse::<Class>().map_err(|_| bad(i + 1, l))?);
                orders.push(o.parse::<u64>().map_err(|_| bad(i + 1, l))?);
            }
            entries.insert(d, EmEntry::new(basis, &orders));
        }
        Ok(EMTable {
            space,
            p,
            coeffs,
            top,
            entries,
        })
    }
}

impl fmt::Display for EMTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, e) in &self.entries {
            let names: Vec<String> = e.basis.iter().map(Class::pretty).collect();
            writeln!(f, "H^{d} = {}  ⟨{}⟩", e.group, names.join(", "))?;
        }
        Ok(())
    }
}

/// The tabulated (space, coefficients) pairs.
pub const TABULATED: [(Space, Coefficients); 3] = [
    (Space::K, Coefficients::ModP),
    (Space::K, Coefficients::Integral),
    (Space::Kp, Coefficients::ModP),
];

pub fn table_path(dir: &Path, space: Space, p: u32, coeffs: Coefficients) -> PathBuf {
    let s = match space {
        Space::K => "k",
        Space::Kp => "kp",
    };
    let c = match coeffs {
        Coefficients::Integral => "z",
        Coefficients::ModP => "fp",
    };
    dir.join(format!("em_{s}_p{p}_{c}.table"))
}

fn is_odd_prime(p: u32) -> bool {
    p > 2 && crate::exact::fp::is_prime(p)
}

fn both(f: impl Fn(u8) -> Class) -> Vec<Class> {
    vec![f(1), f(2)]
}

/// The curated table. Degrees without a listed generator are zero (p-locally for Z).
pub fn k_table(space: Space, p: u32, coeffs: Coefficients) -> Result<EMTable, EmError> {
    if !is_odd_prime(p) {
        return Err(EmError::BadPrime(p));
    }
    let n = 2 * p - 1;
    let pp = u64::from(p);
    let i = Class::Iota;
    let zb = Class::ZBar;
    let mut listed: BTreeMap<u32, EmEntry> = BTreeMap::new();
    let top = match (space, coeffs) {
        (Space::Kp, Coefficients::ModP) => {
            listed.insert(n, EmEntry::new(both(i), &[pp, pp]));
            listed.insert(n + 1, EmEntry::new(both(|j| Class::beta(i(j))), &[pp, pp]));
            listed.insert(4 * p - 3, EmEntry::new(both(|j| Class::p1(i(j))), &[pp, pp]));
            let bp = |j| Class::beta(Class::p1(i(j)));
            let pb = |j| Class::p1(Class::beta(i(j)));
            listed.insert(
                4 * p - 2,
                EmEntry::new(vec![Class::cup(i(1), i(2)), bp(1), pb(1), bp(2), pb(2)], &[pp; 5]),
            );
            let bpb = |j| Class::beta(Class::p1(Class::beta(i(j))));
            let ib = |a, b| Class::cup(i(a), Class::beta(i(b)));
            listed.insert(
                4 * p - 1,
                EmEntry::new(vec![ib(1, 2), ib(2, 1), bpb(1), ib(1, 1), bpb(2), ib(2, 2)], &[pp; 6]),
            );
            4 * p - 1
        }
        (Space::K, Coefficients::ModP) => {
            listed.insert(n, EmEntry::new(both(zb), &[pp, pp]));
            listed.insert(4 * p - 3, EmEntry::new(both(|j| Class::p1(zb(j))), &[pp, pp]));
            let bp = |j| Class::beta(Class::p1(zb(j)));
            listed.insert(
                4 * p - 2,
                EmEntry::new(vec![Class::cup(zb(1), zb(2)), bp(1), bp(2)], &[pp; 3]),
            );
            4 * p - 2
        }
        (Space::K, Coefficients::Integral) => {
            listed.insert(n, EmEntry::new(both(Class::Z), &[0, 0]));
            let dp = |j| Class::delta(Class::p1(zb(j)));
            listed.insert(
                4 * p - 2,
                EmEntry::new(vec![Class::cup(Class::Z(1), Class::Z(2)), dp(1), dp(2)], &[0, pp, pp]),
            );
            // degree 4p−1: no p-torsion, and rationally zero
            4 * p - 1
        }
        (Space::Kp, Coefficients::Integral) => {
            return Err(EmError::NotTabulated { space, coeffs })
        }
    };
    let mut entries = BTreeMap::new();
    for d in 0..=top {
        let e = if d == 0 {
            let o = if coeffs == Coefficients::ModP { pp } else { 0 };
            EmEntry::new(vec![Class::Unit], &[o])
        } else {
            listed.remove(&d).unwrap_or_else(EmEntry::zero)
        };
        entries.insert(d, e);
    }
    Ok(EMTable {
        space,
        p,
        coeffs,
        top,
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BocksteinRow {
    pub degree: u32,
    pub mod_p_dim: usize,
    pub tensor_rank: usize,
    pub next_p_torsion: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BocksteinReport {
    pub p: u32,
    pub rows: Vec<BocksteinRow>,
    /// Degrees whose integral p-torsion is forced to vanish because the mod-p classes
    /// just below are all reductions of integral classes.
    pub forced_torsion_free: Vec<u32>,
}

/// dim H^i(F_p) = dim(H^i(Z) ⊗ F_p) + dim Tor(H^{i+1}(Z), F_p), degree by degree.
pub fn bockstein_consistency(fp: &EMTable, z: &EMTable) -> Result<BocksteinReport, EmError> {
    if fp.p != z.p || fp.space != z.space || fp.coeffs != Coefficients::ModP || z.coeffs != Coefficients::Integral {
        return Err(EmError::InconsistentTables {
            degree: 0,
            detail: "tables are not a mod-p/integral pair for one space and prime".into(),
        });
    }
    let p = fp.p;
    let pp = u64::from(p);
    let mut rows = Vec::new();
    let mut forced = Vec::new();
    for d in 0..=fp.top {
        let mod_p_dim = fp.dim(d)?;
        let tensor_rank = z.group(d)?.tensor_rank(pp);
        let next = z.group(d + 1)?;
        let next_p_torsion = next.p_torsion_rank(pp);
        if mod_p_dim != tensor_rank + next_p_torsion {
            return Err(EmError::InconsistentTables {
                degree: d,
                detail: format!("{mod_p_dim} ≠ {tensor_rank} + {next_p_torsion}"),
            });
        }
        // reduction onto H^d(F_p) is onto, so δ into H^{d+1}(Z) is zero
        if d == fp.top && tensor_rank == mod_p_dim && next.is_finite() {
            forced.push(d + 1);
        }
        rows.push(BocksteinRow {
            degree: d,
            mod_p_dim,
            tensor_rank,
            next_p_torsion,
        });
    }
    Ok(BocksteinReport {
        p,
        rows,
        forced_torsion_free: forced,
    })
}

/// Homology from cohomology by universal coefficients: H_i = Free(H^i) ⊕ Tors(H^{i+1}) for Z,
/// and dual vector spaces for F_p. Generators are named `h(x)` after the class they pair with.
pub fn homology_dual(table: &EMTable) -> Result<BTreeMap<u32, AbGroup>, EmError> {
    let mut out = BTreeMap::new();
    let h = |c: &str| format!("h({c})");
    match table.coeffs {
        Coefficients::ModP => {
            for (d, e) in &table.entries {
                out.insert(*d, AbGroup::new(e.group.summands().map(|(g, _)| (h(g), u64::from(table.p)))));
            }
        }
        Coefficients::Integral => {
            for (d, e) in &table.entries {
                let Some(next) = table.entries.get(&(d + 1)) else {
                    continue;
                };
                let mut s: Vec<(String, u64)> = Vec::new();
                for (g, o) in e.group.summands() {
                    if o == &num_bigint::BigUint::from(0u32) {
                        s.push((h(g), 0));
                    }
                }
                for (g, o) in next.group.summands() {
                    if let Some(o) = num_traits::ToPrimitive::to_u64(o).filter(|o| *o != 0) {
                        s.push((h(g), o));
                    }
                }
                out.insert(*d, AbGroup::new(s));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integral_kp_is_not_tabulated() {
        assert!(matches!(
            k_table(Space::Kp, 3, Coefficients::Integral),
            Err(EmError::NotTabulated { .. })
        ));
        assert_eq!(k_table(Space::K, 4, Coefficients::ModP), Err(EmError::BadPrime(4)));
    }

    #[test]
    fn text_round_trip() {
        for (s, c) in [
            (Space::Kp, Coefficients::ModP),
            (Space::K, Coefficients::ModP),
            (Space::K, Coefficients::Integral),
        ] {
            let t = k_table(s, 5, c).unwrap();
            assert_eq!(EMTable::from_text(&t.to_text()).unwrap(), t);
        }
    }
}

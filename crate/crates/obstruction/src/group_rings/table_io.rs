//! Plain-text ring tables, one entry per line: `deg | monomial * monomial -> element`.
//!
//! A file opens with a `# ring` header and `basis` lines (monomial:order, 0 for infinite),
//! then `alias` definitions and the product entries.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::builders::build_ring;
use super::monomial::Monomial;
use super::ring::{format_terms, parse_terms, Coefficients, RingId, RingKind, Terms, TruncatedRing};

pub const DATA_DIR_ENV: &str = "OBSTRUCTION_DATA_DIR";

#[derive(Debug, Error)]
pub enum TableError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `# ring` header")]
    MissingHeader,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn kind_name(k: RingKind) -> &'static str {
    match k {
        RingKind::BS1 => "BS1",
        RingKind::BHt => "BHt",
        RingKind::BGt => "BGt",
        RingKind::BDt => "BDt",
    }
}

pub fn write_table(ring: &TruncatedRing) -> String {
    let id = ring.id();
    let mut out = String::new();
    let coeffs = match id.coeffs {
        Coefficients::Integral => "Z",
        Coefficients::ModP => "Fp",
    };
    out.push_str(&format!(
        "# ring kind={} p={} coefficients={coeffs} cap={}\n",
        kind_name(id.kind),
        id.p,
        ring.cap()
    ));
    for (d, b) in &ring.basis {
        let items: Vec<String> = b.iter().map(|(m, o)| format!("{m}:{o}")).collect();
        out.push_str(&format!("basis {d} | {}\n", items.join(", ")));
    }
    let order = |m: &Monomial| ring.order(m).unwrap_or(0);
    for (name, t) in &ring.aliases {
        out.push_str(&format!("alias {name} = {}\n", format_terms(t, order)));
    }
    let p = id.p;
    let mut lines: Vec<(u32, String)> = ring
        .products
        .iter()
        .map(|((a, b), t)| {
            let d = a.degree(p) + b.degree(p);
            (d, format!("{d} | {a} * {b} -> {}", format_terms(t, order)))
        })
        .collect();
    for (name, m, t) in &ring.alias_products {
        let d = ring.aliases.iter().find(|(n, _)| n == name).and_then(|(_, t)| t.keys().next()).map_or(0, |a| a.degree(p)) + m.degree(p);
        lines.push((d, format!("{d} | {name} * {m} -> {}", format_terms(t, order))));
    }
    // stable sort keeps the monomial order inside a degree
    lines.sort_by_key(|(d, _)| *d);
    for (_, l) in lines {
        out.push_str(&l);
        out.push('\n');
    }
    out
}

pub fn read_table(text: &str) -> Result<TruncatedRing, TableError> {
    let mut header: Option<(RingId, u32)> = None;
    let mut basis: BTreeMap<u32, Vec<(Monomial, u64)>> = BTreeMap::new();
    let mut aliases: Vec<(String, Terms)> = Vec::new();
    let mut raw_products: Vec<(usize, String, String, String)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let err = |msg: &str| TableError::Syntax {
            line: ln,
            msg: msg.to_string(),
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("# ring") {
            let mut kv = BTreeMap::new();
            for tok in rest.split_whitespace() {
                let (k, v) = tok.split_once('=').ok_or_else(|| err("bad header field"))?;
                kv.insert(k, v);
            }
            let kind = match kv.get("kind").copied() {
                Some("BS1") => RingKind::BS1,
                Some("BHt") => RingKind::BHt,
                Some("BGt") => RingKind::BGt,
                Some("BDt") => RingKind::BDt,
                _ => return Err(err("unknown ring kind")),
            };
            let p = kv.get("p").and_then(|v| v.parse().ok()).ok_or_else(|| err("bad prime"))?;
            let coeffs = match kv.get("coefficients").copied() {
                Some("Z") => Coefficients::Integral,
                Some("Fp") => Coefficients::ModP,
                _ => return Err(err("bad coefficients")),
            };
            let cap = kv.get("cap").and_then(|v| v.parse().ok()).ok_or_else(|| err("bad cap"))?;
            header = Some((RingId::new(kind, p, coeffs), cap));
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("basis ") {
            let (d, items) = rest.split_once('|').ok_or_else(|| err("basis line needs `|`"))?;
            let d: u32 = d.trim().parse().map_err(|_| err("bad degree"))?;
            let mut v = Vec::new();
            for item in items.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (m, o) = item.rsplit_once(':').ok_or_else(|| err("basis item needs `:order`"))?;
                let m: Monomial = m.parse().map_err(|e| err(&format!("{e}")))?;
                let o: u64 = o.parse().map_err(|_| err("bad order"))?;
                v.push((m, o));
            }
            basis.insert(d, v);
            continue;
        }
        if let Some(rest) = line.strip_prefix("alias ") {
            let (name, value) = rest.split_once('=').ok_or_else(|| err("alias needs `=`"))?;
            let t = parse_terms(value).map_err(|e| err(&format!("{e}")))?;
            aliases.push((name.trim().to_string(), t));
            continue;
        }
        let (_, body) = line.split_once('|').ok_or_else(|| err("entry needs `|`"))?;
        let (lhs, rhs) = body.split_once("->").ok_or_else(|| err("entry needs `->`"))?;
        let (a, b) = lhs.split_once(" * ").ok_or_else(|| err("entry needs ` * `"))?;
        raw_products.push((ln, a.trim().into(), b.trim().into(), rhs.trim().into()));
    }
    let (id, cap) = header.ok_or(TableError::MissingHeader)?;
    let mut ring = TruncatedRing {
        id,
        cap,
        basis,
        products: BTreeMap::new(),
        aliases: Vec::new(),
        alias_products: Vec::new(),
    };
    ring.aliases = aliases
        .into_iter()
        .map(|(n, t)| (n, ring.from_terms(t).terms().clone()))
        .collect();
    for (ln, a, b, rhs) in raw_products {
        let err = |msg: String| TableError::Syntax { line: ln, msg };
        let t = parse_terms(&rhs).map_err(|e| err(e.to_string()))?;
        let t = ring.from_terms(t).terms().clone();
        let bm: Monomial = b.parse().map_err(|e| err(format!("{e}")))?;
        if ring.aliases.iter().any(|(n, _)| *n == a) {
            ring.alias_products.push((a, bm, t));
        } else {
            let am: Monomial = a.parse().map_err(|e| err(format!("{e}")))?;
            ring.products.insert((am, bm), t);
        }
    }
    Ok(ring)
}

/// Data directory from the environment, if set.
pub fn data_dir() -> Option<PathBuf> {
    std::env::var_os(DATA_DIR_ENV).map(PathBuf::from)
}

pub fn table_path(dir: &Path, id: RingId) -> PathBuf {
    dir.join(format!("{}.table", id.file_stem()))
}

/// Loads a ring from `dir` when its file exists there, otherwise builds it.
pub fn load_ring(dir: Option<&Path>, kind: RingKind, p: u32, coeffs: Coefficients) -> Result<TruncatedRing, TableError> {
    let id = RingId::new(kind, p, coeffs);
    if let Some(dir) = dir {
        let path = table_path(dir, id);
        if path.exists() {
            return read_table(&std::fs::read_to_string(path)?);
        }
    }
    Ok(build_ring(kind, p, coeffs))
}

/// Writes every ring table for the given primes; returns the written paths.
pub fn write_data_dir(dir: &Path, primes: &[u32]) -> Result<Vec<PathBuf>, TableError> {
    std::fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    for &p in primes {
        for kind in [RingKind::BS1, RingKind::BHt, RingKind::BGt, RingKind::BDt] {
            for coeffs in [Coefficients::Integral, Coefficients::ModP] {
                let ring = build_ring(kind, p, coeffs);
                let path = table_path(dir, ring.id());
                std::fs::write(&path, write_table(&ring))?;
                out.push(path);
            }
        }
    }
    Ok(out)
}

//! Minimal free resolutions, Ext charts, chain-map lifting and the Adams
//! differential emptiness check.

use std::collections::BTreeMap;

use serde::Serialize;

use super::algebra::{AdmissibleMonomial, SteenrodAlgebra};
use super::module::{ModuleMap, ModuleWithAction};
use super::SteenrodError;
use crate::exact::{FpMatrix, Subspace};

/// Element of a free module: coefficients on (generator index, admissible monomial).
pub type FreeElement = BTreeMap<(usize, AdmissibleMonomial), u32>;

fn add_into(acc: &mut FreeElement, x: &FreeElement, c: u32, p: u32) {
    for (k, &v) in x {
        let e = acc.entry(k.clone()).or_insert(0);
        *e = (*e + c * v) % p;
        if *e == 0 {
            acc.remove(k);
        }
    }
}

/// Options that change pivot choices but not the resulting chart.
#[derive(Debug, Clone, Copy, Default)]
pub struct ResolveOptions {
    pub reverse_pivots: bool,
}

/// A minimal resolution computed through internal degree `max_degree` and filtration
/// `max_filtration`.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub p: u32,
    pub module: String,
    pub max_degree: u32,
    pub max_filtration: usize,
    /// Generator degrees per filtration, nondecreasing.
    pub gens: Vec<Vec<u32>>,
    /// Boundary of each generator: for filtration 0 a vector in the module,
    /// for higher filtrations an element of the previous free module.
    pub augmentation: Vec<Vec<u32>>,
    pub boundaries: Vec<Vec<FreeElement>>,
    // ranks of ∂_n restricted to each internal degree
    ranks: Vec<BTreeMap<u32, usize>>,
    dims: Vec<BTreeMap<u32, usize>>,
}

/// Basis of a free module in one degree, as (generator, monomial) pairs.
pub fn free_basis(alg: &SteenrodAlgebra, gens: &[u32], t: u32) -> Vec<(usize, AdmissibleMonomial)> {
    let mut out = Vec::new();
    for (i, &d) in gens.iter().enumerate() {
        if d <= t {
            for m in alg.basis(t - d) {
                out.push((i, m));
            }
        }
    }
    out
}

fn coords(basis: &[(usize, AdmissibleMonomial)], x: &FreeElement) -> Vec<u32> {
    let mut v = vec![0u32; basis.len()];
    for (k, &c) in x {
        if let Some(i) = basis.iter().position(|b| b == k) {
            v[i] = c;
        }
    }
    v
}

fn from_coords(basis: &[(usize, AdmissibleMonomial)], v: &[u32]) -> FreeElement {
    basis
        .iter()
        .zip(v)
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| (k.clone(), c))
        .collect()
}

/// a · x for a monomial a and a free-module element x.
pub fn act_free(alg: &SteenrodAlgebra, a: &AdmissibleMonomial, x: &FreeElement) -> FreeElement {
    let p = alg.prime();
    let mut out = FreeElement::new();
    for ((g, m), &c) in x {
        for (prod, &d) in &alg.multiply_monomials(a, m).terms {
            let e = out.entry((*g, prod.clone())).or_insert(0);
            *e = (*e + c * d) % p;
            if *e == 0 {
                out.remove(&(*g, prod.clone()));
            }
        }
    }
    out
}

fn columns_to_matrix(p: u32, rows: usize, cols: &[Vec<u32>]) -> FpMatrix {
    let trip = cols
        .iter()
        .enumerate()
        .flat_map(|(j, col)| col.iter().enumerate().filter(|(_, &x)| x != 0).map(move |(i, &x)| (i, j, i64::from(x))));
    FpMatrix::from_triplets(p, rows, cols.len(), trip).expect("valid prime")
}

impl Resolution {
    /// Value of ∂_n (or of the augmentation when n = 0) on a basis element of F_n.
    fn boundary_basis(&self, alg: &SteenrodAlgebra, m: &ModuleWithAction, n: usize, g: usize, a: &AdmissibleMonomial) -> Result<BoundaryValue, SteenrodError> {
        if n == 0 {
            let d = self.gens[0][g];
            let v = m.act_word(a.word(), d, &self.augmentation[g]);
            Ok(BoundaryValue::Module(v))
        } else {
            Ok(BoundaryValue::Free(act_free(alg, a, &self.boundaries[n][g])))
        }
    }

    /// Matrix of ∂_n in internal degree t with columns over `free_basis(n, t)`, rows over
    /// the module (n = 0) or `free_basis(n−1, t)`.
    pub fn boundary_matrix(&self, alg: &SteenrodAlgebra, m: &ModuleWithAction, n: usize, t: u32) -> Result<FpMatrix, SteenrodError> {
        let src = free_basis(alg, &self.gens[n], t);
        let (rows, tgt) = if n == 0 {
            (m.dim(t), Vec::new())
        } else {
            let b = free_basis(alg, &self.gens[n - 1], t);
            (b.len(), b)
        };
        let mut cols = Vec::with_capacity(src.len());
        for (g, a) in &src {
            let col = match self.boundary_basis(alg, m, n, *g, a)? {
                BoundaryValue::Module(v) => if v.is_empty() { vec![0; rows] } else { v },
                BoundaryValue::Free(x) => coords(&tgt, &x),
            };
            cols.push(col);
        }
        Ok(columns_to_matrix(self.p, rows, &cols))
    }

    /// Number of generators at (filtration, internal degree).
    pub fn count(&self, n: usize, t: u32) -> usize {
        self.gens.get(n).map_or(0, |g| g.iter().filter(|&&d| d == t).count())
    }

    /// dim F_n in degree t and the rank of ∂_n there, as recorded during the run.
    pub fn rank_data(&self, n: usize, t: u32) -> Option<(usize, usize)> {
        Some((*self.dims.get(n)?.get(&t)?, *self.ranks.get(n)?.get(&t)?))
    }

    /// Exactness in range: rank ∂_n + rank ∂_{n+1} = dim F_n, and the augmentation onto.
    pub fn check_exactness(&self, m: &ModuleWithAction) -> Result<usize, SteenrodError> {
        let mut checked = 0;
        for t in 0..=self.max_degree {
            let (_, r0) = self.rank_data(0, t).expect("computed");
            if r0 != m.dim(t) {
                return Err(SteenrodError::NotExact { filtration: 0, degree: t });
            }
            for n in 0..self.max_filtration {
                let (dim, r) = self.rank_data(n, t).expect("computed");
                let (_, r_next) = self.rank_data(n + 1, t).expect("computed");
                if r + r_next != dim {
                    return Err(SteenrodError::NotExact { filtration: n, degree: t });
                }
                checked += 1;
            }
        }
        Ok(checked)
    }

    /// Minimality: no boundary has a unit coefficient on a generator.
    pub fn check_minimal(&self) -> bool {
        self.boundaries
            .iter()
            .skip(1)
            .all(|bs| bs.iter().all(|x| x.keys().all(|(_, a)| !a.is_one())))
    }

    /// Report name for a generator: ι, α, β for filtrations 0, 1, 2 and w beyond,
    /// subscripted by stem, with an index when the bidegree holds several.
    pub fn generator_name(&self, n: usize, g: usize) -> String {
        let t = self.gens[n][g];
        let stem = t as i64 - n as i64;
        let letter = match n {
            0 => "ι".to_string(),
            1 => "α".to_string(),
            2 => "β".to_string(),
            _ => format!("w{n}"),
        };
        let same: Vec<usize> = (0..self.gens[n].len()).filter(|&i| self.gens[n][i] == t).collect();
        if same.len() == 1 {
            format!("{letter}_{stem}")
        } else {
            let k = same.iter().position(|&i| i == g).unwrap_or(0);
            format!("{letter}_{stem},{k}")
        }
    }

    /// Readable boundary of a generator, e.g. `P¹(ι_0) + 2β(ι_3)`.
    pub fn describe_boundary(&self, m: &ModuleWithAction, n: usize, g: usize) -> String {
        if n == 0 {
            return m.describe(self.gens[0][g], &self.augmentation[g]);
        }
        let parts: Vec<String> = self.boundaries[n][g]
            .iter()
            .map(|((h, a), &c)| {
                let name = self.generator_name(n - 1, *h);
                let coeff = if c == 1 { String::new() } else { c.to_string() };
                if a.is_one() { format!("{coeff}{name}") } else { format!("{coeff}{a}({name})") }
            })
            .collect();
        if parts.is_empty() { "0".into() } else { parts.join(" + ") }
    }

    /// For x in F_n of internal degree t: `None` if x is not a cycle, otherwise whether it
    /// escapes the image of the generators of F_{n+1} below degree t, i.e. whether it
    /// accounts for a generator in degree t. Independent of the chosen boundaries.
    pub fn requires_new_generator(
        &self,
        alg: &SteenrodAlgebra,
        m: &ModuleWithAction,
        n: usize,
        t: u32,
        x: &FreeElement,
    ) -> Result<Option<bool>, SteenrodError> {
        let basis = free_basis(alg, &self.gens[n], t);
        let v = coords(&basis, x);
        let d = self.boundary_matrix(alg, m, n, t)?;
        if d.mul_vec(&v).iter().any(|&c| c != 0) {
            return Ok(None);
        }
        let next = self.boundary_matrix(alg, m, n + 1, t)?;
        let src = free_basis(alg, &self.gens[n + 1], t);
        let mut span = Subspace::new(self.p, basis.len());
        for (c, (g, _)) in src.iter().enumerate() {
            if self.gens[n + 1][*g] < t {
                let col: Vec<u32> = (0..next.rows()).map(|r| next.get(r, c)).collect();
                span.insert(&col);
            }
        }
        Ok(Some(!span.contains(&v)))
    }

    /// Monomial `a` applied to generator `g` of F_n, scaled by `c`.
    pub fn generator_term(&self, g: usize, a: AdmissibleMonomial, c: u32) -> FreeElement {
        FreeElement::from([((g, a), c % self.p)])
    }

    pub fn chart(&self) -> ExtChart {
        let mut entries = Vec::new();
        for (n, gens) in self.gens.iter().enumerate() {
            let mut per: BTreeMap<u32, usize> = BTreeMap::new();
            for &d in gens {
                *per.entry(d).or_insert(0) += 1;
            }
            for (t, dim) in per {
                entries.push(ChartEntry { filtration: n, internal_degree: t, dim });
            }
        }
        ExtChart {
            prime: self.p,
            module: self.module.clone(),
            max_degree: self.max_degree,
            entries,
        }
    }
}

enum BoundaryValue {
    Module(Vec<u32>),
    Free(FreeElement),
}

/// Minimal free resolution of `m` through internal degree `max_degree`.
pub fn minimal_resolution(
    alg: &SteenrodAlgebra,
    m: &ModuleWithAction,
    max_degree: u32,
    max_filtration: usize,
    opts: ResolveOptions,
) -> Result<Resolution, SteenrodError> {
    let p = alg.prime();
    if p != m.p {
        return Err(SteenrodError::BadPrime(m.p));
    }
    if let Some(v) = m.valid_through {
        if max_degree > v {
            return Err(SteenrodError::WindowExhausted { requested: max_degree, valid: v });
        }
    }
    let mut res = Resolution {
        p,
        module: m.name.clone(),
        max_degree,
        max_filtration,
        gens: vec![Vec::new(); max_filtration + 1],
        augmentation: Vec::new(),
        boundaries: vec![Vec::new(); max_filtration + 1],
        ranks: vec![BTreeMap::new(); max_filtration + 1],
        dims: vec![BTreeMap::new(); max_filtration + 1],
    };
    // kernel bases of ∂_{n−1} per degree, as coordinate vectors over free_basis(n−1, t)
    let mut kernels: Vec<BTreeMap<u32, Vec<Vec<u32>>>> = vec![BTreeMap::new(); max_filtration + 1];
    for n in 0..=max_filtration {
        for t in 0..=max_degree {
            let mat = res.boundary_matrix(alg, m, n, t)?;
            let rows = mat.rows();
            // targets to hit: the module in degree t, or the kernel of the previous boundary
            let targets: Vec<Vec<u32>> = if n == 0 {
                (0..rows)
                    .map(|i| {
                        let mut v = vec![0; rows];
                        v[i] = 1;
                        v
                    })
                    .collect()
            } else {
                kernels[n - 1].get(&t).cloned().unwrap_or_default()
            };
            let mut image = Subspace::new(p, rows);
            for c in 0..mat.cols() {
                let col: Vec<u32> = (0..rows).map(|r| mat.get(r, c)).collect();
                image.insert(&col);
            }
            let ordered: Vec<&Vec<u32>> = if opts.reverse_pivots {
                targets.iter().rev().collect()
            } else {
                targets.iter().collect()
            };
            for v in ordered {
                if image.insert(v) {
                    res.gens[n].push(t);
                    if n == 0 {
                        res.augmentation.push(v.clone());
                    } else {
                        let b = free_basis(alg, &res.gens[n - 1], t);
                        res.boundaries[n].push(from_coords(&b, v));
                    }
                }
            }
            // full matrix including new generators, for the rank and the next kernel
            let full = res.boundary_matrix(alg, m, n, t)?;
            let (rank, ker) = if opts.reverse_pivots {
                let cols = full.cols();
                let rev = FpMatrix::from_triplets(p, full.rows(), cols, full.triplets().map(|(r, c, x)| (r, cols - 1 - c, i64::from(x))))
                    .expect("valid prime");
                let (rank, ker) = rev.rank_kernel();
                (rank, ker.into_iter().map(|mut v| { v.reverse(); v }).collect())
            } else {
                full.rank_kernel()
            };
            res.ranks[n].insert(t, rank);
            res.dims[n].insert(t, full.cols());
            kernels[n].insert(t, ker);
        }
    }
    Ok(res)
}

/// One nonzero entry of an Ext chart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartEntry {
    pub filtration: usize,
    pub internal_degree: u32,
    pub dim: usize,
}

/// dim Ext^{n,t} read off generator counts, with the window it is valid in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtChart {
    pub prime: u32,
    pub module: String,
    pub max_degree: u32,
    pub entries: Vec<ChartEntry>,
}

impl ExtChart {
    pub fn dim(&self, n: usize, t: u32) -> usize {
        self.entries
            .iter()
            .find(|e| e.filtration == n && e.internal_degree == t)
            .map_or(0, |e| e.dim)
    }

    /// (filtration, stem, dim) triples with stem = t − n.
    pub fn by_stem(&self) -> Vec<(usize, i64, usize)> {
        self.entries
            .iter()
            .map(|e| (e.filtration, e.internal_degree as i64 - e.filtration as i64, e.dim))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("chart serializes")
    }
}

/// Lift of a module map to the resolutions, filtration by filtration. `maps[n][g]` is the
/// image of generator g of the source F_n.
#[derive(Debug, Clone)]
pub struct ChainMapSlice {
    pub maps: Vec<Vec<FreeElement>>,
    pub max_degree: u32,
}

impl ChainMapSlice {
    /// Matrix of the induced map on Ext^{n,t}: entry (h, g) is the unit coefficient of
    /// target generator h in the image of source generator g. Rows index target
    /// generators, columns source generators, both in degree t.
    pub fn induced_ext(&self, src: &Resolution, tgt: &Resolution, n: usize, t: u32) -> Vec<Vec<u32>> {
        let sg: Vec<usize> = (0..src.gens[n].len()).filter(|&g| src.gens[n][g] == t).collect();
        let tg: Vec<usize> = (0..tgt.gens[n].len()).filter(|&h| tgt.gens[n][h] == t).collect();
        tg.iter()
            .map(|&h| {
                sg.iter()
                    .map(|&g| self.maps[n][g].get(&(h, AdmissibleMonomial::one())).copied().unwrap_or(0))
                    .collect()
            })
            .collect()
    }

    pub fn is_nonzero_on_ext(&self, src: &Resolution, tgt: &Resolution, n: usize, t: u32) -> bool {
        self.induced_ext(src, tgt, n, t).iter().flatten().any(|&x| x != 0)
    }
}

/// Lifts `f: src_module → tgt_module` to a chain map between the resolutions.
pub fn lift_chain_map(
    alg: &SteenrodAlgebra,
    f: &ModuleMap,
    src: &Resolution,
    tgt_module: &ModuleWithAction,
    tgt: &Resolution,
) -> Result<ChainMapSlice, SteenrodError> {
    let p = alg.prime();
    let max_degree = src.max_degree.min(tgt.max_degree);
    let top = src.max_filtration.min(tgt.max_filtration);
    let mut maps: Vec<Vec<FreeElement>> = vec![Vec::new(); top + 1];
    for n in 0..=top {
        for (g, &d) in src.gens[n].iter().enumerate() {
            if d > max_degree {
                maps[n].push(FreeElement::new());
                continue;
            }
            let tb = free_basis(alg, &tgt.gens[n], d);
            let rows;
            let rhs: Vec<u32> = if n == 0 {
                rows = tgt_module.dim(d);
                f.apply(d, &src.augmentation[g], rows)
            } else {
                let pb = free_basis(alg, &tgt.gens[n - 1], d);
                rows = pb.len();
                let mut acc = FreeElement::new();
                for ((h, a), &c) in &src.boundaries[n][g] {
                    add_into(&mut acc, &act_free(alg, a, &maps[n - 1][*h]), c, p);
                }
                coords(&pb, &acc)
            };
            let mat = tgt.boundary_matrix(alg, tgt_module, n, d)?;
            let mut span = Subspace::new(p, rows);
            for c in 0..mat.cols() {
                let col: Vec<u32> = (0..rows).map(|r| mat.get(r, c)).collect();
                span.insert(&col);
            }
            let x = span.solve(&rhs).ok_or(SteenrodError::LiftObstructed { filtration: n, degree: d })?;
            maps[n].push(from_coords(&tb, &x));
        }
    }
    Ok(ChainMapSlice { maps, max_degree })
}

/// Which Adams differentials could touch a class: incoming ones come from one stem up
/// and at least two filtrations down, outgoing ones go one stem down and at least two up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermanentCycleVerdict {
    pub filtration: usize,
    pub stem: i64,
    pub class_present: bool,
    /// (filtration, internal degree) of possible sources.
    pub incoming: Vec<(usize, u32)>,
    /// (filtration, internal degree) of possible targets inside the window.
    pub outgoing: Vec<(usize, u32)>,
    /// Whether outgoing targets could sit above the computed window.
    pub outgoing_beyond_window: bool,
    pub verdict: String,
}

pub fn permanent_cycle_check(res: &Resolution, stem: i64, filtration: usize) -> PermanentCycleVerdict {
    let chart = res.chart();
    let internal = stem + filtration as i64;
    let class_present = internal >= 0 && chart.dim(filtration, internal as u32) > 0;
    let mut incoming = Vec::new();
    for n in 0..filtration.saturating_sub(1) {
        let t = stem + 1 + n as i64;
        if t >= 0 && chart.dim(n, t as u32) > 0 {
            incoming.push((n, t as u32));
        }
    }
    let mut outgoing = Vec::new();
    let mut beyond = false;
    // minimal resolutions of connective modules have nothing in negative stems
    let target_stems = if stem >= 1 { filtration + 2..=filtration + 2 + res.max_filtration } else { 1..=0 };
    for n in target_stems {
        let t = stem - 1 + n as i64;
        if t < 0 {
            continue;
        }
        if t as u32 > res.max_degree || n > res.max_filtration {
            beyond = true;
            continue;
        }
        if chart.dim(n, t as u32) > 0 {
            outgoing.push((n, t as u32));
        }
    }
    let verdict = if !class_present {
        "vacuous: no class here".to_string()
    } else if incoming.is_empty() && outgoing.is_empty() {
        if beyond {
            "no possible differential (outgoing targets above the window unchecked)".to_string()
        } else {
            "no possible differential".to_string()
        }
    } else {
        "differentials possible".to_string()
    };
    PermanentCycleVerdict {
        filtration,
        stem,
        class_present,
        incoming,
        outgoing,
        outgoing_beyond_window: beyond,
        verdict,
    }
}

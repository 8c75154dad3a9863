//! Pages as lattice pairs Z_r ⊇ B_r inside the E₂ coordinates of each position.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::exact::{
    integer_kernel, lattice_basis, lattice_coordinates, lattice_quotient, smith_decomposition,
    solve_integer, AbGroup, IntMatrix,
};

use super::fibration::{DiffValue, E2Gen, Fibration, FibrationId};
use super::SpectralError;

pub type Bidegree = (u32, u32);

/// Rectangle of bidegrees to report; computation runs on a larger region so that
/// differentials leaving the rectangle are still evaluated where the tables allow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Window {
    pub n_max: u32,
    pub m_max: u32,
}

impl Window {
    pub fn new(n_max: u32, m_max: u32) -> Self {
        Window { n_max, m_max }
    }

    pub fn contains(&self, (n, m): Bidegree) -> bool {
        n <= self.n_max && m <= self.m_max
    }

    fn region_n(&self) -> u32 {
        self.n_max + self.m_max + 1
    }
}

/// Subquotient data; `None` marks a lattice the tables do not determine.
#[derive(Debug, Clone)]
pub struct Cell {
    pub cycles: Option<IntMatrix>,
    pub bounds: Option<IntMatrix>,
}

#[derive(Debug, Clone)]
pub struct Page {
    pub r: u32,
    pub cells: BTreeMap<Bidegree, Cell>,
}

/// A group on some page with a representative for each cyclic summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PageGroup {
    pub group: AbGroup,
    pub generators: Vec<String>,
    #[serde(skip)]
    pub representatives: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone)]
pub enum DiffMatrix {
    Zero,
    Known(IntMatrix),
    Unknown,
}

#[derive(Debug, Clone)]
pub struct SpectralRun {
    pub id: FibrationId,
    pub p: u32,
    pub window: Window,
    pub gens: BTreeMap<Bidegree, Option<Vec<E2Gen>>>,
    /// `pages[i]` is E_{i+2}.
    pub pages: Vec<Page>,
    pub differentials: BTreeMap<(u32, Bidegree), DiffMatrix>,
    /// Why a position became undetermined, when the cause is a missing table entry.
    pub causes: BTreeMap<Bidegree, SpectralError>,
}

fn empty(rows: usize) -> IntMatrix {
    IntMatrix::from_columns(rows, &[])
}

fn relations(gens: &[E2Gen]) -> IntMatrix {
    let cols: Vec<Vec<BigInt>> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| g.order != 0)
        .map(|(i, g)| {
            let mut v = vec![BigInt::zero(); gens.len()];
            v[i] = BigInt::from(g.order);
            v
        })
        .collect();
    IntMatrix::from_columns(gens.len(), &cols)
}

fn contained(lattice: &IntMatrix, vectors: &IntMatrix) -> bool {
    vectors
        .columns()
        .iter()
        .all(|c| c.iter().all(Zero::is_zero) || solve_integer(lattice, c).is_some())
}

fn target(r: u32, (n, m): Bidegree) -> Option<Bidegree> {
    (m + 1 >= r).then(|| (n + r, m + 1 - r))
}

/// Unimodular inverse, one integer solve per unit vector.
fn inverse(u: &IntMatrix) -> IntMatrix {
    let n = u.rows();
    let cols: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::from(1);
            solve_integer(u, &e).expect("unimodular")
        })
        .collect();
    IntMatrix::from_columns(n, &cols)
}

/// Z/B with named generators: each representative is reduced modulo the generator orders.
pub fn describe(cycles: &IntMatrix, bounds: &IntMatrix, gens: &[E2Gen]) -> Option<PageGroup> {
    let coords = lattice_coordinates(cycles, bounds)?;
    let s = smith_decomposition(&coords);
    let diag = s.diag();
    let uinv = inverse(&s.u);
    let mut orders = Vec::new();
    let mut names = Vec::new();
    let mut reps = Vec::new();
    for i in 0..cycles.cols() {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d == BigInt::from(1) {
            continue;
        }
        let mut v = cycles.mul_vec(&uinv.column(i));
        for (x, g) in v.iter_mut().zip(gens) {
            if g.order != 0 {
                let o = BigInt::from(g.order);
                *x = ((x.clone() % &o) + &o) % &o;
                if x.clone() * 2 > o {
                    *x -= &o;
                }
            }
        }
        if let Some(first) = v.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                v.iter_mut().for_each(|x| *x = -x.clone());
            }
        }
        names.push(label(&v, gens));
        orders.push(d.magnitude().to_u64().unwrap_or(0));
        reps.push(v);
    }
    let group = AbGroup::new(names.iter().cloned().zip(orders));
    Some(PageGroup {
        group,
        generators: names,
        representatives: reps,
    })
}

fn label(v: &[BigInt], gens: &[E2Gen]) -> String {
    let mut parts = Vec::new();
    for (x, g) in v.iter().zip(gens) {
        if x.is_zero() {
            continue;
        }
        let l = g.label();
        let term = if *x == BigInt::from(1) {
            l
        } else if *x == BigInt::from(-1) {
            format!("-{l}")
        } else {
            format!("{x}·{l}")
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl SpectralRun {
    /// E₂ over the computation region.
    pub fn build_e2(fib: &Fibration, window: Window) -> Result<SpectralRun, SpectralError> {
        let mut gens = BTreeMap::new();
        let mut cells = BTreeMap::new();
        for n in 0..=window.region_n() {
            for m in 0..=window.m_max {
                let g = fib.e2_generators(n, m)?;
                let cell = match &g {
                    Some(g) => Cell {
                        cycles: Some(IntMatrix::identity(g.len())),
                        bounds: Some(relations(g)),
                    },
                    None => Cell {
                        cycles: None,
                        bounds: None,
                    },
                };
                gens.insert((n, m), g);
                cells.insert((n, m), cell);
            }
        }
        Ok(SpectralRun {
            id: fib.id,
            p: fib.p,
            window,
            gens,
            pages: vec![Page { r: 2, cells }],
            differentials: BTreeMap::new(),
            causes: BTreeMap::new(),
        })
    }

    /// Runs every page on which a differential can still be nonzero inside the window.
    pub fn run(fib: &Fibration, window: Window) -> Result<SpectralRun, SpectralError> {
        let mut run = Self::build_e2(fib, window)?;
        for r in 2..=window.m_max + 1 {
            run.step(fib, r)?;
        }
        Ok(run)
    }

    pub fn last_page(&self) -> u32 {
        self.pages.last().map(|p| p.r).unwrap_or(2)
    }

    fn page(&self, r: u32) -> Result<&Page, SpectralError> {
        self.pages
            .iter()
            .find(|p| p.r == r)
            .ok_or(SpectralError::NotComputed { page: r })
    }

    /// The group at a bidegree on page r, with generator provenance.
    pub fn page_at(&self, r: u32, pos: Bidegree) -> Result<PageGroup, SpectralError> {
        let page = self.page(r)?;
        let (Some(cell), Some(Some(gens))) = (page.cells.get(&pos), self.gens.get(&pos)) else {
            if self.window.contains(pos) || pos.0 <= self.window.region_n() {
                return Err(SpectralError::NotDetermined { page: r, position: pos });
            }
            return Err(SpectralError::OutsideWindow { position: pos });
        };
        match (&cell.cycles, &cell.bounds) {
            (Some(z), Some(b)) => describe(z, b, gens).ok_or(SpectralError::Inconsistent {
                page: r,
                position: pos,
                detail: "boundaries not inside cycles".into(),
            }),
            _ => Err(self
                .causes
                .get(&pos)
                .cloned()
                .unwrap_or(SpectralError::NotDetermined { page: r, position: pos })),
        }
    }

    /// E_∞ at a bidegree: the page after the last differential that can reach it.
    pub fn infinity_at(&self, pos: Bidegree) -> Result<PageGroup, SpectralError> {
        self.page_at(self.last_page(), pos)
    }

    fn group_of(&self, r: u32, pos: Bidegree) -> Option<AbGroup> {
        self.page_at(r, pos).ok().map(|g| g.group)
    }

    fn step(&mut self, fib: &Fibration, r: u32) -> Result<(), SpectralError> {
        let page = self.page(r)?.clone();
        let mut next = page.cells.clone();
        for (&s, cell) in &page.cells {
            let Some(Some(src)) = self.gens.get(&s) else {
                continue;
            };
            let Some(t) = target(r, s) else { continue };
            let tgt = match self.gens.get(&t) {
                Some(Some(g)) => g.clone(),
                Some(None) | None => {
                    // target beyond the tables: only a differential that is zero by rule survives
                    let all_zero = src
                        .iter()
                        .map(|g| fib.differential_of(r, g, &[]))
                        .all(|v| matches!(v, Ok(DiffValue::Zero)));
                    if !all_zero {
                        next.get_mut(&s).expect("cell").cycles = None;
                    }
                    continue;
                }
            };
            let mut cols = Vec::with_capacity(src.len());
            let mut unknown = Vec::new();
            let mut any = false;
            let mut cause = None;
            for (i, g) in src.iter().enumerate() {
                let value = match fib.differential_of(r, g, &tgt) {
                    Ok(v) => v,
                    Err(e @ SpectralError::Ring(_)) | Err(e @ SpectralError::MissingTable { .. }) => {
                        cause = Some(e);
                        DiffValue::Unknown
                    }
                    Err(e) => return Err(e),
                };
                match value {
                    DiffValue::Zero => cols.push(vec![BigInt::zero(); tgt.len()]),
                    DiffValue::Known(v) => {
                        any |= v.iter().any(|x| *x != 0);
                        cols.push(v.into_iter().map(BigInt::from).collect());
                    }
                    DiffValue::Unknown => {
                        unknown.push(i);
                        cols.push(vec![BigInt::zero(); tgt.len()]);
                    }
                }
            }
            // generators that no surviving cycle involves do not matter
            if let Some(zs) = &cell.cycles {
                unknown.retain(|&i| {
                    let o = BigInt::from(src[i].order);
                    (0..zs.cols()).any(|c| {
                        let x = zs.get(i, c);
                        if o.is_zero() { !x.is_zero() } else { !(x % &o).is_zero() }
                    })
                });
            }
            let mut undetermined = false;
            if !unknown.is_empty() {
                // a homomorphism vanishes if the target has nothing of matching order
                let forced = match self.group_of(r, t) {
                    Some(a) if a.is_trivial() => true,
                    Some(a) => unknown.iter().all(|&i| {
                        let o = src[i].order;
                        o != 0
                            && a.orders().iter().all(|x| {
                                // torsion never maps nontrivially into a free summand
                                x.is_zero() || num_integer::Integer::gcd(x, &num_bigint::BigUint::from(o)) == num_bigint::BigUint::from(1u32)
                            })
                    }),
                    None => false,
                };
                undetermined = !forced;
            }
            if undetermined {
                if let Some(e) = cause {
                    self.causes.entry(s).or_insert(e.clone());
                    self.causes.entry(t).or_insert(e);
                }
                self.differentials.insert((r, s), DiffMatrix::Unknown);
                next.get_mut(&s).expect("cell").cycles = None;
                next.get_mut(&t).expect("cell").bounds = None;
                continue;
            }
            if !any {
                self.differentials.insert((r, s), DiffMatrix::Zero);
                continue;
            }
            let d = IntMatrix::from_columns(tgt.len(), &cols);
            self.differentials.insert((r, s), DiffMatrix::Known(d.clone()));
            let tcell = &page.cells[&t];
            let (Some(zs), Some(bt)) = (&cell.cycles, &tcell.bounds) else {
                next.get_mut(&s).expect("cell").cycles = None;
                next.get_mut(&t).expect("cell").bounds = None;
                continue;
            };
            let a = d.mul(zs);
            if let Some(zt) = &tcell.cycles {
                if !contained(zt, &a) {
                    return Err(SpectralError::Inconsistent {
                        page: r,
                        position: s,
                        detail: "image of a cycle is not a cycle".into(),
                    });
                }
            }
            if let Some(bs) = &cell.bounds {
                if !contained(bt, &d.mul(bs)) {
                    return Err(SpectralError::Inconsistent {
                        page: r,
                        position: s,
                        detail: "differential does not respect boundaries".into(),
                    });
                }
            }
            let ker = integer_kernel(&a.hcat(bt));
            let idx: Vec<usize> = (0..zs.cols()).collect();
            let c = ker.select_rows(&idx);
            let new_z = if c.cols() == 0 {
                empty(src.len())
            } else {
                lattice_basis(&zs.mul(&c))
            };
            next.get_mut(&s).expect("cell").cycles = Some(new_z);
            let nb = next.get_mut(&t).expect("cell");
            if let Some(b) = &nb.bounds {
                nb.bounds = Some(lattice_basis(&b.hcat(&a)));
            }
        }
        self.pages.push(Page { r: r + 1, cells: next });
        Ok(())
    }

    /// d_r ∘ d_r = 0 on cycles at every position where both maps are known.
    pub fn check_d_squared(&self) -> Result<usize, SpectralError> {
        let mut checked = 0;
        for ((r, s), d1) in &self.differentials {
            let DiffMatrix::Known(d1) = d1 else { continue };
            let Some(t) = target(*r, *s) else { continue };
            let Some(DiffMatrix::Known(d2)) = self.differentials.get(&(*r, t)) else {
                continue;
            };
            let Some(t2) = target(*r, t) else { continue };
            let page = self.page(*r)?;
            let (Some(zs), Some(b2)) = (&page.cells[s].cycles, &page.cells[&t2].bounds) else {
                continue;
            };
            if !contained(b2, &d2.mul(&d1.mul(zs))) {
                return Err(SpectralError::Inconsistent {
                    page: *r,
                    position: *s,
                    detail: "d∘d ≠ 0".into(),
                });
            }
            checked += 1;
        }
        Ok(checked)
    }

    /// E_{r+1} at `s` recomputed from the presentation of E_r in SNF-relative coordinates,
    /// independently of the lattice bookkeeping used by `step`.
    pub fn recompute(&self, r: u32, s: Bidegree) -> Result<Option<AbGroup>, SpectralError> {
        let page = self.page(r)?;
        let Some(cell) = page.cells.get(&s) else {
            return Ok(None);
        };
        let (Some(zs), Some(bs)) = (&cell.cycles, &cell.bounds) else {
            return Ok(None);
        };
        let qs = lattice_coordinates(zs, bs).ok_or(SpectralError::Inconsistent {
            page: r,
            position: s,
            detail: "boundaries not inside cycles".into(),
        })?;
        // outgoing map as a matrix from Z_r(s)-coordinates to Z_r(t)-coordinates
        let kernel = match (target(r, s), target(r, s).and_then(|_| self.differentials.get(&(r, s)))) {
            (Some(t), Some(DiffMatrix::Known(d))) => {
                let tc = &page.cells[&t];
                let (Some(zt), Some(bt)) = (&tc.cycles, &tc.bounds) else {
                    return Ok(None);
                };
                let m = lattice_coordinates(zt, &d.mul(zs)).ok_or(SpectralError::Inconsistent {
                    page: r,
                    position: s,
                    detail: "image of a cycle is not a cycle".into(),
                })?;
                let qt = lattice_coordinates(zt, bt).expect("bounds inside cycles");
                let k = integer_kernel(&m.hcat(&qt));
                let idx: Vec<usize> = (0..zs.cols()).collect();
                k.select_rows(&idx)
            }
            (_, Some(DiffMatrix::Unknown)) => return Ok(None),
            _ => IntMatrix::identity(zs.cols()),
        };
        // incoming image in the same coordinates
        let mut rel = qs.clone();
        if s.1 + r >= 1 && s.0 >= r {
            let src = (s.0 - r, s.1 + r - 1);
            match self.differentials.get(&(r, src)) {
                Some(DiffMatrix::Known(d)) => {
                    let Some(zsrc) = &page.cells[&src].cycles else {
                        return Ok(None);
                    };
                    let m = lattice_coordinates(zs, &d.mul(zsrc)).expect("image in cycles");
                    rel = rel.hcat(&m);
                }
                Some(DiffMatrix::Unknown) => return Ok(None),
                _ => {}
            }
        }
        Ok(lattice_quotient(&kernel, &rel))
    }
}

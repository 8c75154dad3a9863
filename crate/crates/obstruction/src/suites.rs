//! Verification suites: each one runs a family of computations and returns check records.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::char_class::{chern_total, decompose_restriction, pontrjagin_classes, stable_inverse, wu_q1, wu_q1_shortcut, LineBundleSum, Rep};
use crate::em_space::{bockstein_consistency, homology_dual, k_table, Class, EMTable, EmError, Space};
use crate::finite_groups::{cyclic_subgroup_census, gl2_elements, gl2_order, oliver_order, ExtraspecialGroup, GL2Module};
use crate::group_rings::{load_ring, restriction_g_to_h, Coefficients, Gen, GradedElement, Monomial, RingKind, TruncatedRing};
use crate::report::CheckRecord;
use crate::spectral::{default_window, derive_times_p, filtration_report, homology_dual_run, p_torsion_at_total_degree, Fibration, SpectralRun};
use crate::steenrod::{
    lift_chain_map, minimal_resolution, permanent_cycle_check, sphere, thom_module, ModuleMap, ResolveOptions, SteenrodAlgebra, ThomKind,
};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Chern,
    Serre,
    Emspace,
    Steenrod,
    Oliver,
    Gl2,
    Construct3,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Chern,
        Suite::Serre,
        Suite::Emspace,
        Suite::Steenrod,
        Suite::Oliver,
        Suite::Gl2,
        Suite::Construct3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Chern => "chern",
            Suite::Serre => "serre",
            Suite::Emspace => "emspace",
            Suite::Steenrod => "steenrod",
            Suite::Oliver => "oliver",
            Suite::Gl2 => "gl2",
            Suite::Construct3 => "construct3",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteParams {
    pub p: u32,
    /// Restrict subgroup-indexed checks to one t; all of 0..=p when absent.
    pub t: Option<u32>,
    #[serde(rename = "epsilon", serialize_with = "ser_rational")]
    pub eps: Rational,
    /// Overrides the internal-degree cap of resolutions and the range of the ×p rederivation.
    pub max_degree: Option<u32>,
    /// Ring and Eilenberg–MacLane tables are read from here when the files exist.
    pub data_dir: Option<PathBuf>,
    pub numeric_points: usize,
    pub seed: u64,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl SuiteParams {
    pub fn new(p: u32) -> Self {
        SuiteParams {
            p,
            t: None,
            eps: Rational::new(1.into(), 8.into()),
            max_degree: None,
            data_dir: None,
            numeric_points: 100,
            seed: 0x5eed,
        }
    }
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let res = match suite {
        Suite::Chern => chern(params, &mut out),
        Suite::Serre => serre(params, &mut out),
        Suite::Emspace => emspace(params, &mut out),
        Suite::Steenrod => steenrod(params, &mut out),
        Suite::Oliver => oliver(params, &mut out),
        Suite::Gl2 => gl2(params, &mut out),
        Suite::Construct3 => construct3(params, &mut out),
    };
    if let Err(e) = res {
        out.push(CheckRecord::new(
            format!("{suite} suite completes"),
            "suite driver",
            "no error",
            "error",
            vec![e],
        ));
    }
    out
}

type Out<'a> = &'a mut Vec<CheckRecord>;

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ts(params: &SuiteParams) -> Vec<u32> {
    match params.t {
        Some(t) => vec![t],
        None => (0..=params.p).collect(),
    }
}

fn low_part(ring: &TruncatedRing, x: &GradedElement, top: u32) -> GradedElement {
    (0..=top).fold(ring.zero(), |acc, d| ring.add(&acc, &ring.homogeneous(x, d)))
}

fn chern(params: &SuiteParams, out: Out) -> Result<(), String> {
    let p = params.p;
    let dir = params.data_dir.as_deref();
    let z = load_ring(dir, RingKind::BHt, p, Coefficients::Integral).map_err(err)?;
    let fp = load_ring(dir, RingKind::BHt, p, Coefficients::ModP).map_err(err)?;
    let g = load_ring(dir, RingKind::BGt, p, Coefficients::Integral).map_err(err)?;
    let printed_z = z
        .parse(&format!("1 - v'^{} + tau'^{p} - tau'*v'^{}", p - 1, p - 1))
        .map_err(err)?;
    let printed_fp = fp
        .parse(&format!("1 - v^{} + taub^{p} - taub*v^{}", p - 1, p - 1))
        .map_err(err)?;
    let v_top = fp.monomial(&Monomial::from_factors([(Gen::V, p - 1)]));
    let r = (p as usize - 1) / 2;
    let cap = 4 * p - 2;
    for t in ts(params) {
        let anchor = "Chern classes over the subgroup";
        let psi_fp = decompose_restriction(Rep::Psi, &fp, t).map_err(err)?;
        let ch_fp = chern_total(&fp, &psi_fp).map_err(err)?;
        out.push(CheckRecord::compare(
            &format!("ch(psi) mod p, t = {t}"),
            anchor,
            fp.display(&printed_fp),
            fp.display(&ch_fp.total(&fp)),
        ));

        let ch_z = chern_total(&z, &decompose_restriction(Rep::Psi, &z, t).map_err(err)?).map_err(err)?;
        let residual = z.sub(&ch_z.total(&z), &printed_z);
        let binomial_terms = (1..p).fold(z.zero(), |acc, j| {
            let tj = z.monomial(&Monomial::from_factors([(Gen::TauPrime, j)]));
            acc_add(&z, &acc, &tj, binom(p, j))
        });
        out.push(CheckRecord::compare(
            &format!("integral ch(psi) minus printed form is the p-divisible binomial part, t = {t}"),
            anchor,
            z.display(&binomial_terms),
            z.display(&residual),
        ));
        let zeta = restriction_g_to_h(p, t, Coefficients::Integral)
            .apply(&g.monomial(&"zeta".parse().map_err(err)?), &z)
            .map_err(err)?;
        out.push(CheckRecord::compare(
            &format!("top Chern class of psi is the restricted k-invariant, t = {t}"),
            anchor,
            z.display(&zeta),
            z.display(&ch_z.classes[p as usize]),
        ));

        let mut blocks = LineBundleSum { lines: Vec::new() };
        for _ in 0..p {
            blocks = blocks.concat(&decompose_restriction(Rep::PhiZero, &z, t).map_err(err)?);
            blocks = blocks.concat(&decompose_restriction(Rep::PhiP, &z, t).map_err(err)?);
        }
        let want = if t < p {
            format!("1 + {}*v'^{p} + {t}*v'^{}", 1 + t, 2 * p)
        } else {
            format!("1 + v'^{p}")
        };
        out.push(CheckRecord::compare(
            &format!("ch(phi blocks), t = {t}"),
            anchor,
            z.display(&z.parse(&want).map_err(err)?),
            z.display(&chern_total(&z, &blocks).map_err(err)?.total(&z)),
        ));

        let a = decompose_restriction(Rep::Psi, &fp, t).map_err(err)?;
        let b = decompose_restriction(Rep::PhiP, &fp, t).map_err(err)?;
        let whole = chern_total(&fp, &a.concat(&b)).map_err(err)?.total(&fp);
        let parts = fp
            .multiply(
                &chern_total(&fp, &a).map_err(err)?.total(&fp),
                &chern_total(&fp, &b).map_err(err)?.total(&fp),
            )
            .map_err(err)?;
        out.push(CheckRecord::compare(
            &format!("Whitney sum formula, t = {t}"),
            "Chern classes over the subgroup",
            fp.display(&parts),
            fp.display(&whole),
        ));

        let anchor = "stable normal class";
        let c = chern_total(&fp, &decompose_restriction(Rep::PsiHat, &fp, t).map_err(err)?).map_err(err)?;
        let inv = stable_inverse(&fp, &c, cap).map_err(err)?;
        let prod = fp.multiply(&c.total(&fp), &inv.total(&fp)).map_err(err)?;
        out.push(CheckRecord::compare(
            &format!("ch(xi)·ch(psi hat) through degree {cap}, t = {t}"),
            anchor,
            "1",
            fp.display(&low_part(&fp, &prod, cap)),
        ));
        out.push(CheckRecord::compare(
            &format!("leading part of ch(xi), t = {t}"),
            anchor,
            fp.display(&fp.add(&fp.one(), &v_top)),
            fp.display(&low_part(&fp, &inv.total(&fp), 2 * p - 2)),
        ));

        let anchor = "Pontrjagin and Wu classes of the normal class";
        let pont = pontrjagin_classes(&fp, &inv, r).map_err(err)?;
        let below: Vec<String> = (1..r).filter(|&k| !pont[k].is_zero()).map(|k| format!("p_{k} = {}", fp.display(&pont[k]))).collect();
        out.push(CheckRecord::new(
            format!("p_k vanishes for 0 < k < {r}, t = {t}"),
            anchor,
            "0",
            if below.is_empty() { "0" } else { "nonzero" },
            below,
        ));
        let sign = if r % 2 == 0 { 2 } else { -2 };
        out.push(CheckRecord::compare(
            &format!("p_{r}, t = {t}"),
            anchor,
            fp.display(&fp.scale(&v_top, sign)),
            fp.display(&pont[r]),
        ));
        let q1 = wu_q1(&fp, &pont).map_err(err)?;
        out.push(CheckRecord::compare(&format!("q1, t = {t}"), anchor, fp.display(&v_top), fp.display(&q1)));
        out.push(CheckRecord::compare(
            &format!("q1 from the multiplicative sequence equals the top-class shortcut, t = {t}"),
            anchor,
            fp.display(&wu_q1_shortcut(&fp, &pont)),
            fp.display(&q1),
        ));
    }
    out.push(CheckRecord::discrepancy(
        "integral ch(psi) as printed",
        "Chern classes over the subgroup",
        z.display(&printed_z),
        "printed form plus the binomial terms C(p,j)·tau'^j, 0 < j < p; exact after reduction mod p",
        Vec::new(),
    ));
    Ok(())
}

fn acc_add(ring: &TruncatedRing, acc: &GradedElement, x: &GradedElement, k: i64) -> GradedElement {
    ring.add(acc, &ring.scale(x, k))
}

fn binom(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

fn serre(params: &SuiteParams, out: Out) -> Result<(), String> {
    let p = params.p;
    let t = params.t.unwrap_or(1);
    let w = default_window(p);
    let runs = [
        ("G", SpectralRun::run(&Fibration::g(p).map_err(err)?, w).map_err(err)?),
        ("H", SpectralRun::run(&Fibration::h(p, t).map_err(err)?, w).map_err(err)?),
        ("S1", SpectralRun::run(&Fibration::s(p).map_err(err)?, w).map_err(err)?),
    ];
    let pos = (2 * p - 2, 2 * p - 1);
    let r = 2 * p + 1;
    let kernels = [
        format!("{p}·z₂·chi{}", p - 1),
        format!("{p}·z₂·tau'^{}", p - 1),
        format!("z₂·tau^{}", p - 1),
    ];
    let anchor = "first transgression over the classifying spaces";
    for ((name, run), kernel) in runs.iter().zip(&kernels) {
        let e = run.page_at(r, pos).map_err(err)?;
        out.push(CheckRecord::compare(
            &format!("kernel of d_{} at {pos:?} over {name}", 2 * p),
            anchor,
            format!("Z = ⟨{kernel}⟩"),
            format!("{} = ⟨{}⟩", e.group, e.generators.join(", ")),
        ));
        let bottom = run.page_at(r, (4 * p - 2, 0)).map_err(err)?.group;
        out.push(CheckRecord::compare(
            &format!("d_{} onto ({}, 0) over {name}", 2 * p, 4 * p - 2),
            anchor,
            "0",
            format!("{bottom}"),
        ));
        let dd = run.check_d_squared();
        out.push(CheckRecord::new(
            format!(
                "d∘d = 0 on every computed page over {name} ({} composites with both maps nonzero)",
                dd.as_ref().copied().unwrap_or(0)
            ),
            "spectral sequence properties",
            "ok",
            if dd.is_ok() { "ok" } else { "violated" },
            dd.err().map(|e| vec![e.to_string()]).unwrap_or_default(),
        ));
        let mut mismatches = Vec::new();
        for page in 2..run.last_page() {
            for n in 0..=run.window.n_max {
                for m in 0..=run.window.m_max {
                    let Ok(next) = run.page_at(page + 1, (n, m)) else { continue };
                    if let Ok(Some(again)) = run.recompute(page, (n, m)) {
                        if !again.isomorphic(&next.group) {
                            mismatches.push(format!("E_{} at ({n},{m}): {} vs {again}", page + 1, next.group));
                        }
                    }
                }
            }
        }
        out.push(CheckRecord::new(
            format!("pages agree with an independent homology computation over {name}"),
            "spectral sequence properties",
            "agree",
            if mismatches.is_empty() { "agree" } else { "differ" },
            mismatches,
        ));
    }
    let g = &runs[0].1;
    let mid = g.page_at(2, pos).map_err(err)?.group;
    out.push(CheckRecord::compare(
        &format!("E_2 at {pos:?} over G"),
        "E_2 page over G",
        format!("free rank 2, p-rank {}", 2 * p),
        format!("free rank {}, p-rank {}", mid.free_rank(), mid.p_torsion_rank(u64::from(p))),
    ));
    let rep = filtration_report(g).map_err(err)?;
    let anchor = "filtration of H^{4p-3} over G";
    out.push(CheckRecord::compare(
        "filtration piece E_∞ at (2p−2, 2p−1)",
        anchor,
        format!("Z = ⟨{}⟩", kernels[0]),
        format!("{} = ⟨{}⟩", rep.filtration_piece.group, rep.filtration_piece.generators.join(", ")),
    ));
    out.push(CheckRecord::compare("E_∞ bottom row at total degree 4p−3", anchor, "0", &rep.bottom_row));
    out.push(CheckRecord::compare("rows strictly between 0 and 2p−1 vanish", anchor, true, rep.low_rows_vanish));
    out.push(CheckRecord::compare("quotient has no p-torsion", anchor, true, rep.quotient_p_torsion_free));

    let dual = homology_dual_run(g).map_err(err)?;
    out.push(CheckRecord::compare(
        "homology E^∞ at (4p−3, 0) over G",
        "homology spectral sequence",
        format!("Z/{p}"),
        &dual.survivor,
    ));
    out.push(CheckRecord::compare(
        "p-torsion rank at total degree 4p−2 over S1",
        "circle fibration",
        2,
        p_torsion_at_total_degree(&runs[2].1, 4 * p - 2).map_err(err)?,
    ));
    let top = params.max_degree.unwrap_or(4 * p - 2);
    let rows = derive_times_p(p, top).map_err(err)?;
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| r.derived_dim != r.table_dim || !r.column_dies)
        .map(|r| format!("degree {}: derived {}, table {}, column dies {}", r.degree, r.derived_dim, r.table_dim, r.column_dies))
        .collect();
    out.push(CheckRecord::new(
        format!("×p fibration rederives dim H^i(K; F_p) for i ≤ {top}"),
        "×p fibration",
        "agree",
        if bad.is_empty() { "agree" } else { "differ" },
        bad,
    ));
    Ok(())
}

fn load_em(params: &SuiteParams, space: Space, coeffs: Coefficients) -> Result<EMTable, String> {
    if let Some(dir) = &params.data_dir {
        let path = crate::em_space::table_path(dir, space, params.p, coeffs);
        if path.exists() {
            let text = std::fs::read_to_string(&path).map_err(err)?;
            return EMTable::from_text(&text).map_err(err);
        }
    }
    k_table(space, params.p, coeffs).map_err(err)
}

fn names(t: &EMTable, d: u32) -> Result<String, String> {
    let e = t.entry(d).map_err(err)?;
    Ok(e.basis.iter().map(Class::pretty).collect::<Vec<_>>().join(", "))
}

fn emspace(params: &SuiteParams, out: Out) -> Result<(), String> {
    let p = params.p;
    let fp = load_em(params, Space::K, Coefficients::ModP)?;
    let z = load_em(params, Space::K, Coefficients::Integral)?;
    let kp = load_em(params, Space::Kp, Coefficients::ModP)?;
    let pp = u64::from(p);
    let anchor = "cohomology of K(Z⊕Z, 2p−1)";
    let group = |t: &EMTable, d: u32| t.group(d).map(|g| g.to_string()).map_err(err);
    let zero_range = |t: &EMTable, lo: u32, hi: u32| -> Vec<String> {
        (lo..=hi)
            .filter_map(|i| match t.group(i) {
                Ok(g) if g.p_torsion_rank(pp) == 0 && g.free_rank() == 0 => None,
                Ok(g) => Some(format!("H^{i} = {g}")),
                Err(e) => Some(format!("H^{i}: {e}")),
            })
            .collect()
    };
    let vanish = |name: String, residual: Vec<String>| {
        CheckRecord::new(name, anchor, "0", if residual.is_empty() { "0" } else { "nonzero" }, residual)
    };

    out.push(CheckRecord::compare("H^0(K; Z)", anchor, "Z", group(&z, 0)?));
    out.push(CheckRecord::compare("H^0(K; F_p)", anchor, 1, fp.dim(0).map_err(err)?));
    let mut low = zero_range(&z, 1, 2 * p - 2);
    low.extend(zero_range(&fp, 1, 2 * p - 2));
    out.push(vanish(format!("H^i(K) = 0 for 1 ≤ i ≤ {}", 2 * p - 2), low));
    out.push(CheckRecord::compare(
        &format!("H^{}(K; Z)", 2 * p - 1),
        anchor,
        "Z ⊕ Z = ⟨z₁, z₂⟩",
        format!("{} = ⟨{}⟩", group(&z, 2 * p - 1)?, names(&z, 2 * p - 1)?),
    ));
    out.push(CheckRecord::compare(
        &format!("H^{}(K; F_p)", 2 * p - 1),
        anchor,
        format!("Z/{p} ⊕ Z/{p} = ⟨z̄₁, z̄₂⟩"),
        format!("{} = ⟨{}⟩", group(&fp, 2 * p - 1)?, names(&fp, 2 * p - 1)?),
    ));
    let torsion: Vec<String> = (2 * p..=4 * p - 3)
        .filter_map(|i| match z.group(i) {
            Ok(g) if g.free_rank() == 0 => None,
            Ok(g) => Some(format!("H^{i} = {g}")),
            Err(e) => Some(format!("H^{i}: {e}")),
        })
        .collect();
    out.push(CheckRecord::new(
        format!("H^i(K; Z) is torsion for {} ≤ i ≤ {}", 2 * p, 4 * p - 3),
        anchor,
        "torsion",
        if torsion.is_empty() { "torsion" } else { "has free part" },
        torsion,
    ));
    let mut mid = zero_range(&z, 2 * p, 4 * p - 4);
    mid.extend(zero_range(&fp, 2 * p, 4 * p - 4));
    out.push(vanish(format!("p-locally H^i(K) = 0 for {} ≤ i ≤ {}", 2 * p, 4 * p - 4), mid));
    out.push(vanish(format!("p-locally H^{}(K; Z) = 0", 4 * p - 3), zero_range(&z, 4 * p - 3, 4 * p - 3)));
    out.push(CheckRecord::compare(
        &format!("H^{}(K; F_p)", 4 * p - 3),
        anchor,
        format!("Z/{p} ⊕ Z/{p} = ⟨P¹z̄₁, P¹z̄₂⟩"),
        format!("{} = ⟨{}⟩", group(&fp, 4 * p - 3)?, names(&fp, 4 * p - 3)?),
    ));
    out.push(CheckRecord::compare(
        &format!("p-locally H^{}(K; Z)", 4 * p - 2),
        anchor,
        format!("Z ⊕ Z/{p} ⊕ Z/{p} = ⟨z₁∪z₂, δP¹z̄₁, δP¹z̄₂⟩"),
        format!("{} = ⟨{}⟩", group(&z, 4 * p - 2)?, names(&z, 4 * p - 2)?),
    ));
    out.push(CheckRecord::compare(
        &format!("H^{}(K; F_p)", 4 * p - 2),
        anchor,
        format!("Z/{p} ⊕ Z/{p} ⊕ Z/{p} = ⟨z̄₁∪z̄₂, βP¹z̄₁, βP¹z̄₂⟩"),
        format!("{} = ⟨{}⟩", group(&fp, 4 * p - 2)?, names(&fp, 4 * p - 2)?),
    ));
    let report = bockstein_consistency(&fp, &z);
    let forced = report.as_ref().map(|r| r.forced_torsion_free.clone()).unwrap_or_default();
    out.push(CheckRecord::new(
        format!("H^{}(K; Z) has no p-torsion, forced by the Bockstein sequence", 4 * p - 1),
        anchor,
        format!("[{}] forced, p-rank 0", 4 * p - 1),
        format!(
            "{forced:?} forced, p-rank {}",
            z.group(4 * p - 1).map(|g| g.p_torsion_rank(pp).to_string()).unwrap_or_else(|e| e.to_string())
        ),
        Vec::new(),
    ));
    // the counting rule is the consistency check behind every fact above
    let (rows, residual) = match &report {
        Ok(r) => (r.rows.len(), Vec::new()),
        Err(e) => (0, vec![e.to_string()]),
    };
    out.push(CheckRecord::new(
        "Bockstein counting rule in every degree",
        "Bockstein sequences",
        format!("{} degrees consistent", 4 * p - 1),
        format!("{rows} degrees consistent"),
        residual,
    ));

    for (label, t) in [("K_p; F_p", &kp), ("K; F_p", &fp), ("K; Z", &z)] {
        let deg = t.check_degrees();
        let clo = t.check_steenrod_closure();
        let residual: Vec<String> = [deg.err(), clo.err()].into_iter().flatten().map(|e| e.to_string()).collect();
        out.push(CheckRecord::new(
            format!("generator degrees and Steenrod closure of H*({label})"),
            "table consistency",
            "ok",
            if residual.is_empty() { "ok" } else { "failed" },
            residual,
        ));
    }
    let dims: Vec<String> = (0..=4 * p - 1).map(|i| kp.dim(i).map(|d| d.to_string()).unwrap_or_else(|e| e.to_string())).collect();
    let want: Vec<String> = (0..=4 * p - 1)
        .map(|i| match i {
            0 => 1,
            _ if i == 2 * p - 1 || i == 2 * p || i == 4 * p - 3 => 2,
            _ if i == 4 * p - 2 => 5,
            _ if i == 4 * p - 1 => 6,
            _ => 0,
        })
        .map(|d: usize| d.to_string())
        .collect();
    out.push(CheckRecord::compare(
        "dimensions of H*(K(Z/p⊕Z/p, 2p−1); F_p)",
        "cohomology of K(Z/p⊕Z/p, 2p−1)",
        want.join(" "),
        dims.join(" "),
    ));
    match homology_dual(&z) {
        Ok(h) => {
            let shown = |i: u32| h.get(&i).map(|g| g.to_string()).unwrap_or_default();
            out.push(CheckRecord::compare(
                &format!("H_{}(K; Z) from the universal coefficient dual", 4 * p - 3),
                "homology of K",
                format!("Z/{p} ⊕ Z/{p}"),
                shown(4 * p - 3),
            ));
        }
        Err(e) => out.push(CheckRecord::new("homology dual", "homology of K", "table", "error", vec![e.to_string()])),
    }
    match z.full_group(4 * p - 2) {
        Err(EmError::PrimeToPUnknown { .. }) => {}
        other => out.push(CheckRecord::new(
            "prime-to-p part is reported unknown",
            "table consistency",
            "PrimeToPUnknown",
            format!("{other:?}"),
            Vec::new(),
        )),
    }
    Ok(())
}

fn steenrod(params: &SuiteParams, out: Out) -> Result<(), String> {
    let p = params.p;
    let a = SteenrodAlgebra::new(p).map_err(err)?;
    let s = sphere(p);
    let sphere_cap = params.max_degree.unwrap_or(if p == 3 { 14 } else { 4 * p - 2 });
    let rs = minimal_resolution(&a, &s, sphere_cap, sphere_cap as usize, ResolveOptions::default()).map_err(err)?;
    let anchor = "Adams chart of the sphere";
    out.push(CheckRecord::compare("sphere resolution is minimal", anchor, true, rs.check_minimal()));
    let exact = rs.check_exactness(&s);
    out.push(CheckRecord::new(
        "sphere resolution is exact",
        anchor,
        "exact",
        if exact.is_ok() { "exact" } else { "not exact" },
        exact.err().map(|e| vec![e.to_string()]).unwrap_or_default(),
    ));
    let chart = rs.chart();
    let tower: Vec<String> = (0..=sphere_cap as usize)
        .filter(|&n| chart.dim(n, n as u32) != 1)
        .map(|n| format!("filtration {n}: dim {}", chart.dim(n, n as u32)))
        .collect();
    out.push(CheckRecord::new("tower in stem 0", anchor, "dim 1 in every filtration", if tower.is_empty() { "dim 1 in every filtration" } else { "gaps" }, tower));
    let limit = i64::from(4 * p - 4);
    let off: Vec<String> = chart
        .by_stem()
        .into_iter()
        .filter(|&(_, st, _)| st != 0 && st <= limit)
        .map(|(n, st, d)| format!("(filtration {n}, stem {st}, dim {d})"))
        .collect();
    out.push(CheckRecord::compare(
        &format!("chart off the tower through stem {limit}"),
        anchor,
        format!("(filtration 1, stem {}, dim 1) (filtration 2, stem {}, dim 1)", 2 * p - 3, 4 * p - 5),
        off.join(" "),
    ));
    let first = rs.gens.get(1).and_then(|g| g.iter().position(|&t| t == 2 * p - 2));
    out.push(CheckRecord::compare(
        "boundary of the stem 2p−3 generator",
        anchor,
        "P¹(ι_0)",
        first.map(|i| rs.describe_boundary(&s, 1, i)).unwrap_or_else(|| "missing".into()),
    ));

    let cap = 4 * p - 3;
    let md = thom_module(ThomKind::Dt(1), p, cap);
    let rd = minimal_resolution(&a, &md, cap, 3, ResolveOptions::default()).map_err(err)?;
    let anchor = "Thom module of the normal class";
    if p == 3 {
        out.push(CheckRecord::compare(
            "module generators (filtration 0 internal degrees)",
            anchor,
            "[0, 1, 3, 9]",
            format!("{:?}", rd.gens[0]),
        ));
    }
    out.push(CheckRecord::compare("Thom module resolution is minimal", anchor, true, rd.check_minimal()));
    let exact = rd.check_exactness(&md);
    out.push(CheckRecord::new(
        "Thom module resolution is exact",
        anchor,
        "exact",
        if exact.is_ok() { "exact" } else { "not exact" },
        exact.err().map(|e| vec![e.to_string()]).unwrap_or_default(),
    ));
    for kind in [ThomKind::Dt(1), ThomKind::Ht(1), ThomKind::S1] {
        let m = thom_module(kind, p, cap);
        let r = m.check_adem(&a);
        out.push(CheckRecord::new(
            format!("Adem relations hold on the {kind:?} Thom module"),
            anchor,
            "ok",
            if matches!(r, Ok(n) if n > 0) { "ok" } else { "failed" },
            r.err().map(|e| vec![e.to_string()]).unwrap_or_default(),
        ));
    }
    let rs_small = minimal_resolution(&a, &s, cap, 3, ResolveOptions::default()).map_err(err)?;
    let f = ModuleMap::bottom_cell(&md, &s);
    let lift = lift_chain_map(&a, &f, &rd, &s, &rs_small).map_err(err)?;
    let anchor = "injectivity on the Adams E_2 term";
    out.push(CheckRecord::compare(
        &format!("lifted bottom-cell map is nonzero on Ext at (2, {cap})"),
        anchor,
        true,
        lift.is_nonzero_on_ext(&rd, &rs_small, 2, cap),
    ));
    let v = permanent_cycle_check(&rd, i64::from(4 * p - 5), 2);
    // only incoming differentials could kill the class; the verdict text rides along
    out.push(CheckRecord::new(
        format!("no Adams differential reaches the stem {} class", 4 * p - 5),
        anchor,
        "class present, no incoming source",
        format!(
            "class {}, {}",
            if v.class_present { "present" } else { "absent" },
            if v.incoming.is_empty() { "no incoming source" } else { "incoming sources" }
        ),
        v.incoming.iter().map(|x| format!("{x:?}")).collect(),
    ));
    out.push(CheckRecord::compare(
        &format!("permanent-cycle verdict at stem {}", 4 * p - 5),
        anchor,
        true,
        v.verdict.starts_with("no possible differential"),
    ));
    out.push(CheckRecord::compare(
        &format!("Thom module Ext at filtration 0, internal degree {}", 4 * p - 5),
        anchor,
        0,
        rd.count(0, 4 * p - 5),
    ));
    if p == 3 {
        let ms = thom_module(ThomKind::S1, 3, 12);
        let rm = minimal_resolution(&a, &ms, 12, 3, ResolveOptions::default()).map_err(err)?;
        let rs12 = minimal_resolution(&a, &s, 12, 3, ResolveOptions::default()).map_err(err)?;
        let lift = lift_chain_map(&a, &ModuleMap::bottom_cell(&ms, &s), &rm, &s, &rs12).map_err(err)?;
        out.push(CheckRecord::compare(
            "circle Thom module maps onto the sphere's stem-10 class",
            "circle case at p = 3",
            true,
            rs12.count(2, 12) == 1 && lift.is_nonzero_on_ext(&rm, &rs12, 2, 12),
        ));
    }
    Ok(())
}

fn oliver(params: &SuiteParams, out: Out) -> Result<(), String> {
    let p = params.p;
    let anchor = "class group order of the extraspecial group";
    let rep = oliver_order(p).map_err(err)?;
    out.push(CheckRecord::compare("order of the Oliver summand", anchor, u64::from(p * p), rep.order));
    let ones: Vec<String> = rep.non_central_factors.iter().filter(|f| f.as_str() != "1").cloned().collect();
    out.push(CheckRecord::new(
        "each non-central cyclic class contributes factor 1",
        anchor,
        "1",
        if ones.is_empty() { "1" } else { "not 1" },
        ones,
    ));
    out.push(CheckRecord::compare(
        "number of non-central cyclic classes",
        anchor,
        p + 1,
        rep.non_central_factors.len(),
    ));
    let g = ExtraspecialGroup::new(p).map_err(err)?;
    let census = cyclic_subgroup_census(&g);
    let big: Vec<String> = census.iter().filter(|r| r.order > p as usize).map(|r| format!("{:?}", r.generator)).collect();
    out.push(CheckRecord::new("no cyclic subgroup of order p²", anchor, "none", if big.is_empty() { "none" } else { "found" }, big));
    out.push(CheckRecord::compare("product of factors", anchor, (p as u64).pow(4), &rep.product));
    let p3 = (p as u64).pow(3).to_string();
    let (trivial, centre) = (rep.trivial_factor.clone(), rep.center_factor.clone());
    if trivial == p3 && centre == p.to_string() {
        out.push(CheckRecord::discrepancy(
            "attribution of the trivial and central factors",
            anchor,
            format!("trivial {p}, centre {p3}"),
            format!("trivial {trivial}, centre {centre}"),
            Vec::new(),
        ));
    } else {
        out.push(CheckRecord::compare("trivial and central factors", anchor, format!("trivial {p3}, centre {p}"), format!("trivial {trivial}, centre {centre}")));
    }
    Ok(())
}

fn gl2(params: &SuiteParams, out: Out) -> Result<(), String> {
    let p = params.p;
    let anchor = "transfer surjectivity in degree 2p−1";
    let group = gl2_elements(p);
    out.push(CheckRecord::compare("order of GL2(F_p)", anchor, gl2_order(p), group.len()));
    let module = GL2Module::new(p, p);
    let seed_text = format!("beta^{p} - beta*alpha^{}", p - 1);
    let seed = module.parse(&seed_text).ok_or_else(|| format!("cannot parse {seed_text}"))?;
    out.push(CheckRecord::compare(
        &format!("span of {seed_text} under GL2"),
        anchor,
        p + 1,
        crate::finite_groups::span_under(&module, &group, &[seed]),
    ));
    let twist: Vec<Vec<u32>> = [format!("alpha^{p}"), format!("beta^{p}")]
        .iter()
        .filter_map(|s| module.parse(s))
        .collect();
    out.push(CheckRecord::compare(
        "span of the p-th powers (Frobenius twist)",
        anchor,
        2,
        crate::finite_groups::span_under(&module, &group, &twist),
    ));
    let dim = module.dim();
    let samples: Vec<_> = group
        .iter()
        .step_by(group.len() / 40 + 1)
        .flat_map(|&x| group.iter().step_by(group.len() / 12 + 1).flat_map(move |&y| (0..dim).map(move |i| (i, x, y))))
        .collect();
    out.push(CheckRecord::compare("action is a homomorphism on sampled pairs", anchor, true, module.is_homomorphism_on(&samples)));
    Ok(())
}

fn construct3(params: &SuiteParams, out: Out) -> Result<(), String> {
    let eps = &params.eps;
    if !(eps > &Rational::zero() && eps < &Rational::one()) {
        return Err(format!("epsilon {eps} outside (0, 1)"));
    }
    let rep = crate::construction::run(eps, params.numeric_points, params.seed).map_err(err)?;
    out.extend(rep.checks);
    Ok(())
}

/// Writes every ring and Eilenberg–MacLane table for the given primes.
pub fn write_tables(dir: &Path, primes: &[u32]) -> Result<Vec<PathBuf>, String> {
    let mut written = crate::group_rings::table_io::write_data_dir(dir, primes).map_err(err)?;
    for &p in primes {
        for (space, coeffs) in crate::em_space::TABULATED {
            let path = crate::em_space::table_path(dir, space, p, coeffs);
            let table = k_table(space, p, coeffs).map_err(err)?;
            std::fs::write(&path, table.to_text()).map_err(err)?;
            written.push(path);
        }
    }
    Ok(written)
}

/// Compares table files in `dir` with the built-in tables: each file must parse back to the
/// same table and re-serialize to the same bytes.
pub fn check_tables(dir: &Path, primes: &[u32]) -> Vec<CheckRecord> {
    use crate::group_rings::table_io::{read_table, table_path, write_table};
    use crate::group_rings::{build_ring, RingId};
    let anchor = "shipped table files";
    let mut out = Vec::new();
    let mut record = |path: &Path, result: Result<(), String>| {
        let name = format!("{} matches the built-in table", path.file_name().map(|f| f.to_string_lossy()).unwrap_or_default());
        out.push(match result {
            Ok(()) => CheckRecord::compare(&name, anchor, "identical", "identical"),
            Err(e) => CheckRecord::new(name, anchor, "identical", "different", vec![e]),
        });
    };
    for &p in primes {
        for kind in [RingKind::BS1, RingKind::BHt, RingKind::BGt, RingKind::BDt] {
            for coeffs in [Coefficients::Integral, Coefficients::ModP] {
                let path = table_path(dir, RingId::new(kind, p, coeffs));
                let result = std::fs::read_to_string(&path).map_err(err).and_then(|text| {
                    let ring = read_table(&text).map_err(err)?;
                    let built = build_ring(kind, p, coeffs);
                    if ring != built {
                        return Err("parsed table differs from the built ring".into());
                    }
                    if write_table(&ring) != text {
                        return Err("re-serialized bytes differ from the file".into());
                    }
                    Ok(())
                });
                record(&path, result);
            }
        }
        for (space, coeffs) in crate::em_space::TABULATED {
            let path = crate::em_space::table_path(dir, space, p, coeffs);
            let result = std::fs::read_to_string(&path).map_err(err).and_then(|text| {
                let table = EMTable::from_text(&text).map_err(err)?;
                if table != k_table(space, p, coeffs).map_err(err)? {
                    return Err("parsed table differs from the built table".into());
                }
                if table.to_text() != text {
                    return Err("re-serialized bytes differ from the file".into());
                }
                Ok(())
            });
            record(&path, result);
        }
    }
    out
}

//! The four 3-dimensional representations, the conjugating matrix P and the gluing
//! matrices, with the identities they are meant to satisfy.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::mat3::Mat3;
use super::sym::{Conjugate, ScaledScalar, SymScalar, EPS, Z1, Z1B, Z2, Z2B, Z3, Z3B, ZC};
use super::ConstructionError;
use crate::exact::CycScalar;
use crate::report::CheckRecord;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rep {
    Phi,
    Psi0,
    Psi1,
    Psi2,
}

impl Rep {
    pub fn psi(m: u32) -> Rep {
        match m {
            0 => Rep::Psi0,
            1 => Rep::Psi1,
            _ => Rep::Psi2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Gen {
    A,
    B,
    /// The circle element, carried as the symbol z.
    Z,
}

/// A word in a, b, z and their inverses, stored as (generator, power) letters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupWord(pub Vec<(Gen, i32)>);

impl GroupWord {
    /// aⁱbʲ.
    pub fn ab(i: u32, j: u32) -> Self {
        GroupWord(vec![(Gen::A, i as i32), (Gen::B, j as i32)])
    }

    /// Parses words like `"a^2 b z"`, `"a b a^-1 b^-1"` or `"ab2"`.
    pub fn parse(s: &str) -> Result<Self, ConstructionError> {
        let mut out = Vec::new();
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut i = 0;
        while i < chars.len() {
            let g = match chars[i] {
                'a' => Gen::A,
                'b' => Gen::B,
                'z' => Gen::Z,
                _ => return Err(ConstructionError::BadWord(s.to_string())),
            };
            i += 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
            }
            let start = i;
            if i < chars.len() && chars[i] == '-' {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let e = if text.is_empty() {
                1
            } else {
                text.parse().map_err(|_| ConstructionError::BadWord(s.to_string()))?
            };
            out.push((g, e));
        }
        Ok(GroupWord(out))
    }
}

pub fn xi(k: i64) -> SymScalar {
    SymScalar::xi_pow(k)
}

fn diag_xi(k: [i64; 3]) -> Mat3<SymScalar> {
    Mat3::diag(k.map(xi))
}

/// Matrix of a single generator.
pub fn generator_matrix(rep: Rep, g: Gen) -> Mat3<SymScalar> {
    match (rep, g) {
        (Rep::Phi, Gen::A) => Mat3::from_fn(|r, c| if c == (r + 1) % 3 { SymScalar::one() } else { SymScalar::zero() }),
        (Rep::Phi, Gen::B) => diag_xi([0, 1, 2]),
        (Rep::Phi, Gen::Z) => Mat3::identity().scale(&SymScalar::var(ZC)),
        (_, Gen::A) => diag_xi([1, 1, 1]),
        (Rep::Psi0, Gen::B) => diag_xi([1, 1, 0]),
        (Rep::Psi1, Gen::B) => diag_xi([1, 2, 2]),
        (Rep::Psi2, Gen::B) => diag_xi([2, 0, 0]),
        (_, Gen::Z) => Mat3::identity(),
    }
}

/// Product of generator matrices along the word; inverses are adjoints (all generators
/// are unitary, and z̄ = z⁻¹ under the rules).
pub fn rep_matrix(rep: Rep, w: &GroupWord) -> Mat3<SymScalar> {
    let mut acc = Mat3::identity();
    for &(g, e) in &w.0 {
        let m = generator_matrix(rep, g);
        let step = if e < 0 { m.adjoint() } else { m };
        acc = acc.mul(&step.pow(e.unsigned_abs()));
    }
    acc
}

/// √3·P.
pub fn p_scaled() -> Mat3<SymScalar> {
    let k = [[0, 1, 0], [0, 0, 1], [1, 0, 0]];
    Mat3::from_fn(|r, c| xi(k[r][c]))
}

fn rational(n: i64, d: i64) -> SymScalar {
    SymScalar::constant(CycScalar::from_rational(Rational::new(BigInt::from(n), BigInt::from(d))))
}

/// Checks P·P† = I and the two conjugation identities, all with P = (√3·P)/√3 so every
/// comparison is against 3 times the target.
pub fn verify_p_conjugation() -> Vec<CheckRecord> {
    let p = p_scaled();
    let pa = p.adjoint();
    let three = SymScalar::int(3);
    let phi = |w: &str| rep_matrix(Rep::Phi, &GroupWord::parse(w).expect("fixed word"));
    let unit = p.mul(&pa).sub(&Mat3::identity().scale(&three));
    let conj_a = p.mul(&phi("a")).mul(&pa).sub(&phi("a").scale(&three));
    let conj_b = p.mul(&phi("b")).mul(&pa).sub(&phi("a^2 b").scale(&three));
    let rec = |name: &str, expected: &str, r: Mat3<SymScalar>| {
        let computed = if r.is_zero() { expected.to_string() } else { "nonzero residual".into() };
        CheckRecord::new(name, "P-conjugation", expected, computed, r.residual())
    };
    vec![
        rec("P unitary", "P P^† = I", unit),
        rec("P fixes phi(a)", "P phi(a) P^-1 = phi(a)", conj_a),
        rec("P sends phi(b) to phi(a^2 b)", "P phi(b) P^-1 = phi(a^2 b)", conj_b),
    ]
}

/// Which arrangement of the nontrivial 2×2 block to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BlockForm {
    /// [[z̄₁z₂, −z₁z̄₃], [z̄₁z₃, z₁z̄₂]]
    Printed,
    /// [[z̄₁z₂, z̄₁z₃], [−z₁z̄₃, z₁z̄₂]]
    Transposed,
}

/// The unnormalized 2×2 block.
pub fn z_block(form: BlockForm) -> [[SymScalar; 2]; 2] {
    let v = SymScalar::var;
    let b = [
        [v(Z1B) * v(Z2), -(v(Z1) * v(Z3B))],
        [v(Z1B) * v(Z3), v(Z1) * v(Z2B)],
    ];
    match form {
        BlockForm::Printed => b,
        BlockForm::Transposed => [[b[0][0].clone(), b[1][0].clone()], [b[0][1].clone(), b[1][1].clone()]],
    }
}

/// Gluing matrix for the m-th piece: the block sits in the lower-right corner for m = 1
/// and the upper-left for m = 2. With `scope_whole` the prefactor multiplies every entry
/// as displayed; otherwise only the block.
pub fn build_z_with(m: u32, form: BlockForm, scope_whole: bool) -> Mat3<ScaledScalar> {
    let block = z_block(form);
    let off = if m == 1 { 1 } else { 0 };
    let lone = if m == 1 { 0 } else { 2 };
    Mat3::from_fn(|r, c| {
        if r == lone || c == lone {
            let x = if r == c { SymScalar::one() } else { SymScalar::zero() };
            ScaledScalar::new(u32::from(scope_whole), x)
        } else {
            ScaledScalar::new(1, block[r - off][c - off].clone())
        }
    })
}

/// The block form that makes the b-equivariance exact for each piece.
pub fn standard_form(m: u32) -> BlockForm {
    if m == 1 {
        BlockForm::Transposed
    } else {
        BlockForm::Printed
    }
}

pub fn build_z(m: u32) -> Mat3<ScaledScalar> {
    build_z_with(m, standard_form(m), false)
}

fn scaled(m: &Mat3<SymScalar>) -> Mat3<ScaledScalar> {
    m.map(|x| ScaledScalar::plain(x.clone()))
}

/// Z·Z† = I and det Z = 1 under the rules.
pub fn su3_check(m: u32, z: &Mat3<ScaledScalar>) -> Vec<CheckRecord> {
    let unit = z.mul(&z.adjoint()).sub(&Mat3::identity());
    let det = z.det();
    let det_res = det.clone() - ScaledScalar::one();
    vec![
        CheckRecord::new(
            format!("Z{m} unitary"),
            "gluing matrix in SU(3)",
            "Z Z^† = I",
            if unit.is_zero() { "Z Z^† = I".to_string() } else { "nonzero residual".into() },
            unit.residual(),
        ),
        CheckRecord::new(
            format!("Z{m} determinant"),
            "gluing matrix in SU(3)",
            "1",
            det.to_string(),
            if det_res.is_zero() { Vec::new() } else { vec![det_res.to_string()] },
        ),
    ]
}

/// B·B† for the unnormalized block, which should be ε(1−ε)·I₂.
pub fn block_gram(form: BlockForm) -> [[SymScalar; 2]; 2] {
    let b = z_block(form);
    std::array::from_fn(|r| {
        std::array::from_fn(|c| (0..2).fold(SymScalar::zero(), |acc, k| acc + b[r][k].clone() * b[c][k].conj()))
    })
}

pub fn eps_q() -> SymScalar {
    SymScalar::var(EPS) * (SymScalar::one() - SymScalar::var(EPS))
}

/// How g moves a boundary point P^{m−1}φ(aᵏ)w: it lands on P^{m−1}φ(a^{k_out})·D·w with D
/// diagonal.
#[derive(Debug, Clone)]
pub struct BasePointMove {
    pub k_out: u32,
    pub scaling: [SymScalar; 3],
}

/// φ(a)^{−k′}·Q⁻¹φ(g)Q·φ(a)ᵏ with Q = P^{m−1}.
pub fn transported(g: Gen, m: u32, k: u32, k_out: u32) -> Mat3<SymScalar> {
    let q = p_scaled().pow(m - 1);
    let norm = rational(1, 3i64.pow(m - 1));
    let a = generator_matrix(Rep::Phi, Gen::A);
    a.pow((3 - k_out % 3) % 3)
        .mul(&q.adjoint().scale(&norm))
        .mul(&generator_matrix(Rep::Phi, g))
        .mul(&q)
        .mul(&a.pow(k))
}

/// Finds the exponent k′ making the transported matrix diagonal.
pub fn base_point_move(g: Gen, m: u32, k: u32) -> Option<BasePointMove> {
    (0..3).find_map(|k_out| {
        let t = transported(g, m, k, k_out);
        t.is_diagonal().then(|| BasePointMove {
            k_out,
            scaling: std::array::from_fn(|i| t.e[i][i].clone()),
        })
    })
}

/// Z(w′)·ψ₀(g) − ψₘ(g)·Z(w) for every k ∈ {0,1,2}; returns the first nonzero residual.
pub fn equivariance_residual(g: Gen, m: u32, form: BlockForm) -> Result<Vec<String>, ConstructionError> {
    let z = build_z_with(m, form, false);
    let psi0 = scaled(&generator_matrix(Rep::Psi0, g));
    let psim = scaled(&generator_matrix(Rep::psi(m), g));
    for k in 0..3 {
        let mv = base_point_move(g, m, k).ok_or(ConstructionError::NoBasePoint { m, k })?;
        let moved = z.map(|x| {
            let mut out = ScaledScalar::zero();
            for (e, c) in x.parts() {
                out = out + ScaledScalar::new(*e, c.scale_coordinates(&mv.scaling));
            }
            out
        });
        let r = moved.mul(&psi0).sub(&psim.mul(&z));
        if !r.is_zero() {
            let mut out = vec![format!("k = {k}")];
            out.extend(r.residual());
            return Ok(out);
        }
    }
    Ok(Vec::new())
}

pub fn gen_name(g: Gen) -> &'static str {
    match g {
        Gen::A => "a",
        Gen::B => "b",
        Gen::Z => "z",
    }
}

pub fn verify_alpha_equivariance(g: Gen, m: u32) -> Result<CheckRecord, ConstructionError> {
    let res = equivariance_residual(g, m, standard_form(m))?;
    let computed = if res.is_empty() { "0" } else { "nonzero" };
    Ok(CheckRecord::new(
        format!("alpha equivariant under {} (m = {m})", gen_name(g)),
        "boundary gluing equivariance",
        "0",
        computed,
        res,
    ))
}

/// Relations of the presentation in each representation.
pub fn verify_relations() -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let all = [Rep::Phi, Rep::Psi0, Rep::Psi1, Rep::Psi2];
    for rep in all {
        let relations: [(&str, Mat3<SymScalar>); 5] = [
            ("a^3", Mat3::identity()),
            ("b^3", Mat3::identity()),
            ("a z a^-1 z^-1", Mat3::identity()),
            ("b z b^-1 z^-1", Mat3::identity()),
            (
                "a b a^-1 b^-1",
                if rep == Rep::Phi { Mat3::identity().scale(&xi(1)) } else { Mat3::identity() },
            ),
        ];
        for (w, want) in relations {
            let r = rep_matrix(rep, &GroupWord::parse(w).expect("fixed word")).sub(&want);
            let expected = if want == Mat3::identity() { "I" } else { "ξ I" };
            out.push(CheckRecord::new(
                format!("{rep:?}({w})"),
                "presentation of the circle extension",
                expected,
                if r.is_zero() { expected.to_string() } else { "nonzero residual".into() },
                r.residual(),
            ));
        }
    }
    let psi_z = rep_matrix(Rep::Psi1, &GroupWord::parse("z").expect("fixed word")).sub(&Mat3::identity());
    out.push(CheckRecord::new("Psi1(z)", "pulled back from the finite quotient", "I", if psi_z.is_zero() { "I" } else { "nonzero" }, psi_z.residual()));
    out
}

/// Records where the displayed formulas differ from what makes the identities exact.
pub fn recorded_discrepancies() -> Result<Vec<CheckRecord>, ConstructionError> {
    let mut out = Vec::new();
    let printed = equivariance_residual(Gen::B, 1, BlockForm::Printed)?;
    out.push(CheckRecord::discrepancy(
        "Z1 block as displayed",
        "boundary gluing equivariance",
        "b-equivariance exact with the displayed block",
        if printed.is_empty() { "exact" } else { "fails; transposed block is exact" },
        printed,
    ));
    let shifted = transported(Gen::B, 2, 0, 2);
    out.push(CheckRecord::discrepancy(
        "base-point exponent for m = 2",
        "boundary gluing equivariance",
        "k + 2",
        match base_point_move(Gen::B, 2, 0) {
            Some(mv) => format!("k + {}", mv.k_out),
            None => "none".into(),
        },
        if shifted.is_diagonal() { Vec::new() } else { vec!["exponent k + 2 leaves a non-diagonal transport".into()] },
    ));
    let whole = build_z_with(1, standard_form(1), true);
    out.push(CheckRecord::discrepancy(
        "prefactor on the whole matrix",
        "gluing matrix in SU(3)",
        "det = 1",
        format!("det = {}", whole.det()),
        Vec::new(),
    ));
    Ok(out)
}

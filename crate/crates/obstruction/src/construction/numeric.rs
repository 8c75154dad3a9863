//! Floating-point cross-check of the symbolic identities at random boundary points.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::mat3::Mat3;
use super::reps::{build_z, generator_matrix, p_scaled, Gen, Rep};
use super::sym::{ScaledScalar, SymScalar};

type CMat = Mat3<Complex64>;

#[derive(Debug, Clone, Copy)]
pub struct Point {
    pub w: [Complex64; 3],
    pub z: Complex64,
    pub eps: f64,
}

impl Point {
    /// z on the circle, |z₂|² + |z₃|² = ε, |z₁|² = 1 − ε, all phases uniform.
    pub fn random(rng: &mut impl Rng, eps: f64) -> Self {
        let phase = |rng: &mut dyn rand::RngCore| Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI));
        let split: f64 = rng.gen_range(0.0..PI / 2.0);
        let z1 = phase(rng) * (1.0 - eps).sqrt();
        let z2 = phase(rng) * eps.sqrt() * split.cos();
        let z3 = phase(rng) * eps.sqrt() * split.sin();
        Point {
            w: [z1, z2, z3],
            z: phase(rng),
            eps,
        }
    }

    fn eval_sym(&self, m: &Mat3<SymScalar>) -> CMat {
        Mat3::from_fn(|r, c| m.e[r][c].eval(self.w[0], self.w[1], self.w[2], self.z, self.eps))
    }

    fn eval_scaled(&self, m: &Mat3<ScaledScalar>, at: &[Complex64; 3]) -> CMat {
        Mat3::from_fn(|r, c| m.e[r][c].eval(at[0], at[1], at[2], self.z, self.eps))
    }
}

fn apply(m: &CMat, v: &[Complex64; 3]) -> [Complex64; 3] {
    std::array::from_fn(|r| (0..3).map(|c| m.e[r][c] * v[c]).sum())
}

fn max_abs(m: &CMat) -> f64 {
    m.e.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
}

fn adjoint(m: &CMat) -> CMat {
    Mat3::from_fn(|r, c| m.e[c][r].conj())
}

#[derive(Debug, Clone, Serialize)]
pub struct NumericReport {
    pub points: usize,
    pub eps: f64,
    pub tolerance: f64,
    pub max_residual: BTreeMap<String, f64>,
    pub passed: bool,
}

/// Writes gx as Q·φ(a)^{k′}·w′ with w′ on the boundary torus by trying each k′ and keeping
/// the one whose tail mass equals ε.
fn locate(x: &[Complex64; 3], q_inv: &CMat, a: &CMat, eps: f64) -> Option<[Complex64; 3]> {
    let y = apply(q_inv, x);
    let a_inv = adjoint(a);
    let mut best: Option<(f64, [Complex64; 3])> = None;
    let mut cur = y;
    for _ in 0..3 {
        let tail = cur[1].norm_sqr() + cur[2].norm_sqr();
        let gap = (tail - eps).abs();
        if best.map_or(true, |(g, _)| gap < g) {
            best = Some((gap, cur));
        }
        cur = apply(&a_inv, &cur);
    }
    best.filter(|(g, _)| *g < 1e-9).map(|(_, v)| v)
}

pub fn numeric_cross_check(eps: f64, points: usize, seed: u64) -> NumericReport {
    let tolerance = 1e-10;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: BTreeMap<String, f64> = BTreeMap::new();
    let mut bump = |name: &str, v: f64| {
        let e = worst.entry(name.to_string()).or_insert(0.0);
        *e = e.max(v);
    };
    let root3 = 3f64.sqrt();
    let z_mats = [build_z(1), build_z(2)];
    for _ in 0..points {
        let pt = Point::random(&mut rng, eps);
        let phi = |g| pt.eval_sym(&generator_matrix(Rep::Phi, g));
        let psi = |m: u32, g| pt.eval_sym(&generator_matrix(Rep::psi(m), g));
        let p = pt.eval_sym(&p_scaled()).scale(&Complex64::new(1.0 / root3, 0.0));
        let id = CMat::identity();
        let (a, b) = (phi(Gen::A), phi(Gen::B));
        bump("P unitary", max_abs(&p.mul(&adjoint(&p)).sub(&id)));
        bump("P fixes phi(a)", max_abs(&p.mul(&a).mul(&adjoint(&p)).sub(&a)));
        bump("P sends phi(b) to phi(a^2 b)", max_abs(&p.mul(&b).mul(&adjoint(&p)).sub(&a.mul(&a).mul(&b))));
        let comm = a.mul(&b).mul(&adjoint(&a)).mul(&adjoint(&b));
        let xi = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        bump("phi commutator", max_abs(&comm.sub(&id.scale(&xi))));
        for m in 1..=2u32 {
            let zm = &z_mats[m as usize - 1];
            let here = pt.eval_scaled(zm, &pt.w);
            bump(&format!("Z{m} unitary"), max_abs(&here.mul(&adjoint(&here)).sub(&id)));
            bump(&format!("Z{m} determinant"), (here.det() - Complex64::one()).norm());
            let q = if m == 1 { id.clone() } else { p.clone() };
            for g in [Gen::A, Gen::B, Gen::Z] {
                for k in 0..3 {
                    let start = apply(&q.mul(&a.pow(k)), &pt.w);
                    let moved = apply(&phi(g), &start);
                    let name = format!("alpha equivariant under {} (m = {m})", super::reps::gen_name(g));
                    let Some(w2) = locate(&moved, &adjoint(&q), &a, eps) else {
                        bump(&name, f64::INFINITY);
                        continue;
                    };
                    let lhs = pt.eval_scaled(zm, &w2).mul(&psi(0, g));
                    let rhs = psi(m, g).mul(&here);
                    bump(&name, max_abs(&lhs.sub(&rhs)));
                }
            }
        }
    }
    let passed = points > 0 && worst.values().all(|&v| v <= tolerance);
    NumericReport {
        points,
        eps,
        tolerance,
        max_residual: worst,
        passed,
    }
}

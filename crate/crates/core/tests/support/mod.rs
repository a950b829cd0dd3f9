//! Shared oracles and generators for the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use bipb::model_io::{icosphere, precompute_elements, Element, ElementSet};
use bipb::Vec3;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit<R: Rng>(rng: &mut R) -> Vec3 {
    loop {
        let v = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v / n;
        }
    }
}

/// Screened Green's function written out independently of the library.
fn green(x: &Vec3, y: &Vec3, kappa: f64) -> f64 {
    let r = (x - y).norm();
    (-kappa * r).exp() / (4.0 * PI * r)
}

fn green_complex(x: [Complex64; 3], y: &Vec3, kappa: f64) -> Complex64 {
    let d: Vec<Complex64> = (0..3).map(|i| x[i] - y[i]).collect();
    let r = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    (-kappa * r).exp() / (4.0 * PI * r)
}

/// Central difference of `G(x, y + t ny)` in `t`.
pub fn dg_dny(x: &Vec3, y: &Vec3, ny: &Vec3, kappa: f64) -> f64 {
    let h = 1e-5 * (x - y).norm();
    (green(x, &(y + ny * h), kappa) - green(x, &(y - ny * h), kappa)) / (2.0 * h)
}

/// Central difference of `G(x + t nx, y)` in `t`.
pub fn dg_dnx(x: &Vec3, nx: &Vec3, y: &Vec3, kappa: f64) -> f64 {
    let h = 1e-5 * (x - y).norm();
    (green(&(x + nx * h), y, kappa) - green(&(x - nx * h), y, kappa)) / (2.0 * h)
}

/// Mixed derivative: complex step along `nx`, central difference along `ny`.
///
/// Nesting two real central differences loses about six digits to
/// cancellation; the complex step is free of it, which leaves the outer
/// difference error near 1e-10.
pub fn d2g_dnx_dny(x: &Vec3, nx: &Vec3, y: &Vec3, ny: &Vec3, kappa: f64) -> f64 {
    let r = (x - y).norm();
    let hc = 1e-30 * r;
    let h = 1e-5 * r;
    let xc: [Complex64; 3] = std::array::from_fn(|i| Complex64::new(x[i], hc * nx[i]));
    let dx = |y: Vec3| green_complex(xc, &y, kappa).im / hc;
    (dx(y + ny * h) - dx(y - ny * h)) / (2.0 * h)
}

/// Kernels assembled from finite-difference derivatives, with the magnitude
/// of the terms each kernel combines (for relative comparisons).
pub struct FdKernels {
    pub k: [f64; 4],
    pub scale: [f64; 4],
}

pub fn fd_kernels(x: &Vec3, nx: &Vec3, y: &Vec3, ny: &Vec3, kappa: f64, eps: f64) -> FdKernels {
    let (g0, gk) = (green(x, y, 0.0), green(x, y, kappa));
    let (a0, ak) = (dg_dny(x, y, ny, 0.0), dg_dny(x, y, ny, kappa));
    let (b0, bk) = (dg_dnx(x, nx, y, 0.0), dg_dnx(x, nx, y, kappa));
    let (c0, ck) = (d2g_dnx_dny(x, nx, y, ny, 0.0), d2g_dnx_dny(x, nx, y, ny, kappa));
    FdKernels {
        k: [g0 - gk, eps * ak - a0, b0 - bk / eps, ck - c0],
        scale: [g0, (eps * ak).abs() + a0.abs(), b0.abs() + (bk / eps).abs(), ck.abs() + c0.abs()],
    }
}

/// Random target/source pair with separation in `[0.5, 10]`.
pub fn random_pair<R: Rng>(rng: &mut R) -> (Vec3, Vec3, Vec3, Vec3) {
    let x = Vec3::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
    let r = rng.gen_range(0.5..10.0);
    let y = x + unit(rng) * r;
    (x, unit(rng), y, unit(rng))
}

/// `n` unrelated elements at random positions, pairwise at least 0.05 apart.
pub fn random_soup<R: Rng>(rng: &mut R, n: usize) -> ElementSet {
    let mut elements: Vec<Element> = Vec::with_capacity(n);
    while elements.len() < n {
        let c = Vec3::new(rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0));
        if elements.iter().all(|e| (e.centroid - c).norm() > 0.05) {
            elements.push(Element { centroid: c, normal: unit(rng), area: rng.gen_range(0.01..1.0) });
        }
    }
    ElementSet::new(elements).unwrap()
}

/// Icosphere with jittered vertices and a random radius and center.
pub fn jittered_sphere<R: Rng>(rng: &mut R, level: u32) -> ElementSet {
    let radius = rng.gen_range(2.0..8.0);
    let center = Vec3::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
    let mut mesh = icosphere(radius, center, level).unwrap();
    for v in mesh.vertices.iter_mut() {
        *v += unit(rng) * (0.05 * radius * rng.gen::<f64>());
    }
    precompute_elements(&mesh).unwrap().0
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// Adaptive Simpson quadrature on `[a, b]`.
pub fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn step(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

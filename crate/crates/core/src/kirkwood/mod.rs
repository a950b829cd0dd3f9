//! Series solution for point charges inside a dielectric sphere surrounded
//! by an ionic solvent.
//!
//! Inside the sphere the potential is the Coulomb field of the charges plus
//! a regular reaction field. Expanding both about the center and matching
//! potential and flux at `r = a` order by order gives, for a charge `q` at
//! distance `s` from the center,
//!
//! ```text
//! φ_reac(x) = q/(4π ε1 a) Σ_n R_n (r s / a²)^n P_n(cos γ)
//! R_n       = (ε1 (n+1) + ε2 g_n) / (ε1 n - ε2 g_n),   g_n = z k_n'(z)/k_n(z), z = κa
//! ```
//!
//! where `γ` is the angle between `x` and the charge as seen from the
//! center. Only pairwise angles appear, so the Legendre addition theorem
//! replaces the spherical harmonics throughout.

pub mod bessel;

use crate::kernels::PbParams;
use crate::model_io::ChargeSet;
use crate::{Error, Result, Vec3};

use bessel::{k_log_derivatives, legendre};

const FOUR_PI: f64 = 4.0 * std::f64::consts::PI;

/// Field-evaluation series are cut when the geometric bound on the
/// remainder drops below this fraction of the leading term.
const FIELD_TRUNCATION: f64 = 1e-17;
const MAX_FIELD_TERMS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sphere {
    pub radius: f64,
    pub center: Vec3,
}

impl Sphere {
    pub fn new(radius: f64, center: Vec3) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Domain(format!("sphere radius must be positive, got {}", radius)));
        }
        Ok(Self { radius, center })
    }

    /// Radial projection of `x` onto the surface.
    pub fn project(&self, x: &Vec3) -> Vec3 {
        let d = x - self.center;
        self.center + d * (self.radius / d.norm())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KirkwoodOptions {
    /// Largest energy truncation order accepted.
    pub max_terms: usize,
    /// Required bound on the energy tail relative to the energy.
    pub rel_tol: f64,
}

impl Default for KirkwoodOptions {
    fn default() -> Self {
        Self { max_terms: 100, rel_tol: 1e-8 }
    }
}

#[derive(Debug, Clone, Copy)]
struct Source {
    /// Offset from the sphere center.
    offset: Vec3,
    distance: f64,
    charge: f64,
}

/// Truncated series solution for one sphere and charge configuration.
#[derive(Debug, Clone)]
pub struct KirkwoodExpansion {
    sphere: Sphere,
    params: PbParams,
    sources: Vec<Source>,
    /// Energy truncation order `L` (terms `0..=L`).
    n_terms: usize,
    /// `R_n` for every order needed by energies and surface fields.
    reaction: Vec<f64>,
    log_derivative: Vec<f64>,
    energy_terms: Vec<f64>,
    tail: f64,
}

impl KirkwoodExpansion {
    pub fn sphere(&self) -> Sphere {
        self.sphere
    }

    pub fn n_terms(&self) -> usize {
        self.n_terms
    }

    /// Upper bound on the energy contributions beyond order `L` (kcal/mol).
    pub fn tail_estimate(&self) -> f64 {
        self.tail
    }

    /// `R_n`, the reaction coefficient of order `n` in units of the Coulomb
    /// coefficient.
    pub fn reaction_coefficient(&self, n: usize) -> f64 {
        self.reaction[n]
    }
}

fn reaction_coefficients(n_max: usize, params: &PbParams, radius: f64) -> (Vec<f64>, Vec<f64>) {
    let g = k_log_derivatives(n_max, params.kappa * radius);
    let r = g
        .iter()
        .enumerate()
        .map(|(n, &gn)| {
            let n = n as f64;
            (params.eps1 * (n + 1.0) + params.eps2 * gn) / (params.eps1 * n - params.eps2 * gn)
        })
        .collect();
    (r, g)
}

fn sources(sphere: &Sphere, charges: &ChargeSet) -> Result<Vec<Source>> {
    charges
        .iter()
        .enumerate()
        .map(|(k, atom)| {
            let offset = atom.position - sphere.center;
            let distance = offset.norm();
            if distance.is_nan() || distance >= sphere.radius {
                return Err(Error::Domain(format!(
                    "charge {} at distance {} is not inside the sphere of radius {}",
                    k, distance, sphere.radius
                )));
            }
            Ok(Source { offset, distance, charge: atom.charge })
        })
        .collect()
}

fn cos_angle(a: &Vec3, la: f64, b: &Vec3, lb: f64) -> f64 {
    if la == 0.0 || lb == 0.0 {
        1.0
    } else {
        (a.dot(b) / (la * lb)).clamp(-1.0, 1.0)
    }
}

/// Per-order energy contributions `E_n` in kcal/mol for `n = 0..=n_max`.
fn energy_terms(sources: &[Source], reaction: &[f64], sphere: &Sphere, params: &PbParams, n_max: usize) -> Vec<f64> {
    let a = sphere.radius;
    let mut terms = vec![0.0; n_max + 1];
    for si in sources {
        for sj in sources {
            let c = cos_angle(&si.offset, si.distance, &sj.offset, sj.distance);
            let p = legendre(n_max, c);
            let t = si.distance * sj.distance / (a * a);
            let qq = si.charge * sj.charge;
            let mut tn = 1.0;
            for n in 0..=n_max {
                terms[n] += qq * tn * p[n];
                tn *= t;
            }
        }
    }
    // ½ C 4π Σ q φ_reac with φ_reac carrying 1/(4π ε1 a)
    let prefactor = 0.5 * params.energy_constant / (params.eps1 * a);
    for (n, e) in terms.iter_mut().enumerate() {
        *e *= prefactor * reaction[n];
    }
    terms
}

fn tail_bound(sources: &[Source], sphere: &Sphere, params: &PbParams, order: usize) -> f64 {
    let r_max = sources.iter().map(|s| s.distance).fold(0.0, f64::max);
    let rho = (r_max / sphere.radius).powi(2);
    if rho == 0.0 {
        return 0.0;
    }
    let q_abs: f64 = sources.iter().map(|s| s.charge.abs()).sum();
    let r_sup = (params.eps1 + params.eps2) / params.eps1.min(params.eps2);
    0.5 * params.energy_constant / (params.eps1 * sphere.radius) * q_abs * q_abs * r_sup * rho.powi(order as i32 + 1)
        / (1.0 - rho)
}

fn field_terms(sources: &[Source], sphere: &Sphere) -> usize {
    let t = sources.iter().map(|s| s.distance).fold(0.0, f64::max) / sphere.radius;
    if t == 0.0 {
        return 0;
    }
    let mut n = 0;
    let mut tn = 1.0;
    // the derivative series carries an extra factor n
    while (n as f64 + 1.0) * tn / (1.0 - t).powi(2) > FIELD_TRUNCATION && n < MAX_FIELD_TERMS {
        n += 1;
        tn *= t;
    }
    n
}

fn assemble(
    sphere: Sphere,
    charges: &ChargeSet,
    params: &PbParams,
    n_terms: Option<usize>,
    options: &KirkwoodOptions,
) -> Result<KirkwoodExpansion> {
    params.validate()?;
    let sources = sources(&sphere, charges)?;
    let cap = n_terms.unwrap_or(options.max_terms);
    let coeff_len = cap.max(field_terms(&sources, &sphere));
    let (reaction, log_derivative) = reaction_coefficients(coeff_len, params, sphere.radius);
    let energy_terms = energy_terms(&sources, &reaction, &sphere, params, cap);

    let accept = |order: usize| {
        let energy: f64 = energy_terms[..=order].iter().sum();
        let tail = tail_bound(&sources, &sphere, params, order);
        (tail == 0.0 || tail <= options.rel_tol * energy.abs(), tail, energy)
    };

    let (order, tail) = match n_terms {
        Some(order) => {
            let (ok, tail, energy) = accept(order);
            if !ok {
                return Err(Error::SeriesNotConverged { terms: order, tail, target: options.rel_tol * energy.abs() });
            }
            (order, tail)
        }
        None => {
            let found = (0..=cap).map(|l| (l, accept(l))).find(|(_, (ok, _, _))| *ok);
            match found {
                Some((order, (_, tail, _))) => (order, tail),
                None => {
                    let (_, tail, energy) = accept(cap);
                    return Err(Error::SeriesNotConverged { terms: cap, tail, target: options.rel_tol * energy.abs() });
                }
            }
        }
    };

    Ok(KirkwoodExpansion {
        sphere,
        params: *params,
        sources,
        n_terms: order,
        reaction,
        log_derivative,
        energy_terms,
        tail,
    })
}

/// Expansion truncated at order `n_terms`; refused when the tail bound
/// exceeds `options.rel_tol` of the energy.
pub fn build_expansion(
    sphere: Sphere,
    charges: &ChargeSet,
    params: &PbParams,
    n_terms: usize,
    options: &KirkwoodOptions,
) -> Result<KirkwoodExpansion> {
    assemble(sphere, charges, params, Some(n_terms), options)
}

/// Expansion with the smallest order whose tail bound meets `options.rel_tol`.
pub fn build_adaptive(
    sphere: Sphere,
    charges: &ChargeSet,
    params: &PbParams,
    options: &KirkwoodOptions,
) -> Result<KirkwoodExpansion> {
    assemble(sphere, charges, params, None, options)
}

/// `½ Σ_k Q_k φ_reac(x_k)` in kcal/mol from the truncated series.
pub fn analytic_energy(expansion: &KirkwoodExpansion) -> f64 {
    expansion.energy_terms[..=expansion.n_terms].iter().sum()
}

impl KirkwoodExpansion {
    fn check_on_sphere(&self, x: &Vec3) -> Result<Vec3> {
        let d = x - self.sphere.center;
        let a = self.sphere.radius;
        if (d.norm() - a).abs() >= 1e-9 * a {
            return Err(Error::Domain(format!("point at distance {} is not on the sphere of radius {}", d.norm(), a)));
        }
        Ok(d)
    }

    /// Sum over charges and orders of `coef(n) (s/a)^n P_n(cos γ)` times `q`.
    fn surface_series(&self, d: &Vec3, coef: impl Fn(usize) -> f64) -> f64 {
        let a = self.sphere.radius;
        let n_max = self.reaction.len() - 1;
        let mut total = 0.0;
        for s in &self.sources {
            let c = cos_angle(d, a, &s.offset, s.distance);
            let p = legendre(n_max, c);
            let t = s.distance / a;
            let mut tn = 1.0;
            let mut sum = 0.0;
            for (n, pn) in p.iter().enumerate() {
                sum += coef(n) * tn * pn;
                tn *= t;
                if tn == 0.0 {
                    break;
                }
            }
            total += s.charge * sum;
        }
        total
    }

    /// Reaction potential at an interior point (internal units, `1/(4π)`
    /// included), using all stored orders.
    pub fn reaction_potential_at(&self, x: &Vec3) -> Result<f64> {
        let a = self.sphere.radius;
        let d = x - self.sphere.center;
        let r = d.norm();
        if r > a {
            return Err(Error::Domain(format!("point at distance {} is outside the sphere", r)));
        }
        let n_max = self.reaction.len() - 1;
        let mut total = 0.0;
        for s in &self.sources {
            let c = cos_angle(&d, r, &s.offset, s.distance);
            let p = legendre(n_max, c);
            let t = r * s.distance / (a * a);
            let mut tn = 1.0;
            let mut sum = 0.0;
            for (n, pn) in p.iter().enumerate() {
                sum += self.reaction[n] * tn * pn;
                tn *= t;
                if tn == 0.0 {
                    break;
                }
            }
            total += s.charge * sum;
        }
        Ok(total / (FOUR_PI * self.params.eps1 * a))
    }

    /// Interior-limit potential and outward normal derivative at a point on
    /// the sphere, in the same units as the boundary unknowns.
    pub fn surface_field(&self, x: &Vec3) -> Result<(f64, f64)> {
        let d = self.check_on_sphere(x)?;
        let a = self.sphere.radius;
        let normal = d / d.norm();
        let eps1 = self.params.eps1;

        let mut coulomb = 0.0;
        let mut coulomb_flux = 0.0;
        for s in &self.sources {
            let rel = d - s.offset;
            let r = rel.norm();
            coulomb += s.charge / (FOUR_PI * eps1 * r);
            coulomb_flux -= s.charge * rel.dot(&normal) / (FOUR_PI * eps1 * r * r * r);
        }
        let reaction = self.surface_series(&d, |n| self.reaction[n]) / (FOUR_PI * eps1 * a);
        let reaction_flux = self.surface_series(&d, |n| n as f64 * self.reaction[n]) / (FOUR_PI * eps1 * a * a);
        Ok((coulomb + reaction, coulomb_flux + reaction_flux))
    }

    /// Exterior-limit potential and outward normal derivative at a point on
    /// the sphere, evaluated purely from the series.
    pub fn exterior_surface_field(&self, x: &Vec3) -> Result<(f64, f64)> {
        let d = self.check_on_sphere(x)?;
        let a = self.sphere.radius;
        let eps1 = self.params.eps1;
        let phi = self.surface_series(&d, |n| 1.0 + self.reaction[n]) / (FOUR_PI * eps1 * a);
        let flux =
            self.surface_series(&d, |n| (1.0 + self.reaction[n]) * self.log_derivative[n]) / (FOUR_PI * eps1 * a * a);
        Ok((phi, flux))
    }

    /// Exact surface potential at the radial projection of every point.
    pub fn projected_potentials<'a>(&self, points: impl IntoIterator<Item = &'a Vec3>) -> Result<Vec<f64>> {
        points.into_iter().map(|p| self.surface_field(&self.sphere.project(p)).map(|(phi, _)| phi)).collect()
    }
}

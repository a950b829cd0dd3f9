//! Coulomb and screened-Coulomb fundamental solutions and the four
//! interaction kernels of the second-kind boundary integral formulation.
//!
//! With `G0 = 1/(4πr)`, `Gk = exp(-κr)/(4πr)` and `ε = ε_solvent/ε_solute`:
//!
//! ```text
//! K1 = G0 - Gk
//! K2 = ε ∂Gk/∂ν_y - ∂G0/∂ν_y
//! K3 = ∂G0/∂ν_x - (1/ε) ∂Gk/∂ν_x
//! K4 = ∂²Gk/∂ν_x∂ν_y - ∂²G0/∂ν_x∂ν_y
//! ```
//!
//! Every screened quantity is the Coulomb one times a factor that is exactly
//! 1 when κ = 0, and each kernel is evaluated as `coulomb * (factor - 1)`.
//! With κ = 0 and ε = 1 all four kernels are therefore exactly zero.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::model_io::ChargeSet;
use crate::{Error, Result, Vec3};

pub const INV_4PI: f64 = 1.0 / (4.0 * PI);

/// e²/(4πε₀ Å) in kcal/mol.
pub const ENERGY_CONSTANT: f64 = 332.0716;

/// κ² [Å⁻²] per (mol/L of ionic strength) for a solvent of unit dielectric
/// constant at room temperature: `κ² = KAPPA_SQ_PER_MOLAR * I / ε_solvent`.
pub const KAPPA_SQ_PER_MOLAR: f64 = 8.430325455;

/// Separations below this (Å) are treated as coincident points.
pub const SINGULAR_DISTANCE: f64 = 1e-10;

/// Dielectric and ionic parameters of the solute/solvent system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PbParams {
    /// Solute (interior) dielectric constant.
    pub eps1: f64,
    /// Solvent (exterior) dielectric constant.
    pub eps2: f64,
    /// Inverse Debye length κ in Å⁻¹.
    pub kappa: f64,
    /// kcal·mol⁻¹·Å·e⁻² conversion used for energies.
    pub energy_constant: f64,
}

impl Default for PbParams {
    /// ε1 = 1, ε2 = 80, 0.15 M ionic strength.
    fn default() -> Self {
        Self::from_ionic_strength(1.0, 80.0, 0.15).expect("default parameters are valid")
    }
}

impl PbParams {
    pub fn new(eps1: f64, eps2: f64, kappa: f64) -> Result<Self> {
        let params = Self { eps1, eps2, kappa, energy_constant: ENERGY_CONSTANT };
        params.validate()?;
        Ok(params)
    }

    /// κ from ionic strength `molar` (mol/L).
    pub fn from_ionic_strength(eps1: f64, eps2: f64, molar: f64) -> Result<Self> {
        if !(molar >= 0.0 && molar.is_finite()) {
            return Err(Error::Config(format!("ionic strength must be non-negative, got {}", molar)));
        }
        if eps2.is_nan() || eps2 <= 0.0 {
            return Err(Error::Config(format!("eps2 must be positive, got {}", eps2)));
        }
        Self::new(eps1, eps2, kappa_from_ionic_strength(molar, eps2))
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(self.eps1) || !ok(self.eps2) {
            return Err(Error::Config(format!(
                "dielectric constants must be positive (eps1 = {}, eps2 = {})",
                self.eps1, self.eps2
            )));
        }
        if !(self.kappa >= 0.0 && self.kappa.is_finite()) {
            return Err(Error::Config(format!("kappa must be non-negative, got {}", self.kappa)));
        }
        Ok(())
    }

    /// `ε = ε2/ε1`, the ratio entering the kernels and the diagonal terms.
    pub fn eps(&self) -> f64 {
        self.eps2 / self.eps1
    }

    /// Diagonal coefficient of the potential rows, `(1 + ε)/2`.
    pub fn potential_diagonal(&self) -> f64 {
        0.5 * (1.0 + self.eps())
    }

    /// Diagonal coefficient of the normal-derivative rows, `(1 + 1/ε)/2`.
    pub fn flux_diagonal(&self) -> f64 {
        0.5 * (1.0 + 1.0 / self.eps())
    }

    /// Same dielectrics with a different κ.
    pub fn with_kappa(self, kappa: f64) -> Self {
        Self { kappa, ..self }
    }
}

pub fn kappa_from_ionic_strength(molar: f64, eps2: f64) -> f64 {
    (KAPPA_SQ_PER_MOLAR * molar / eps2).sqrt()
}

/// The four kernel values for one target/source pair.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KernelBlock {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub k4: f64,
}

fn separation(x: &Vec3, y: &Vec3) -> Result<f64> {
    let r = (x - y).norm();
    if r < SINGULAR_DISTANCE {
        return Err(Error::Singularity(format!(
            "points ({}, {}, {}) and ({}, {}, {}) coincide",
            x.x, x.y, x.z, y.x, y.y, y.z
        )));
    }
    Ok(r)
}

/// Coulomb potential `1/(4π|x-y|)`.
pub fn g0(x: &Vec3, y: &Vec3) -> Result<f64> {
    Ok(INV_4PI / separation(x, y)?)
}

/// Screened Coulomb potential `exp(-κ|x-y|)/(4π|x-y|)`.
pub fn gk(x: &Vec3, y: &Vec3, kappa: f64) -> Result<f64> {
    let r = separation(x, y)?;
    Ok((-kappa * r).exp() * (INV_4PI / r))
}

/// All four kernels at target `x` (normal `nx`) and source `y` (normal `ny`).
pub fn kernel_block(x: &Vec3, nx: &Vec3, y: &Vec3, ny: &Vec3, params: &PbParams) -> Result<KernelBlock> {
    separation(x, y)?;
    Ok(block(&(x - y), nx, ny, params.kappa, params.eps()))
}

/// Kernel block from the offset `d = x - y`. The caller guarantees `d != 0`.
#[inline(always)]
pub(crate) fn block(d: &Vec3, nx: &Vec3, ny: &Vec3, kappa: f64, eps: f64) -> KernelBlock {
    let r2 = d.norm_squared();
    let r = r2.sqrt();
    let inv_r2 = 1.0 / r2;
    let g0 = INV_4PI / r;
    let kr = kappa * r;
    let e = (-kr).exp();
    // ∂Gk/∂ν = p1 ∂G0/∂ν; the mixed derivative picks up p1 and p2
    let p1 = e * (1.0 + kr);
    let p2 = e * (3.0 + kr * (3.0 + kr));

    let dnx = d.dot(nx);
    let dny = d.dot(ny);
    let nxny = nx.dot(ny);

    let dg0_dny = g0 * dny * inv_r2;
    let dg0_dnx = -g0 * dnx * inv_r2;

    KernelBlock {
        k1: g0 * (1.0 - e),
        k2: dg0_dny * (eps * p1 - 1.0),
        k3: dg0_dnx * (1.0 - p1 / eps),
        k4: g0 * inv_r2 * ((p1 - 1.0) * nxny - (p2 - 3.0) * dnx * dny * inv_r2),
    }
}

/// `(K1, K2)` only, for evaluation at interior points that have no normal.
#[inline(always)]
pub(crate) fn single_and_double_layer(d: &Vec3, ny: &Vec3, kappa: f64, eps: f64) -> (f64, f64) {
    let r2 = d.norm_squared();
    let r = r2.sqrt();
    let g0 = INV_4PI / r;
    let kr = kappa * r;
    let e = (-kr).exp();
    let p1 = e * (1.0 + kr);
    (g0 * (1.0 - e), g0 * d.dot(ny) / r2 * (eps * p1 - 1.0))
}

/// Source terms at `x` with normal `nx`:
/// `s1 = Σ q_k G0(x, x_k) / ε1`, `s2 = Σ q_k ∂G0(x, x_k)/∂ν_x / ε1`,
/// summed in charge order.
pub fn source_terms(x: &Vec3, nx: &Vec3, charges: &ChargeSet, params: &PbParams) -> Result<(f64, f64)> {
    let mut s1 = 0.0;
    let mut s2 = 0.0;
    for (k, atom) in charges.iter().enumerate() {
        let d = x - atom.position;
        let r2 = d.norm_squared();
        if r2 < SINGULAR_DISTANCE * SINGULAR_DISTANCE {
            return Err(Error::Singularity(format!("charge {} lies on the evaluation point", k)));
        }
        let r = r2.sqrt();
        let g = INV_4PI / r;
        s1 += atom.charge * g;
        s2 -= atom.charge * g * d.dot(nx) / r2;
    }
    Ok((s1 / params.eps1, s2 / params.eps1))
}

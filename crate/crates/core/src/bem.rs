//! Discretized boundary integral operator with centroid collocation.
//!
//! Unknowns are `[φ1(x_1..x_N), ∂φ1/∂ν(x_1..x_N)]`. The operator is applied
//! matrix-free: every product recomputes all `N²` kernel blocks. Rows are
//! distributed over the current rayon pool; each row's sum over sources is
//! sequential in ascending source order, so results do not depend on the
//! number of workers. The self term `j == i` is omitted.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::gmres::LinearOperator;
use crate::kernels::{self, PbParams, SINGULAR_DISTANCE};
use crate::model_io::{ChargeSet, ElementSet};
use crate::{Error, Result};

/// Largest element count [`dense_matrix`] will assemble by default.
pub const DENSE_CAP: usize = 1000;

const MIN_ROWS_PER_TASK: usize = 16;

/// Surface unknowns: potential then normal derivative, one per element.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceSolution {
    values: Vec<f64>,
}

impl SurfaceSolution {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if !values.len().is_multiple_of(2) || values.is_empty() {
            return Err(Error::Contract { expected: values.len() + 1, actual: values.len() });
        }
        Ok(Self { values })
    }

    pub fn zeros(n: usize) -> Self {
        Self { values: vec![0.0; 2 * n] }
    }

    pub fn num_elements(&self) -> usize {
        self.values.len() / 2
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// φ1 at the centroids.
    pub fn potential(&self) -> &[f64] {
        &self.values[..self.num_elements()]
    }

    /// ∂φ1/∂ν at the centroids.
    pub fn flux(&self) -> &[f64] {
        &self.values[self.num_elements()..]
    }
}

/// Right-hand side `[S1(x_i); S2(x_i)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RhsVector {
    pub values: Vec<f64>,
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::Contract { expected, actual });
    }
    Ok(())
}

/// `out = A u`. Runs on the current rayon pool.
pub fn apply_operator(elements: &ElementSet, params: &PbParams, u: &[f64], out: &mut [f64]) -> Result<()> {
    let n = elements.len();
    check_len(2 * n, u.len())?;
    check_len(2 * n, out.len())?;

    let eps = params.eps();
    let kappa = params.kappa;
    let diag_pot = params.potential_diagonal();
    let diag_flux = params.flux_diagonal();
    let elems = elements.elements();
    let (phi, dphi) = u.split_at(n);
    let (top, bottom) = out.split_at_mut(n);

    top.par_iter_mut().zip(bottom.par_iter_mut()).enumerate().with_min_len(MIN_ROWS_PER_TASK).for_each(
        |(i, (row_pot, row_flux))| {
            let target = &elems[i];
            let mut sum_pot = 0.0;
            let mut sum_flux = 0.0;
            for (j, source) in elems.iter().enumerate() {
                if j == i {
                    continue;
                }
                let d = target.centroid - source.centroid;
                let k = kernels::block(&d, &target.normal, &source.normal, kappa, eps);
                sum_pot += source.area * (k.k1 * dphi[j] + k.k2 * phi[j]);
                sum_flux += source.area * (k.k3 * dphi[j] + k.k4 * phi[j]);
            }
            *row_pot = diag_pot * phi[i] - sum_pot;
            *row_flux = diag_flux * dphi[i] - sum_flux;
        },
    );
    Ok(())
}

/// The boundary operator as a [`LinearOperator`] for the Krylov solver.
#[derive(Debug, Clone, Copy)]
pub struct BemOperator<'a> {
    pub elements: &'a ElementSet,
    pub params: PbParams,
}

impl<'a> BemOperator<'a> {
    pub fn new(elements: &'a ElementSet, params: PbParams) -> Self {
        Self { elements, params }
    }
}

impl LinearOperator for BemOperator<'_> {
    fn dim(&self) -> usize {
        2 * self.elements.len()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        apply_operator(self.elements, &self.params, x, y).expect("vector lengths checked by the solver");
    }
}

/// Explicit `2N x 2N` matrix of the operator. Test oracle only; refuses
/// meshes with more than [`DENSE_CAP`] elements.
pub fn dense_matrix(elements: &ElementSet, params: &PbParams) -> Result<DMatrix<f64>> {
    dense_matrix_with_cap(elements, params, DENSE_CAP)
}

pub fn dense_matrix_with_cap(elements: &ElementSet, params: &PbParams, cap: usize) -> Result<DMatrix<f64>> {
    let n = elements.len();
    if n > cap {
        return Err(Error::DenseCapExceeded { n, cap });
    }
    let mut a = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        a[(i, i)] = params.potential_diagonal();
        a[(i + n, i + n)] = params.flux_diagonal();
    }
    for (i, t) in elements.iter().enumerate() {
        for (j, s) in elements.iter().enumerate() {
            if i == j {
                continue;
            }
            let k = kernels::kernel_block(&t.centroid, &t.normal, &s.centroid, &s.normal, params)?;
            a[(i, j)] = -s.area * k.k2;
            a[(i, j + n)] = -s.area * k.k1;
            a[(i + n, j)] = -s.area * k.k4;
            a[(i + n, j + n)] = -s.area * k.k3;
        }
    }
    Ok(a)
}

/// `b_i = S1(x_i)`, `b_{i+N} = S2(x_i)` at every centroid.
pub fn assemble_rhs(elements: &ElementSet, charges: &ChargeSet, params: &PbParams) -> Result<RhsVector> {
    let n = elements.len();
    let pairs: Vec<(f64, f64)> = elements
        .elements()
        .par_iter()
        .enumerate()
        .with_min_len(MIN_ROWS_PER_TASK)
        .map(|(i, e)| {
            kernels::source_terms(&e.centroid, &e.normal, charges, params).map_err(|err| match err {
                Error::Singularity(msg) => Error::Singularity(format!("element {}: {}", i, msg)),
                other => other,
            })
        })
        .collect::<Result<_>>()?;
    let mut values = vec![0.0; 2 * n];
    for (i, (s1, s2)) in pairs.into_iter().enumerate() {
        values[i] = s1;
        values[i + n] = s2;
    }
    Ok(RhsVector { values })
}

/// Reaction potential at every charge:
/// `Σ_j W_j [K1(x_k, x_j) ∂φ1/∂ν(x_j) + K2(x_k, x_j) φ1(x_j)]`.
pub fn reaction_potential(
    elements: &ElementSet,
    u: &SurfaceSolution,
    charges: &ChargeSet,
    params: &PbParams,
) -> Result<Vec<f64>> {
    check_len(elements.len(), u.num_elements())?;
    let eps = params.eps();
    let kappa = params.kappa;
    let phi = u.potential();
    let dphi = u.flux();
    charges
        .atoms()
        .par_iter()
        .enumerate()
        .map(|(k, atom)| {
            let mut sum = 0.0;
            for (j, e) in elements.iter().enumerate() {
                let d = atom.position - e.centroid;
                if d.norm_squared() < SINGULAR_DISTANCE * SINGULAR_DISTANCE {
                    return Err(Error::Singularity(format!("charge {} lies on the centroid of element {}", k, j)));
                }
                let (k1, k2) = kernels::single_and_double_layer(&d, &e.normal, kappa, eps);
                sum += e.area * (k1 * dphi[j] + k2 * phi[j]);
            }
            Ok(sum)
        })
        .collect()
}

/// `E = ½ Σ_k Q_k φ_reac(x_k)` converted to kcal/mol. Potentials carry the
/// `1/(4π)` of the Green's functions, so the conversion is `4π * 332.0716`.
pub fn solvation_energy(charges: &ChargeSet, phi_reac: &[f64], params: &PbParams) -> Result<f64> {
    check_len(charges.len(), phi_reac.len())?;
    let weighted: f64 = charges.iter().zip(phi_reac).map(|(a, p)| a.charge * p).sum();
    Ok(0.5 * params.energy_constant * 4.0 * std::f64::consts::PI * weighted)
}

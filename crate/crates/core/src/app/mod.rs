//! The solve pipeline as a library call: configuration in, report out.
//!
//! [`run_solve`] reads or generates the inputs, solves, and when the surface
//! is a generated sphere also compares against the series solution.
//! [`run_convergence_study`] repeats that over icosphere levels.

mod metrics;
mod output;
mod study;

pub use metrics::{convergence_order, error_metrics, richardson};
pub use output::{
    emit_report, emit_study, exit_code, OutputFormat, EXIT_INPUT, EXIT_NOT_CONVERGED, EXIT_OK, EXIT_SINGULAR,
    REPORT_COLUMNS, STUDY_COLUMNS,
};
pub use study::{run_convergence_study, StudyRow, StudyTable};

use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bem::{self, BemOperator, SurfaceSolution};
use crate::gmres::{gmres_solve, GmresOptions, SolveReport};
use crate::kernels::PbParams;
use crate::kirkwood::{self, KirkwoodOptions, Sphere};
use crate::model_io::{self, ChargeSet, ElementSet, MeshStats};
use crate::{Error, Result, Vec3, Workers};

pub const REPORT_SCHEMA: &str = "bipb.run/1";

#[derive(Debug, Clone, PartialEq)]
pub enum ChargeSpec {
    /// The nine-charge helical segment.
    Helix,
    /// One charge of the given magnitude at the sphere center.
    Central(f64),
    /// Charges read from a PQR file.
    Pqr(PathBuf),
}

impl std::str::FromStr for ChargeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "builtin:helix" => Ok(ChargeSpec::Helix),
            "builtin:center" => Ok(ChargeSpec::Central(1.0)),
            other if other.starts_with("builtin:") => {
                Err(Error::Config(format!("unknown builtin charge set {other:?}")))
            }
            path => Ok(ChargeSpec::Pqr(PathBuf::from(path))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InputSource {
    Files { pqr: PathBuf, vert: PathBuf, face: PathBuf },
    Sphere { radius: f64, center: Vec3, level: u32, charges: ChargeSpec },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: InputSource,
    pub params: PbParams,
    pub solver: GmresOptions,
    /// `None` reads `BIPB_WORKERS`, falling back to all cores.
    pub workers: Option<usize>,
}

impl RunConfig {
    /// Helix sphere of radius 4 at the origin with default physics.
    pub fn helix_sphere(level: u32) -> Self {
        Self {
            input: InputSource::Sphere { radius: 4.0, center: Vec3::zeros(), level, charges: ChargeSpec::Helix },
            params: PbParams::default(),
            solver: GmresOptions::default(),
            workers: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.solver.restart == 0 || self.solver.tol.is_nan() || self.solver.tol <= 0.0 {
            return Err(Error::Config("GMRES needs restart >= 1 and tol > 0".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("worker count must be at least 1".into()));
        }
        if let InputSource::Sphere { radius, .. } = self.input {
            Sphere::new(radius, Vec3::zeros())?;
        }
        Ok(())
    }

    fn workers(&self) -> Result<Workers> {
        match self.workers {
            Some(n) => Workers::new(n),
            None => Workers::from_env(),
        }
    }
}

/// Wall-clock seconds per phase.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub setup: f64,
    pub rhs: f64,
    pub solve: f64,
    pub energy: f64,
    pub oracle: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub n_elements: usize,
    pub n_charges: usize,
    /// Surface area in Å².
    pub total_area: f64,
    pub iterations: usize,
    pub restarts: usize,
    pub converged: bool,
    pub final_relative_residual: f64,
    pub residual_history: Vec<f64>,
    /// Solvation energy in kcal/mol.
    pub energy: f64,
    /// Relative L∞ surface potential error against the series solution.
    pub e_phi: Option<f64>,
    pub analytic_energy: Option<f64>,
    pub params: PbParams,
    pub solver: GmresOptions,
    pub workers: usize,
    pub mesh: MeshStats,
    pub timings: Timings,
    pub warnings: Vec<String>,
}

/// Everything a solve produces, before reporting.
#[derive(Debug, Clone)]
pub struct Solution {
    pub surface: SurfaceSolution,
    pub report: SolveReport,
    pub phi_reac: Vec<f64>,
    pub energy: f64,
}

/// Assemble, solve and post-process on the current rayon pool.
pub fn solve(
    elements: &ElementSet,
    charges: &ChargeSet,
    params: &PbParams,
    options: &GmresOptions,
) -> Result<Solution> {
    solve_timed(elements, charges, params, options, &mut Timings::default())
}

fn solve_timed(
    elements: &ElementSet,
    charges: &ChargeSet,
    params: &PbParams,
    options: &GmresOptions,
    timings: &mut Timings,
) -> Result<Solution> {
    let t = Instant::now();
    let rhs = bem::assemble_rhs(elements, charges, params)?;
    timings.rhs = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let op = BemOperator::new(elements, *params);
    let x0 = vec![0.0; rhs.values.len()];
    let (u, report) = gmres_solve(&op, &rhs.values, &x0, options)?;
    timings.solve = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let surface = SurfaceSolution::new(u)?;
    let phi_reac = bem::reaction_potential(elements, &surface, charges, params)?;
    let energy = bem::solvation_energy(charges, &phi_reac, params)?;
    timings.energy = t.elapsed().as_secs_f64();

    Ok(Solution { surface, report, phi_reac, energy })
}

struct Inputs {
    charges: ChargeSet,
    elements: ElementSet,
    stats: MeshStats,
    sphere: Option<Sphere>,
}

fn load(input: &InputSource) -> Result<Inputs> {
    let (charges, mesh, sphere) = match input {
        InputSource::Files { pqr, vert, face } => {
            let charges = model_io::read_pqr(pqr)?;
            let mesh = model_io::read_msms(vert, face)?;
            (charges, mesh, None)
        }
        InputSource::Sphere { radius, center, level, charges } => {
            let sphere = Sphere::new(*radius, *center)?;
            let charges = match charges {
                ChargeSpec::Helix => {
                    let helix = ChargeSet::helix();
                    ChargeSet::new(
                        helix.iter().map(|a| model_io::Atom { position: a.position + center, ..*a }).collect(),
                    )
                }
                ChargeSpec::Central(q) => ChargeSet::single(*center, *q),
                ChargeSpec::Pqr(path) => model_io::read_pqr(path)?,
            };
            (charges, model_io::icosphere(*radius, *center, *level)?, Some(sphere))
        }
    };
    let (elements, stats) = model_io::precompute_elements(&mesh)?;
    Ok(Inputs { charges, elements, stats, sphere })
}

fn mesh_warnings(stats: &MeshStats) -> Vec<String> {
    let mut out = Vec::new();
    if stats.degenerate_dropped > 0 {
        out.push(format!("{} degenerate triangles dropped", stats.degenerate_dropped));
    }
    if stats.euler_characteristic != 2 {
        out.push(format!(
            "Euler characteristic {} (V={}, E={}, F={}); surface is not a closed genus-0 mesh",
            stats.euler_characteristic,
            stats.num_vertices,
            stats.num_edges,
            stats.num_elements + stats.degenerate_dropped
        ));
    }
    if stats.normals_flipped > 0 {
        out.push(format!("{} face normals flipped to agree with vertex normals", stats.normals_flipped));
    }
    out
}

/// Run the full pipeline described by `config`.
///
/// A solve that exhausts `max_iters` still returns a report, with
/// `converged == false` and the residual history.
pub fn run_solve(config: &RunConfig) -> Result<RunReport> {
    config.validate()?;
    let workers = config.workers()?;
    workers.install(|| run_on_pool(config, workers.count()))
}

fn run_on_pool(config: &RunConfig, workers: usize) -> Result<RunReport> {
    let mut timings = Timings::default();
    let t = Instant::now();
    let inputs = load(&config.input)?;
    timings.setup = t.elapsed().as_secs_f64();
    let params = &config.params;

    let solution = solve_timed(&inputs.elements, &inputs.charges, params, &config.solver, &mut timings)?;
    let mut warnings = mesh_warnings(&inputs.stats);
    if !solution.report.converged {
        warnings.push(format!(
            "GMRES stopped after {} iterations at relative residual {:.3e}",
            solution.report.iterations, solution.report.final_relative_residual
        ));
    }

    let (e_phi, analytic_energy) = match inputs.sphere {
        Some(sphere) => {
            let t = Instant::now();
            let (e_phi, exact) = oracle(sphere, &inputs.charges, params, &inputs.elements, &solution.surface)?;
            timings.oracle = t.elapsed().as_secs_f64();
            (Some(e_phi), Some(exact))
        }
        None => (None, None),
    };

    Ok(RunReport {
        schema: REPORT_SCHEMA.to_string(),
        n_elements: inputs.elements.len(),
        n_charges: inputs.charges.len(),
        total_area: inputs.elements.total_area(),
        iterations: solution.report.iterations,
        restarts: solution.report.restarts,
        converged: solution.report.converged,
        final_relative_residual: solution.report.final_relative_residual,
        residual_history: solution.report.residual_history,
        energy: solution.energy,
        e_phi,
        analytic_energy,
        params: *params,
        solver: config.solver,
        workers,
        mesh: inputs.stats,
        timings,
        warnings,
    })
}

/// Surface potential error and exact energy from the series solution.
pub fn oracle(
    sphere: Sphere,
    charges: &ChargeSet,
    params: &PbParams,
    elements: &ElementSet,
    surface: &SurfaceSolution,
) -> Result<(f64, f64)> {
    let expansion = kirkwood::build_adaptive(sphere, charges, params, &KirkwoodOptions::default())?;
    let exact = expansion.projected_potentials(elements.iter().map(|e| &e.centroid))?;
    let e_phi = error_metrics(surface.potential(), &exact)?;
    Ok((e_phi, kirkwood::analytic_energy(&expansion)))
}

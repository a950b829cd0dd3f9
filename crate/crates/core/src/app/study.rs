use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{convergence_order, load, oracle, richardson, solve, InputSource, RunConfig};
use crate::kernels::PbParams;
use crate::{Error, Result};

pub const STUDY_SCHEMA: &str = "bipb.study/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyRow {
    pub level: u32,
    pub n_elements: usize,
    pub energy: f64,
    pub e_phi: f64,
    /// Order against the previous row, element count as the mesh measure.
    pub order: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyTable {
    pub schema: String,
    pub params: PbParams,
    pub analytic_energy: f64,
    /// Richardson extrapolation of the last two energies with the last
    /// observed order, when that order is positive.
    pub extrapolated_energy: Option<f64>,
    pub rows: Vec<StudyRow>,
}

/// Solve the sphere problem of `config` at every icosphere level in `levels`.
pub fn run_convergence_study(config: &RunConfig, levels: &[u32]) -> Result<StudyTable> {
    if levels.len() < 2 {
        return Err(Error::Config(format!("a convergence study needs at least 2 levels, got {}", levels.len())));
    }
    let InputSource::Sphere { radius, center, charges, .. } = &config.input else {
        return Err(Error::Config("a convergence study needs a sphere input for the exact solution".into()));
    };
    config.validate()?;
    let workers = config.workers()?;

    let mut rows: Vec<StudyRow> = Vec::with_capacity(levels.len());
    let mut analytic_energy = 0.0;
    for &level in levels {
        let t = Instant::now();
        let input = InputSource::Sphere { radius: *radius, center: *center, level, charges: charges.clone() };
        let (row, exact) = workers.install(|| -> Result<(StudyRow, f64)> {
            let inputs = load(&input)?;
            let solution = solve(&inputs.elements, &inputs.charges, &config.params, &config.solver)?;
            let sphere = inputs.sphere.expect("sphere input");
            let (e_phi, exact) = oracle(sphere, &inputs.charges, &config.params, &inputs.elements, &solution.surface)?;
            let row = StudyRow {
                level,
                n_elements: inputs.elements.len(),
                energy: solution.energy,
                e_phi,
                order: None,
                iterations: solution.report.iterations,
                converged: solution.report.converged,
                seconds: 0.0,
            };
            Ok((row, exact))
        })?;
        analytic_energy = exact;
        let order = match rows.last() {
            Some(prev) => {
                Some(convergence_order(prev.e_phi, row.e_phi, prev.n_elements as f64, row.n_elements as f64)?)
            }
            None => None,
        };
        log::info!("level {level}: N = {}, E = {:.4}, e_phi = {:.3e}", row.n_elements, row.energy, row.e_phi);
        rows.push(StudyRow { order, seconds: t.elapsed().as_secs_f64(), ..row });
    }

    let extrapolated_energy = match &rows[rows.len() - 2..] {
        [c, f] => {
            f.order.and_then(|p| richardson(c.energy, f.energy, f.n_elements as f64 / c.n_elements as f64, p).ok())
        }
        _ => None,
    };

    Ok(StudyTable {
        schema: STUDY_SCHEMA.to_string(),
        params: config.params,
        analytic_energy,
        extrapolated_energy,
        rows,
    })
}

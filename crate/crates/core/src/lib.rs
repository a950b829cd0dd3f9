//! Boundary integral solver for the linearized Poisson-Boltzmann equation.
//!
//! A solute is a set of point charges inside a closed triangulated surface.
//! The potential and its normal derivative on the surface are found from a
//! second-kind integral system, discretized by centroid collocation and
//! solved with restarted GMRES. Every operator application is a direct sum
//! over all element pairs, parallelized over target rows.
//!
//! The typical pipeline:
//!
//! ```no_run
//! use bipb::{bem, gmres, kernels::PbParams, model_io};
//!
//! let mesh = model_io::icosphere(4.0, bipb::Vec3::zeros(), 3).unwrap();
//! let (elements, _) = model_io::precompute_elements(&mesh).unwrap();
//! let charges = model_io::ChargeSet::helix();
//! let params = PbParams::default();
//!
//! let rhs = bem::assemble_rhs(&elements, &charges, &params).unwrap();
//! let op = bem::BemOperator::new(&elements, params);
//! let x0 = vec![0.0; rhs.values.len()];
//! let (u, report) = gmres::gmres_solve(&op, &rhs.values, &x0, &Default::default()).unwrap();
//! assert!(report.converged);
//!
//! let u = bem::SurfaceSolution::new(u).unwrap();
//! let phi = bem::reaction_potential(&elements, &u, &charges, &params).unwrap();
//! let energy = bem::solvation_energy(&charges, &phi, &params).unwrap();
//! println!("{energy:.2} kcal/mol");
//! ```

pub mod app;
pub mod bem;
mod error;
pub mod gmres;
pub mod kernels;
pub mod kirkwood;
pub mod model_io;
mod workers;

pub use error::{Error, Result};
pub use workers::Workers;

pub type Vec3 = nalgebra::Vector3<f64>;

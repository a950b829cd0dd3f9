//! The matrix-free operator against its explicit dense matrix, and GMRES
//! on both.

use bipb::bem::{apply_operator, assemble_rhs, dense_matrix, BemOperator};
use bipb::gmres::{gmres_solve, GmresOptions};
use bipb::kernels::PbParams;
use bipb::model_io::{icosphere, precompute_elements, ChargeSet};
use bipb::Vec3;

fn main() -> bipb::Result<()> {
    let (elements, _) = precompute_elements(&icosphere(4.0, Vec3::zeros(), 2)?)?;
    let params = PbParams::default();
    let n = 2 * elements.len();

    let a = dense_matrix(&elements, &params)?;
    let u: Vec<f64> = (0..n).map(|i| ((i * 7919) % 101) as f64 / 101.0 - 0.5).collect();
    let mut y = vec![0.0; n];
    apply_operator(&elements, &params, &u, &mut y)?;
    let dense = &a * nalgebra::DVector::from_column_slice(&u);
    let diff = y.iter().zip(dense.iter()).fold(0.0_f64, |m, (p, q)| m.max((p - q).abs()));
    println!("N={}  max |Au - A*u| / max |A*u| = {:.2e}", elements.len(), diff / dense.amax());

    let b = assemble_rhs(&elements, &ChargeSet::helix(), &params)?.values;
    let opts = GmresOptions { tol: 1e-8, ..Default::default() };
    let (x1, r1) = gmres_solve(&BemOperator::new(&elements, params), &b, &vec![0.0; n], &opts)?;
    let (x2, r2) = gmres_solve(&a, &b, &vec![0.0; n], &opts)?;
    let dx = x1.iter().zip(&x2).fold(0.0_f64, |m, (p, q)| m.max((p - q).abs()));
    println!("matrix-free: {} iterations, residual {:.2e}", r1.iterations, r1.final_relative_residual);
    println!("dense:       {} iterations, residual {:.2e}", r2.iterations, r2.final_relative_residual);
    println!("max solution difference {dx:.2e}");

    let cycles = r1.cycles();
    for (c, hist) in cycles.iter().enumerate() {
        println!("cycle {c}: {}", hist.iter().map(|r| format!("{r:.1e}")).collect::<Vec<_>>().join(" "));
    }
    Ok(())
}

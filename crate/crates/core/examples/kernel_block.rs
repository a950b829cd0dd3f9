//! The four interaction kernels between two surface points.

use bipb::kernels::{g0, gk, kernel_block, source_terms, PbParams};
use bipb::model_io::ChargeSet;
use bipb::Vec3;

fn main() -> bipb::Result<()> {
    let x = Vec3::new(0.0, 0.0, 4.0);
    let nx = Vec3::z();
    let y = Vec3::new(4.0, 0.0, 0.0);
    let ny = Vec3::x();

    let params = PbParams::default();
    println!("eps1={} eps2={} kappa={:.6} 1/A", params.eps1, params.eps2, params.kappa);
    println!("G0 = {:.6e}  Gk = {:.6e}", g0(&x, &y)?, gk(&x, &y, params.kappa)?);

    let k = kernel_block(&x, &nx, &y, &ny, &params)?;
    println!("K1..K4 = {:.6e} {:.6e} {:.6e} {:.6e}", k.k1, k.k2, k.k3, k.k4);

    // no screening and no dielectric jump: every kernel vanishes identically
    let flat = PbParams::new(1.0, 1.0, 0.0)?;
    let k = kernel_block(&x, &nx, &y, &ny, &flat)?;
    println!("kappa=0, eps1=eps2: {:?}", (k.k1, k.k2, k.k3, k.k4));

    let (s1, s2) = source_terms(&x, &nx, &ChargeSet::single(Vec3::zeros(), 1.0), &params)?;
    println!(
        "sources of a central unit charge at r=4: S1 = {s1:.6e} (1/16pi = {:.6e}), S2 = {s2:.6e}",
        1.0 / (16.0 * std::f64::consts::PI)
    );
    Ok(())
}

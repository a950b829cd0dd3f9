//! Series solution for charges in a dielectric sphere: energy versus
//! truncation order and the interface conditions on the surface.

use bipb::kernels::PbParams;
use bipb::kirkwood::{analytic_energy, build_adaptive, build_expansion, KirkwoodOptions, Sphere};
use bipb::model_io::ChargeSet;
use bipb::Vec3;

fn main() -> bipb::Result<()> {
    let sphere = Sphere::new(4.0, Vec3::zeros())?;
    let charges = ChargeSet::helix();
    let params = PbParams::default();
    let loose = KirkwoodOptions { rel_tol: f64::INFINITY, ..Default::default() };

    println!("{:>3} {:>14} {:>10}", "L", "E_sol", "tail");
    for l in [0, 1, 2, 4, 8, 12, 16, 24] {
        let e = build_expansion(sphere, &charges, &params, l, &loose)?;
        println!("{l:>3} {:>14.8} {:>10.2e}", analytic_energy(&e), e.tail_estimate());
    }

    let e = build_adaptive(sphere, &charges, &params, &KirkwoodOptions::default())?;
    println!("adaptive L = {}, E_sol = {:.6} kcal/mol", e.n_terms(), analytic_energy(&e));

    println!("\n{:>28} {:>12} {:>12} {:>12}", "surface point", "phi_in", "phi_out", "flux jump");
    for dir in [Vec3::z(), Vec3::new(1.0, 1.0, 0.0).normalize(), Vec3::new(-1.0, 0.5, -2.0).normalize()] {
        let x = dir * sphere.radius;
        let (phi1, dphi1) = e.surface_field(&x)?;
        let (phi2, dphi2) = e.exterior_surface_field(&x)?;
        println!(
            "({:7.3} {:7.3} {:7.3}) {phi1:>12.6e} {phi2:>12.6e} {:>12.2e}",
            x.x,
            x.y,
            x.z,
            (params.eps1 * dphi1 - params.eps2 * dphi2) / (params.eps1 * dphi1).abs()
        );
    }
    Ok(())
}

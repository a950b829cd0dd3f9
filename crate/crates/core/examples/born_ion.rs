//! A unit charge at the center of a 4 Å sphere against the Born energy.

use bipb::app::{self, ChargeSpec, InputSource, RunConfig};
use bipb::gmres::GmresOptions;
use bipb::kernels::PbParams;
use bipb::Vec3;

fn main() -> bipb::Result<()> {
    let params = PbParams::new(1.0, 80.0, 0.0)?;
    let born = 0.5 * params.energy_constant * (1.0 / params.eps2 - 1.0 / params.eps1) / 4.0;
    println!("Born energy {born:.4} kcal/mol");
    for level in 2..=4 {
        let config = RunConfig {
            input: InputSource::Sphere { radius: 4.0, center: Vec3::zeros(), level, charges: ChargeSpec::Central(1.0) },
            params,
            solver: GmresOptions::default(),
            workers: None,
        };
        let r = app::run_solve(&config)?;
        println!(
            "level {level}: N={:>5}  E_sol={:9.4}  rel.err={:.2}%  iterations={}",
            r.n_elements,
            r.energy,
            100.0 * (r.energy - born).abs() / born.abs(),
            r.iterations
        );
    }
    Ok(())
}

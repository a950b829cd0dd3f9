//! Matrix-vector throughput for several worker counts.
//!
//! ```text
//! cargo run --release --example thread_scaling -- [level]
//! ```

use std::time::Instant;

use bipb::bem::apply_operator;
use bipb::kernels::PbParams;
use bipb::model_io::{icosphere, precompute_elements};
use bipb::{Vec3, Workers};

fn main() -> bipb::Result<()> {
    let level = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let (elements, _) = precompute_elements(&icosphere(4.0, Vec3::zeros(), level)?)?;
    let params = PbParams::default();
    let n = 2 * elements.len();
    let u: Vec<f64> = (0..n).map(|i| (i as f64).sin()).collect();
    let cores = std::thread::available_parallelism().map_or(1, |c| c.get());
    println!("N = {} elements, {cores} cores available", elements.len());

    let mut reference: Option<(f64, Vec<f64>)> = None;
    for workers in [1, 2, 4, 8] {
        let pool = Workers::new(workers)?;
        let mut y = vec![0.0; n];
        let t = Instant::now();
        pool.install(|| apply_operator(&elements, &params, &u, &mut y))?;
        let secs = t.elapsed().as_secs_f64();
        let (base, first) = reference.get_or_insert_with(|| (secs, y.clone()));
        println!("{workers} workers: {secs:.3} s  speedup {:.2}  bitwise identical: {}", *base / secs, *first == y);
    }
    Ok(())
}

//! Icosphere refinement: element counts, Euler characteristic and area
//! converging to 4πr² from below.

use bipb::model_io::{icosphere, precompute_elements, write_msms};
use bipb::Vec3;

fn main() -> bipb::Result<()> {
    let radius = 4.0;
    let exact = 4.0 * std::f64::consts::PI * radius * radius;
    println!("{:>5} {:>8} {:>8} {:>6} {:>12} {:>10}", "level", "faces", "verts", "euler", "area", "deficit");
    for level in 0..=6 {
        let mesh = icosphere(radius, Vec3::zeros(), level)?;
        let (elements, stats) = precompute_elements(&mesh)?;
        let area = elements.total_area();
        println!(
            "{level:>5} {:>8} {:>8} {:>6} {area:>12.6} {:>10.2e}",
            stats.num_elements,
            stats.num_vertices,
            stats.euler_characteristic,
            (exact - area) / exact
        );
    }

    // the same surface in MSMS format, ready for --vert/--face
    let (vert, face) = write_msms(&icosphere(radius, Vec3::zeros(), 1)?);
    println!("\nlevel 1 as MSMS: {} vertex lines, {} face lines", vert.lines().count() - 3, face.lines().count() - 3);
    Ok(())
}

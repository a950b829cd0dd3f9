//! Read a PQR file and an MSMS surface, then print what the solver sees.
//!
//! ```text
//! cargo run --example parse_inputs -- [solute.pqr surface.vert surface.face]
//! ```
//! Without arguments the bundled tetrahedron fixture is used.

use std::path::PathBuf;

use bipb::model_io::{precompute_elements, read_msms, read_pqr};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let args: Vec<PathBuf> = std::env::args_os().skip(1).map(PathBuf::from).collect();
    let (pqr, vert, face) = match &args[..] {
        [p, v, f] => (p.clone(), v.clone(), f.clone()),
        [] => (fixtures.join("tetra.pqr"), fixtures.join("tetra.vert"), fixtures.join("tetra.face")),
        _ => return Err("expected three paths: PQR, .vert, .face".into()),
    };

    let charges = read_pqr(&pqr)?;
    println!("{}: {} atoms, net charge {:+.4}", pqr.display(), charges.len(), charges.total_charge());
    for (k, a) in charges.iter().enumerate().take(5) {
        println!(
            "  {k:>3}  ({:8.3} {:8.3} {:8.3})  q={:+.4}  r={:.3}",
            a.position.x, a.position.y, a.position.z, a.charge, a.radius
        );
    }

    let mesh = read_msms(&vert, &face)?;
    let (elements, stats) = precompute_elements(&mesh)?;
    println!(
        "surface: V={} E={} F={}  Euler={}  area={:.4} A^2",
        stats.num_vertices,
        stats.num_edges,
        mesh.num_faces(),
        stats.euler_characteristic,
        elements.total_area()
    );
    println!(
        "  element areas {:.3e}..{:.3e}, shortest edge {:.3e}, {} degenerate dropped, {} normals flipped",
        stats.min_area, stats.max_area, stats.min_edge, stats.degenerate_dropped, stats.normals_flipped
    );
    Ok(())
}

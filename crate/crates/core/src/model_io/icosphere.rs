use std::collections::HashMap;

use super::SurfaceMesh;
use crate::{Error, Result, Vec3};

const ICOSAHEDRON_FACES: [[usize; 3]; 20] = [
    [0, 11, 5],
    [0, 5, 1],
    [0, 1, 7],
    [0, 7, 10],
    [0, 10, 11],
    [1, 5, 9],
    [5, 11, 4],
    [11, 10, 2],
    [10, 7, 6],
    [7, 1, 8],
    [3, 9, 4],
    [3, 4, 2],
    [3, 2, 6],
    [3, 6, 8],
    [3, 8, 9],
    [4, 9, 5],
    [2, 4, 11],
    [6, 2, 10],
    [8, 6, 7],
    [9, 8, 1],
];

fn icosahedron_vertices() -> Vec<Vec3> {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    [
        [-1.0, t, 0.0],
        [1.0, t, 0.0],
        [-1.0, -t, 0.0],
        [1.0, -t, 0.0],
        [0.0, -1.0, t],
        [0.0, 1.0, t],
        [0.0, -1.0, -t],
        [0.0, 1.0, -t],
        [t, 0.0, -1.0],
        [t, 0.0, 1.0],
        [-t, 0.0, -1.0],
        [-t, 0.0, 1.0],
    ]
    .iter()
    .map(|p| Vec3::new(p[0], p[1], p[2]).normalize())
    .collect()
}

/// Regular icosahedron subdivided `level` times with every vertex projected
/// onto the sphere. Faces are wound counter-clockwise seen from outside and
/// the mesh carries exact outward vertex normals. `F = 20 * 4^level`.
pub fn icosphere(radius: f64, center: Vec3, level: u32) -> Result<SurfaceMesh> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Domain(format!("sphere radius must be positive, got {}", radius)));
    }
    if level > 10 {
        return Err(Error::Domain(format!("icosphere level {} is too large", level)));
    }

    // unit directions; scaled at the end
    let mut dirs = icosahedron_vertices();
    let mut faces: Vec<[usize; 3]> = ICOSAHEDRON_FACES.to_vec();

    for _ in 0..level {
        let mut midpoints: HashMap<(usize, usize), usize> = HashMap::with_capacity(faces.len() * 3 / 2);
        let mut next = Vec::with_capacity(faces.len() * 4);
        let mut midpoint = |a: usize, b: usize, dirs: &mut Vec<Vec3>| -> usize {
            *midpoints.entry((a.min(b), a.max(b))).or_insert_with(|| {
                dirs.push((dirs[a] + dirs[b]).normalize());
                dirs.len() - 1
            })
        };
        for &[a, b, c] in &faces {
            let ab = midpoint(a, b, &mut dirs);
            let bc = midpoint(b, c, &mut dirs);
            let ca = midpoint(c, a, &mut dirs);
            next.push([a, ab, ca]);
            next.push([b, bc, ab]);
            next.push([c, ca, bc]);
            next.push([ab, bc, ca]);
        }
        faces = next;
    }

    let vertices = dirs.iter().map(|d| center + d * radius).collect();
    SurfaceMesh::new(vertices, Some(dirs), faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_io::{precompute_elements, ElementSet};

    fn flat_area(mesh: &SurfaceMesh) -> f64 {
        // independent of precompute_elements
        mesh.faces
            .iter()
            .map(|f| {
                let (a, b, c) = (mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]);
                0.5 * (b - a).cross(&(c - a)).norm()
            })
            .sum()
    }

    #[test]
    fn level_zero_is_icosahedron() {
        let m = icosphere(1.0, Vec3::zeros(), 0).unwrap();
        assert_eq!(m.num_faces(), 20);
        assert_eq!(m.num_vertices(), 12);
        assert_eq!(m.num_edges(), 30);
        assert_eq!(m.euler_characteristic(), 2);
    }

    #[test]
    fn euler_preserved_through_level_six() {
        for level in 0..=6 {
            let m = icosphere(2.0, Vec3::new(1.0, -1.0, 0.5), level).unwrap();
            assert_eq!(m.num_faces(), 20 * 4usize.pow(level));
            assert_eq!(m.euler_characteristic(), 2, "level {level}");
        }
    }

    #[test]
    fn level_three_area_below_sphere() {
        let m = icosphere(4.0, Vec3::zeros(), 3).unwrap();
        assert_eq!(m.num_faces(), 1280);
        let sphere = 4.0 * std::f64::consts::PI * 16.0;
        let area = flat_area(&m);
        assert!(area < sphere);
        assert!(area > 0.99 * sphere, "area {area} vs {sphere}");
        let (elements, _): (ElementSet, _) = precompute_elements(&m).unwrap();
        assert!((elements.total_area() - area).abs() < 1e-9 * area);
    }

    #[test]
    fn area_increases_with_level() {
        let areas: Vec<f64> = (0..6).map(|l| flat_area(&icosphere(1.0, Vec3::zeros(), l).unwrap())).collect();
        assert!(areas.windows(2).all(|w| w[0] < w[1]));
        assert!(*areas.last().unwrap() < 4.0 * std::f64::consts::PI);
    }

    #[test]
    fn vertices_on_sphere_and_winding_outward() {
        let c = Vec3::new(0.3, 0.2, -0.1);
        let m = icosphere(4.0, c, 2).unwrap();
        for v in &m.vertices {
            assert!(((v - c).norm() - 4.0).abs() < 1e-12);
        }
        for f in &m.faces {
            let (a, b, d) = (m.vertices[f[0]], m.vertices[f[1]], m.vertices[f[2]]);
            let n = (b - a).cross(&(d - a));
            assert!(n.dot(&((a + b + d) / 3.0 - c)) > 0.0);
        }
    }

    #[test]
    fn rejects_bad_radius() {
        assert!(icosphere(0.0, Vec3::zeros(), 1).is_err());
        assert!(icosphere(-1.0, Vec3::zeros(), 1).is_err());
    }
}

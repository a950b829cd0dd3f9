use serde::{Deserialize, Serialize};

use super::SurfaceMesh;
use crate::{Error, Result, Vec3};

/// Faces with a smaller area (Å²) are dropped before element creation.
pub const DEGENERATE_AREA: f64 = 1e-12;

/// One flat triangle reduced to its collocation data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Element {
    pub centroid: Vec3,
    /// Outward unit normal.
    pub normal: Vec3,
    pub area: f64,
}

/// The discretized interface: one [`Element`] per retained face.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementSet {
    elements: Vec<Element>,
    total_area: f64,
}

impl ElementSet {
    pub fn new(elements: Vec<Element>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyMesh);
        }
        let total_area = elements.iter().map(|e| e.area).sum();
        Ok(Self { elements, total_area })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn total_area(&self) -> f64 {
        self.total_area
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Element> {
        self.elements.iter()
    }
}

impl std::ops::Index<usize> for ElementSet {
    type Output = Element;

    fn index(&self, i: usize) -> &Element {
        &self.elements[i]
    }
}

/// Mesh quality diagnostics gathered during [`precompute_elements`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeshStats {
    /// Retained elements.
    pub num_elements: usize,
    pub num_vertices: usize,
    pub num_edges: usize,
    /// `V - E + F` over the input faces.
    pub euler_characteristic: i64,
    pub min_area: f64,
    pub max_area: f64,
    pub min_edge: f64,
    /// Faces dropped for having area below [`DEGENERATE_AREA`].
    pub degenerate_dropped: usize,
    /// Faces whose winding normal disagreed with the reference orientation.
    pub normals_flipped: usize,
}

impl MeshStats {
    pub fn is_closed_genus_zero(&self) -> bool {
        self.euler_characteristic == 2
    }
}

/// Compute centroid, outward unit normal and area for every face.
///
/// The winding normal is flipped when it points against the mean of the
/// face's vertex normals, or, for meshes without vertex normals, against the
/// direction from the vertex mean to the face centroid.
pub fn precompute_elements(mesh: &SurfaceMesh) -> Result<(ElementSet, MeshStats)> {
    let nv = mesh.num_vertices().max(1) as f64;
    let mesh_center = mesh.vertices.iter().fold(Vec3::zeros(), |acc, v| acc + v) / nv;

    let mut elements = Vec::with_capacity(mesh.num_faces());
    let mut dropped = 0;
    let mut flipped = 0;
    let mut min_edge = f64::INFINITY;

    for f in &mesh.faces {
        let (a, b, c) = (mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]);
        min_edge = min_edge.min((b - a).norm()).min((c - b).norm()).min((a - c).norm());

        let cross = (b - a).cross(&(c - a));
        let area = 0.5 * cross.norm();
        if area.is_nan() || area < DEGENERATE_AREA {
            dropped += 1;
            continue;
        }
        let centroid = (a + b + c) / 3.0;
        let mut normal = cross / cross.norm();
        let reference = match &mesh.vertex_normals {
            Some(ns) => ns[f[0]] + ns[f[1]] + ns[f[2]],
            None => centroid - mesh_center,
        };
        if normal.dot(&reference) < 0.0 {
            normal = -normal;
            flipped += 1;
        }
        elements.push(Element { centroid, normal, area });
    }

    if dropped > 0 {
        log::warn!("dropped {} degenerate face(s) with area below {:e} Å²", dropped, DEGENERATE_AREA);
    }
    let euler = mesh.euler_characteristic();
    if euler != 2 {
        log::warn!("Euler characteristic V - E + F = {} (expected 2 for a closed genus-0 surface)", euler);
    }

    let (min_area, max_area) =
        elements.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), e| (lo.min(e.area), hi.max(e.area)));
    let stats = MeshStats {
        num_elements: elements.len(),
        num_vertices: mesh.num_vertices(),
        num_edges: mesh.num_edges(),
        euler_characteristic: euler,
        min_area,
        max_area,
        min_edge,
        degenerate_dropped: dropped,
        normals_flipped: flipped,
    };
    Ok((ElementSet::new(elements)?, stats))
}

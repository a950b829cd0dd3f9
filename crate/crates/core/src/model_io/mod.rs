//! Solute and surface inputs.
//!
//! Charges come from PQR files, surfaces from MSMS `.vert`/`.face` pairs or
//! from a generated icosphere. [`precompute_elements`] turns a surface into
//! the per-triangle centroid/normal/area data the boundary operator consumes.

mod elements;
mod icosphere;
mod msms;
mod pqr;

pub use elements::{precompute_elements, Element, ElementSet, MeshStats, DEGENERATE_AREA};
pub use icosphere::icosphere;
pub use msms::{parse_msms, read_msms, write_msms};
pub use pqr::{parse_pqr, read_pqr};

use std::collections::HashSet;

use crate::Vec3;

/// A solute point charge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    /// Position in Å.
    pub position: Vec3,
    /// Partial charge in units of the elementary charge.
    pub charge: f64,
    /// Atomic radius in Å.
    pub radius: f64,
}

/// Ordered set of solute charges. File order is preserved.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ChargeSet {
    atoms: Vec<Atom>,
}

impl ChargeSet {
    pub fn new(atoms: Vec<Atom>) -> Self {
        Self { atoms }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Atom> {
        self.atoms.iter()
    }

    pub fn total_charge(&self) -> f64 {
        self.atoms.iter().map(|a| a.charge).sum()
    }

    /// Copy of this set with every charge multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let atoms = self.atoms.iter().map(|a| Atom { charge: a.charge * factor, ..*a }).collect();
        Self { atoms }
    }

    /// Nine charges 0.1, 0.2, ..., 0.9 along the helical segment
    /// `(3/(4π) cos t, 3/(4π) sin t, t/π)` for `t = 0, π/4, ..., 2π`.
    pub fn helix() -> Self {
        let r = 3.0 / (4.0 * std::f64::consts::PI);
        let atoms = (0..9)
            .map(|k| {
                let t = k as f64 * std::f64::consts::FRAC_PI_4;
                Atom {
                    position: Vec3::new(r * t.cos(), r * t.sin(), t / std::f64::consts::PI),
                    charge: 0.1 * (k + 1) as f64,
                    radius: 1.0,
                }
            })
            .collect();
        Self { atoms }
    }

    /// A single charge `q` at `center`.
    pub fn single(center: Vec3, charge: f64) -> Self {
        Self { atoms: vec![Atom { position: center, charge, radius: 1.0 }] }
    }
}

impl<'a> IntoIterator for &'a ChargeSet {
    type Item = &'a Atom;
    type IntoIter = std::slice::Iter<'a, Atom>;

    fn into_iter(self) -> Self::IntoIter {
        self.atoms.iter()
    }
}

/// A triangulated surface. Face indices are 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    pub vertices: Vec<Vec3>,
    pub vertex_normals: Option<Vec<Vec3>>,
    pub faces: Vec<[usize; 3]>,
}

impl SurfaceMesh {
    /// Build a mesh, checking that every face index is in range.
    pub fn new(vertices: Vec<Vec3>, vertex_normals: Option<Vec<Vec3>>, faces: Vec<[usize; 3]>) -> crate::Result<Self> {
        if let Some(normals) = &vertex_normals {
            if normals.len() != vertices.len() {
                return Err(crate::Error::Structure(format!(
                    "{} vertex normals for {} vertices",
                    normals.len(),
                    vertices.len()
                )));
            }
        }
        let nv = vertices.len();
        for (f, face) in faces.iter().enumerate() {
            if let Some(&bad) = face.iter().find(|&&i| i >= nv) {
                return Err(crate::Error::Structure(format!(
                    "face {} references vertex {} but the mesh has {} vertices",
                    f, bad, nv
                )));
            }
        }
        Ok(Self { vertices, vertex_normals, faces })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Number of distinct undirected edges.
    pub fn num_edges(&self) -> usize {
        let mut edges = HashSet::with_capacity(self.faces.len() * 3 / 2 + 1);
        for f in &self.faces {
            for k in 0..3 {
                let (a, b) = (f[k], f[(k + 1) % 3]);
                edges.insert((a.min(b), a.max(b)));
            }
        }
        edges.len()
    }

    /// `V - E + F`; equals 2 for a closed genus-0 surface.
    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }
}

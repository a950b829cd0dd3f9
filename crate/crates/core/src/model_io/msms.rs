//! MSMS `.vert` / `.face` reader and writer.
//!
//! Layout: up to three header lines (`#` comments followed by a counts line),
//! then one record per line. Vertex records start `x y z nx ny nz`, face
//! records start `i j k` with 1-based vertex indices. Trailing columns
//! (face/sphere/type ids written by MSMS) are ignored.

use std::fmt::Write as _;
use std::path::Path;

use super::SurfaceMesh;
use crate::{Error, Result, Vec3};

const HEADER_LINES: usize = 3;

#[derive(Clone, Copy)]
enum Kind {
    Vert,
    Face,
}

/// Yields `(line number, tokens)` for record lines, skipping the header.
fn records(text: &str, kind: Kind) -> impl Iterator<Item = (usize, Vec<&str>)> {
    let mut seen_comment = false;
    let mut in_header = true;
    text.lines().enumerate().filter_map(move |(idx, line)| {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            return None;
        }
        if in_header && idx < HEADER_LINES {
            if trimmed.starts_with('#') {
                seen_comment = true;
                return None;
            }
            in_header = false;
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            let counts_line = seen_comment
                || match kind {
                    Kind::Vert => tokens.len() < 6,
                    Kind::Face => tokens.iter().any(|t| t.parse::<i64>().is_err()),
                };
            if counts_line {
                return None;
            }
            return Some((idx + 1, tokens));
        }
        in_header = false;
        if trimmed.starts_with('#') {
            return None;
        }
        Some((idx + 1, trimmed.split_whitespace().collect()))
    })
}

/// Parse an MSMS vertex/face pair into a mesh with vertex normals.
pub fn parse_msms(vert_text: &str, face_text: &str) -> Result<SurfaceMesh> {
    let (vertices, normals) = parse_vert(vert_text)?;
    let faces = parse_face(face_text, vertices.len())?;
    SurfaceMesh::new(vertices, Some(normals), faces)
}

fn parse_vert(vert_text: &str) -> Result<(Vec<Vec3>, Vec<Vec3>)> {
    let mut vertices = Vec::new();
    let mut normals = Vec::new();
    for (line, tokens) in records(vert_text, Kind::Vert) {
        if tokens.len() < 6 {
            return Err(Error::parse(line, format!("vertex record has {} fields, need x y z nx ny nz", tokens.len())));
        }
        let mut v = [0.0; 6];
        for (slot, tok) in v.iter_mut().zip(&tokens) {
            *slot = tok
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::parse(line, format!("vertex field {:?} is not a number", tok)))?;
        }
        vertices.push(Vec3::new(v[0], v[1], v[2]));
        normals.push(Vec3::new(v[3], v[4], v[5]));
    }
    if vertices.is_empty() {
        return Err(Error::EmptyInput("vertex file"));
    }
    Ok((vertices, normals))
}

fn parse_face(face_text: &str, nv: usize) -> Result<Vec<[usize; 3]>> {
    let mut faces = Vec::new();
    for (line, tokens) in records(face_text, Kind::Face) {
        if tokens.len() < 3 {
            return Err(Error::parse(line, format!("face record has {} fields, need i j k", tokens.len())));
        }
        let mut face = [0usize; 3];
        for (slot, tok) in face.iter_mut().zip(&tokens) {
            let one_based: i64 =
                tok.parse().map_err(|_| Error::parse(line, format!("face index {:?} is not an integer", tok)))?;
            if one_based < 1 || one_based as usize > nv {
                return Err(Error::Structure(format!(
                    "line {}: face index {} outside 1..={} (MSMS indices are 1-based)",
                    line, one_based, nv
                )));
            }
            *slot = one_based as usize - 1;
        }
        faces.push(face);
    }
    if faces.is_empty() {
        return Err(Error::EmptyInput("face file"));
    }
    Ok(faces)
}

/// Read `path.vert` and `path.face` style files.
pub fn read_msms(vert_path: impl AsRef<Path>, face_path: impl AsRef<Path>) -> Result<SurfaceMesh> {
    let (vp, fp) = (vert_path.as_ref(), face_path.as_ref());
    let read = |p: &Path| std::fs::read_to_string(p).map_err(|source| Error::Io { path: p.to_path_buf(), source });
    let vert = read(vp)?;
    let face = read(fp)?;
    let (vertices, normals) = parse_vert(&vert).map_err(|e| e.in_file(vp))?;
    let faces = parse_face(&face, vertices.len()).map_err(|e| e.in_file(fp))?;
    SurfaceMesh::new(vertices, Some(normals), faces)
}

/// Write a mesh in canonical MSMS layout. Coordinates use the shortest
/// representation that parses back to the same `f64`. A mesh without vertex
/// normals is written with zero normals.
pub fn write_msms(mesh: &SurfaceMesh) -> (String, String) {
    let mut vert = String::new();
    let _ = writeln!(vert, "# MSMS solvent excluded surface vertices");
    let _ = writeln!(vert, "#vertex #sphere density probe_r");
    let _ = writeln!(vert, "{} 0 0.00 0.00", mesh.num_vertices());
    for (i, v) in mesh.vertices.iter().enumerate() {
        let n = mesh.vertex_normals.as_ref().map_or(Vec3::zeros(), |ns| ns[i]);
        let _ = writeln!(vert, "{} {} {} {} {} {}", v.x, v.y, v.z, n.x, n.y, n.z);
    }

    let mut face = String::new();
    let _ = writeln!(face, "# MSMS solvent excluded surface faces");
    let _ = writeln!(face, "#faces  #sphere density probe_r");
    let _ = writeln!(face, "{} 0 0.00 0.00", mesh.num_faces());
    for f in &mesh.faces {
        let _ = writeln!(face, "{} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
    }
    (vert, face)
}

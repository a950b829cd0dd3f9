//! PQR reader.
//!
//! Records are tokenized on whitespace rather than fixed columns; the last
//! five tokens of every `ATOM`/`HETATM` line are `x y z charge radius`.

use std::path::Path;

use super::{Atom, ChargeSet};
use crate::{Error, Result, Vec3};

const FIELDS: [&str; 5] = ["x", "y", "z", "charge", "radius"];

pub fn parse_pqr(text: &str) -> Result<ChargeSet> {
    let mut atoms = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.first() {
            Some(&"ATOM") | Some(&"HETATM") => {}
            _ => continue,
        }
        if tokens.len() < 6 {
            return Err(Error::parse(
                lineno,
                format!("{} record has {} fields, need x y z charge radius", tokens[0], tokens.len()),
            ));
        }
        let tail = &tokens[tokens.len() - 5..];
        let mut values = [0.0; 5];
        for (k, (tok, name)) in tail.iter().zip(FIELDS).enumerate() {
            let v: f64 =
                tok.parse().map_err(|_| Error::parse(lineno, format!("{} field {:?} is not a number", name, tok)))?;
            if !v.is_finite() {
                return Err(Error::parse(lineno, format!("{} field {:?} is not finite", name, tok)));
            }
            values[k] = v;
        }
        let [x, y, z, charge, radius] = values;
        if radius < 0.0 {
            return Err(Error::parse(lineno, format!("negative radius {}", radius)));
        }
        atoms.push(Atom { position: Vec3::new(x, y, z), charge, radius });
    }
    if atoms.is_empty() {
        return Err(Error::EmptyInput("PQR input"));
    }
    Ok(ChargeSet::new(atoms))
}

pub fn read_pqr(path: impl AsRef<Path>) -> Result<ChargeSet> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    parse_pqr(&text).map_err(|e| e.in_file(path))
}

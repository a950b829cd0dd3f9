use crate::{Error, Result};

/// Relative L∞ error `max|num - exa| / max|exa|`.
pub fn error_metrics(phi_num: &[f64], phi_exa: &[f64]) -> Result<f64> {
    if phi_num.len() != phi_exa.len() {
        return Err(Error::Contract { expected: phi_exa.len(), actual: phi_num.len() });
    }
    let scale = phi_exa.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::UndefinedMetric("exact surface potential is identically zero".into()));
    }
    let diff = phi_num.iter().zip(phi_exa).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
    Ok(diff / scale)
}

/// Observed order `log(e_coarse / e_fine) / log(mesh_fine / mesh_coarse)`.
///
/// `mesh` is any measure proportional to the number of elements (surface
/// density or element count), so the order is relative to element area.
pub fn convergence_order(e_coarse: f64, e_fine: f64, mesh_coarse: f64, mesh_fine: f64) -> Result<f64> {
    if !(e_coarse > 0.0 && e_fine > 0.0 && mesh_coarse > 0.0 && mesh_fine > 0.0) {
        return Err(Error::Domain(format!(
            "convergence order needs positive inputs, got errors {e_coarse}, {e_fine} and meshes {mesh_coarse}, {mesh_fine}"
        )));
    }
    if mesh_fine == mesh_coarse {
        // the same mesh twice carries no rate information
        return Ok(0.0);
    }
    if mesh_fine < mesh_coarse {
        return Err(Error::Domain(format!("fine mesh measure {mesh_fine} is below coarse {mesh_coarse}")));
    }
    Ok((e_coarse / e_fine).ln() / (mesh_fine / mesh_coarse).ln())
}

/// Richardson extrapolation of a quantity converging like `mesh^-order`.
pub fn richardson(coarse: f64, fine: f64, mesh_ratio: f64, order: f64) -> Result<f64> {
    let factor = mesh_ratio.powf(order) - 1.0;
    if !(factor > 0.0 && factor.is_finite()) {
        return Err(Error::Domain(format!(
            "Richardson extrapolation needs mesh ratio > 1 and order > 0, got {mesh_ratio} and {order}"
        )));
    }
    Ok(fine + (fine - coarse) / factor)
}

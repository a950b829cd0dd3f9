//! Modified spherical Bessel functions `i_n(z) = sqrt(π/2z) I_{n+1/2}(z)` and
//! `k_n(z) = sqrt(π/2z) K_{n+1/2}(z)`.
//!
//! `k_n` grows like `(2n-1)!!/z^{n+1}`, so the expansion only ever uses the
//! ratio `k_n/k_{n-1}`, which obeys an overflow-free recurrence. The scaled
//! values are kept for checks.

use std::f64::consts::FRAC_PI_2;

/// `z k_n'(z) / k_n(z)` for `n = 0..=n_max`.
///
/// For `z = 0` this is the Coulomb limit `-(n + 1)`.
pub fn k_log_derivatives(n_max: usize, z: f64) -> Vec<f64> {
    if z == 0.0 {
        return (0..=n_max).map(|n| -((n + 1) as f64)).collect();
    }
    // ratio = k_n / k_{n-1}; k_{-1} = k_0
    let mut ratio = 1.0;
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n > 0 {
            ratio = 1.0 / ratio + (2 * n - 1) as f64 / z;
        }
        // k_n' = -k_{n-1} - (n+1)/z k_n
        out.push(-z / ratio - (n + 1) as f64);
    }
    out
}

/// `e^z k_n(z)` for `n = 0..=n_max` by upward recurrence. Entries that would
/// overflow are returned as `f64::INFINITY`.
pub fn scaled_k(n_max: usize, z: f64) -> Vec<f64> {
    assert!(z > 0.0, "k_n is singular at z = 0");
    let mut out = Vec::with_capacity(n_max + 1);
    let k0 = FRAC_PI_2 / z;
    out.push(k0);
    if n_max >= 1 {
        out.push(k0 * (1.0 + 1.0 / z));
    }
    for n in 1..n_max {
        let next = out[n - 1] + (2 * n + 1) as f64 / z * out[n];
        out.push(if next.is_finite() { next } else { f64::INFINITY });
    }
    out
}

/// `e^{-z} i_n(z)` for `n = 0..=n_max` by downward (Miller) recurrence,
/// normalized against the closed form of `i_0`.
pub fn scaled_i(n_max: usize, z: f64) -> Vec<f64> {
    assert!(z > 0.0, "use the series limit for z = 0");
    let start = n_max + 20 + (2.0 * z).ceil() as usize;
    let mut vals = vec![0.0; start + 2];
    vals[start] = 1e-300;
    for n in (1..=start).rev() {
        vals[n - 1] = vals[n + 1] + (2 * n + 1) as f64 / z * vals[n];
        if vals[n - 1] > 1e250 {
            // rescale the tail computed so far
            for v in vals[n - 1..].iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    // e^{-z} sinh(z)/z
    let i0 = -(-2.0 * z).exp_m1() / (2.0 * z);
    let scale = i0 / vals[0];
    vals.truncate(n_max + 1);
    vals.iter_mut().for_each(|v| *v *= scale);
    vals
}

/// `P_n(x)` for `n = 0..=n_max`.
pub fn legendre(n_max: usize, x: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(n_max + 1);
    p.push(1.0);
    if n_max >= 1 {
        p.push(x);
    }
    for n in 1..n_max {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0) * x * p[n] - nf * p[n - 1]) / (nf + 1.0);
        p.push(next);
    }
    p
}

//! Adaptive Simpson quadrature for the smooth radial integrands used by the
//! analytic model.
//!
//! The integrands here (spectral-efficiency profiles against a linear radial
//! density) are smooth with at most one kink, so recursive Simpson with the
//! standard 1/15 Richardson error estimate converges in a handful of levels.
//! Refusing to report on non-convergence is deliberate: a silent bad integral
//! would poison every downstream ratio.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum QuadratureError {
    #[error("quadrature did not converge on [{a}, {b}] within depth {max_depth}")]
    NonConvergence { a: f64, b: f64, max_depth: u32 },
    #[error("invalid integration interval [{a}, {b}]")]
    BadInterval { a: f64, b: f64 },
}

/// Relative tolerance 1e-6, absolute floor 1e-9.
pub const DEFAULT_REL_TOL: f64 = 1e-6;
pub const DEFAULT_ABS_TOL: f64 = 1e-9;
const MAX_DEPTH: u32 = 40;

/// Integrate `f` over `[a, b]` with the default tolerances.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<f64, QuadratureError> {
    integrate_tol(f, a, b, DEFAULT_REL_TOL, DEFAULT_ABS_TOL)
}

/// Integrate `f` over `[a, b]` to the given tolerances.
pub fn integrate_tol<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<f64, QuadratureError> {
    if !a.is_finite() || !b.is_finite() {
        return Err(QuadratureError::BadInterval { a, b });
    }
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let mid = 0.5 * (a + b);
    let fm = f(mid);
    let whole = simpson(a, b, fa, fm, fb);
    // scale-aware tolerance: relative to a coarse estimate of the magnitude
    let scale = whole.abs().max(abs_tol / rel_tol);
    let eps = (rel_tol * scale).max(abs_tol);
    adaptive(f, a, b, fa, fm, fb, whole, eps, MAX_DEPTH)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> Result<f64, QuadratureError> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * eps {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(QuadratureError::NonConvergence {
            a,
            b,
            max_depth: MAX_DEPTH,
        });
    }
    let half_eps = 0.5 * eps;
    Ok(adaptive(f, a, m, fa, flm, fm, left, half_eps, depth - 1)?
        + adaptive(f, m, b, fm, frm, fb, right, half_eps, depth - 1)?)
}

//! Adaptive Simpson quadrature.
//!
//! The interval is first cut into a fixed number of panels so that narrow
//! peaks are not stepped over, then every panel is refined recursively until
//! the Richardson error estimate falls below the per-panel tolerance.

use crate::error::{Error, Result};

/// Panels used before adaptive refinement starts.
const INITIAL_PANELS: usize = 64;
/// Absolute tolerance per panel.
pub const PANEL_TOLERANCE: f64 = 1e-8;
const MAX_DEPTH: u32 = 48;
/// Bisections every panel gets before the error estimate is trusted.
const MIN_REFINEMENT: u32 = 4;

/// Integrates `f` over `[lo, hi]`.
#[cfg(test)]
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<f64> {
    integrate_with(&f, lo, hi, PANEL_TOLERANCE)
}

/// Integrates `f` over consecutive intervals `[b_0, b_1], [b_1, b_2], ...`.
///
/// Breakpoints let callers split at kinks of the integrand.
pub fn integrate_piecewise<F: Fn(f64) -> f64>(f: F, breakpoints: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    for w in breakpoints.windows(2) {
        if w[1] > w[0] {
            total += integrate_with(&f, w[0], w[1], PANEL_TOLERANCE)?;
        }
    }
    Ok(total)
}

pub fn integrate_with<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::Numeric(format!(
            "quadrature bounds must be finite, got [{lo}, {hi}]"
        )));
    }
    if hi <= lo {
        return Ok(0.0);
    }
    let width = (hi - lo) / INITIAL_PANELS as f64;
    let mut total = 0.0;
    for i in 0..INITIAL_PANELS {
        let a = lo + width * i as f64;
        let b = if i + 1 == INITIAL_PANELS {
            hi
        } else {
            lo + width * (i + 1) as f64
        };
        let fa = f(a);
        let fb = f(b);
        let m = 0.5 * (a + b);
        let fm = f(m);
        let whole = simpson(a, b, fa, fm, fb);
        total += refine(f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)?;
    }
    if total.is_finite() {
        Ok(total)
    } else {
        Err(Error::Numeric("quadrature produced a non-finite value".into()))
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    let settled = MAX_DEPTH - depth >= MIN_REFINEMENT;
    if settled && (delta.abs() <= 15.0 * tol || delta.abs() <= 1e-14 * (left.abs() + right.abs())) {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 || m <= a || m >= b {
        return Err(Error::Numeric(format!(
            "adaptive Simpson did not converge on [{a}, {b}] (error estimate {:e})",
            delta.abs() / 15.0
        )));
    }
    Ok(refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
        + refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
}

//! Adaptive Simpson quadrature with an evaluation budget.

use crate::error::{Error, Result};

/// Default cap on integrand evaluations before giving up.
pub const DEFAULT_QUAD_BUDGET: usize = 1_000_000;

#[inline]
fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

/// Integrates `f` over `[a, b]` to the given relative tolerance.
///
/// Classic recursive Simpson refinement with Richardson correction; the
/// per-interval error budget is split in half at each subdivision. Fails with
/// [`Error::QuadratureNonConvergence`] once more than `budget` integrand
/// evaluations have been spent.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, rel_tol: f64, budget: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(rel_tol > 0.0) || !rel_tol.is_finite() {
        return Err(Error::invalid("quadrature tolerance must be positive"));
    }
    if a == b {
        return Ok(0.0);
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, b - a);
    let mut evals = 3usize;
    // Scale the absolute error budget off the coarse estimate; fall back to
    // an absolute interpretation when the integral is (near) zero.
    let eps = rel_tol * whole.abs().max(f64::MIN_POSITIVE);
    refine(&f, a, fa, m, fm, b, fb, whole, eps, &mut evals, budget)
}

#[allow(clippy::too_many_arguments)]
fn refine<F>(
    f: &F,
    a: f64,
    fa: f64,
    m: f64,
    fm: f64,
    b: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    evals: &mut usize,
    budget: usize,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if *evals + 2 > budget {
        return Err(Error::QuadratureNonConvergence { evaluations: *evals });
    }
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    *evals += 2;
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    // Stop on convergence or once the interval is no longer splittable.
    if delta.abs() <= 15.0 * eps || lm <= a || rm >= b {
        return Ok(left + right + delta / 15.0);
    }
    let half = 0.5 * eps;
    let l = refine(f, a, fa, lm, flm, m, fm, left, half, evals, budget)?;
    let r = refine(f, m, fm, rm, frm, b, fb, right, half, evals, budget)?;
    Ok(l + r)
}

//! Numerical integration used as the independent oracle for every closed
//! form in the crate.
//!
//! * [`integrate_adaptive`]: globally adaptive bisection driven by the
//!   embedded 7/15-point Gauss-Kronrod pair on a finite interval.
//! * [`integrate_decaying`]: `(0, ∞)` for integrands that decay, via the
//!   map `x = t/(1 - t)`.
//! * [`integrate_oscillatory_tail`] and [`integrate_frullani_oscillatory`]:
//!   conditionally convergent integrals such as `∫ (cos x - cos 2x)/x`,
//!   summed segment by segment and accelerated.
//!
//! All rules are open, so an integrand is never evaluated at an endpoint
//! and removable singularities at `x = 0` need no special handling.

mod kronrod;
mod oscillatory;

use serde::Serialize;
use thiserror::Error;

pub use oscillatory::{
    euler_averages, fundamental_frequency, integrate_frullani_oscillatory, integrate_oscillatory_tail, OscillatorySpec,
    EULER_DEPTH,
};

/// No node is placed closer than this fraction of the interval width to
/// either end of the original interval.
pub const ENDPOINT_GUARD: f64 = 1e-12;

/// Subinterval budget for [`integrate_adaptive`].
pub const MAX_INTERVALS: usize = 2000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub function_evaluations: usize,
    pub converged: bool,
    /// Why the result did not converge, when it did not.
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("integrand is {value} at x = {abscissa:e}")]
    NonFinite { abscissa: f64, value: f64 },
    #[error("invalid oscillatory spec: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    splittable: bool,
}

/// Integrates `f` over `(lo, hi)` until the summed error estimate drops to
/// `tol` or the subinterval budget runs out (`converged == false`).
///
/// ```
/// use frullani::quadrature::integrate_adaptive;
///
/// let r = integrate_adaptive(|x: f64| (x - 1.0) / x.ln(), 0.0, 1.0, 1e-10).unwrap();
/// assert!(r.converged);
/// assert!((r.value - 2f64.ln()).abs() < 1e-9);
/// ```
pub fn integrate_adaptive<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    integrate_adaptive_with(&f, lo, hi, tol, MAX_INTERVALS)
}

pub(crate) fn integrate_adaptive_with<F>(
    f: &F,
    lo: f64,
    hi: f64,
    tol: f64,
    max_intervals: usize,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64 + ?Sized,
{
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(QuadratureError::InvalidInterval { lo, hi });
    }
    if !(tol > 0.0) {
        return Err(QuadratureError::InvalidTolerance(tol));
    }
    let width = hi - lo;
    let margin = ENDPOINT_GUARD * width;
    let guard = ((lo + margin).max(lo.next_up()), (hi - margin).min(hi.next_down()));
    let min_width = margin;

    let rule = |a: f64, b: f64| {
        kronrod::gk15(f, a, b, guard).map_err(|(abscissa, value)| QuadratureError::NonFinite { abscissa, value })
    };

    let first = rule(lo, hi)?;
    let mut evaluations = kronrod::NODES;
    let mut pieces = vec![Piece {
        a: lo,
        b: hi,
        value: first.value,
        error: first.error,
        splittable: true,
    }];

    loop {
        let error: f64 = pieces.iter().map(|p| p.error).sum();
        if error <= tol {
            return Ok(finish(&pieces, evaluations, true, None));
        }
        if pieces.len() >= max_intervals {
            let note = format!("subinterval budget of {max_intervals} exhausted with error {error:.3e}");
            return Ok(finish(&pieces, evaluations, false, Some(note)));
        }
        let worst = pieces
            .iter()
            .enumerate()
            .filter(|(_, p)| p.splittable)
            .max_by(|(_, x), (_, y)| x.error.total_cmp(&y.error))
            .map(|(i, _)| i);
        let Some(i) = worst else {
            let note = format!("no subinterval can be refined further; error {error:.3e}");
            return Ok(finish(&pieces, evaluations, false, Some(note)));
        };

        let Piece { a, b, .. } = pieces[i];
        let mid = 0.5 * (a + b);
        if b - a < 2.0 * min_width || mid <= a || mid >= b {
            pieces[i].splittable = false;
            continue;
        }
        let left = rule(a, mid)?;
        let right = rule(mid, b)?;
        evaluations += 2 * kronrod::NODES;
        pieces[i] = Piece {
            a,
            b: mid,
            value: left.value,
            error: left.error,
            splittable: true,
        };
        pieces.push(Piece {
            a: mid,
            b,
            value: right.value,
            error: right.error,
            splittable: true,
        });
    }
}

fn finish(pieces: &[Piece], evaluations: usize, converged: bool, diagnostic: Option<String>) -> QuadratureResult {
    // sum in left-to-right order so the result does not depend on the
    // refinement history
    let mut ordered: Vec<&Piece> = pieces.iter().collect();
    ordered.sort_by(|x, y| x.a.total_cmp(&y.a));
    QuadratureResult {
        value: ordered.iter().map(|p| p.value).sum(),
        error_estimate: ordered.iter().map(|p| p.error).sum(),
        function_evaluations: evaluations,
        converged,
        diagnostic,
    }
}

/// Integrates a decaying `f` over `(0, ∞)` through `x = t/(1 - t)`.
///
/// The integrand must be absolutely integrable; oscillatory tails belong to
/// [`integrate_frullani_oscillatory`].
pub fn integrate_decaying<F>(f: F, tol: f64) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    let mapped = |t: f64| {
        let s = 1.0 - t;
        let x = t / s;
        let y = f(x);
        // the map can push x far enough for f to underflow to exactly zero;
        // keep that zero even though 1/s² is huge
        if y == 0.0 {
            0.0
        } else {
            y / (s * s)
        }
    };
    integrate_adaptive_with(&mapped, 0.0, 1.0, tol, MAX_INTERVALS).map_err(|e| match e {
        QuadratureError::NonFinite { abscissa, value } => QuadratureError::NonFinite {
            abscissa: abscissa / (1.0 - abscissa),
            value,
        },
        other => other,
    })
}

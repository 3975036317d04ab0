//! Conditionally convergent integrals over `[c, ∞)`.
//!
//! The tail is cut into segments of one half-period `h`, each integrated
//! adaptively. The partial sums of the segment integrals oscillate around
//! the answer. Iterated Euler averaging removes the alternating component,
//! and polynomial extrapolation in `1/X` then removes the slowly varying
//! remainder that harmonics of even order leave behind.
//!
//! The half-period is taken from the fundamental frequency of the integrand
//! (the largest frequency that divides all of its frequencies), so every
//! component either alternates from segment to segment or completes whole
//! periods inside one.

use std::f64::consts::PI;

use super::{integrate_adaptive_with, QuadratureError, QuadratureResult, MAX_INTERVALS};

/// Maximum number of iterated averagings.
pub const EULER_DEPTH: usize = 12;

/// Default segment budget.
pub const DEFAULT_MAX_SEGMENTS: usize = 64;

/// Segments integrated before the first acceleration attempt.
const FIRST_CHECK: usize = 24;
const CHECK_EVERY: usize = 8;

/// Segments allowed to break the alternating pattern before it is enforced.
const GRACE_SEGMENTS: usize = 8;

/// Largest denominator tried when looking for a common fundamental.
const MAX_DENOMINATOR: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorySpec {
    /// Where the tail starts, `c > 0`.
    pub tail_start: f64,
    /// Segment length, one half-period of the fundamental oscillation.
    pub half_period: f64,
    /// Segment budget, at least 8.
    pub max_segments: usize,
}

impl OscillatorySpec {
    pub fn new(tail_start: f64, half_period: f64, max_segments: usize) -> Result<Self, QuadratureError> {
        let spec = OscillatorySpec {
            tail_start,
            half_period,
            max_segments,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), QuadratureError> {
        if !(self.tail_start > 0.0 && self.tail_start.is_finite()) {
            return Err(QuadratureError::InvalidSpec(format!(
                "tail start {} must be positive",
                self.tail_start
            )));
        }
        if !(self.half_period > 0.0 && self.half_period.is_finite()) {
            return Err(QuadratureError::InvalidSpec(format!(
                "half-period {} must be positive",
                self.half_period
            )));
        }
        if self.max_segments < 8 {
            return Err(QuadratureError::InvalidSpec(format!(
                "at least 8 segments required, got {}",
                self.max_segments
            )));
        }
        Ok(())
    }

    /// Derives the segmentation from the angular frequencies present in the
    /// integrand.
    ///
    /// The half-period is `π/ω₀` for the common fundamental `ω₀` when the
    /// frequencies are commensurate, otherwise `π/ω_max`. The tail starts at
    /// the first multiple of the half-period that is at least
    /// `max(π/ω_min, 1)`.
    pub fn for_frequencies(frequencies: &[f64]) -> Result<Self, QuadratureError> {
        let positive: Vec<f64> = frequencies
            .iter()
            .copied()
            .filter(|w| *w > 0.0 && w.is_finite())
            .collect();
        if positive.is_empty() {
            return Err(QuadratureError::InvalidSpec("no positive frequency given".into()));
        }
        let max = positive.iter().copied().fold(0.0, f64::max);
        let min = positive.iter().copied().fold(f64::INFINITY, f64::min);
        let base = fundamental_frequency(&positive).unwrap_or(max);
        let half_period = PI / base;
        let start = (PI / min).max(1.0);
        let tail_start = half_period * (start / half_period - 1e-12).ceil().max(1.0);
        OscillatorySpec::new(tail_start, half_period, DEFAULT_MAX_SEGMENTS)
    }
}

/// The largest `ω₀` such that every frequency is an integer multiple of it,
/// searching rational ratios with denominators up to 64.
pub fn fundamental_frequency(frequencies: &[f64]) -> Option<f64> {
    let min = frequencies.iter().copied().fold(f64::INFINITY, f64::min);
    if !(min > 0.0 && min.is_finite()) {
        return None;
    }
    for denominator in 1..=MAX_DENOMINATOR {
        let d = denominator as f64;
        let mut multiples = Vec::with_capacity(frequencies.len());
        for w in frequencies {
            let scaled = w / min * d;
            let m = scaled.round();
            if m < 1.0 || (scaled - m).abs() > 1e-9 * scaled {
                break;
            }
            multiples.push(m as u64);
        }
        if multiples.len() == frequencies.len() {
            let g = multiples.into_iter().fold(0, gcd);
            return Some(min * g as f64 / d);
        }
    }
    None
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Applies `depth` rounds of pairwise averaging.
pub fn euler_averages(partials: &[f64], depth: usize) -> Vec<f64> {
    let mut row = partials.to_vec();
    for _ in 0..depth {
        if row.len() < 2 {
            break;
        }
        row = row.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    row
}

/// Neville extrapolation of `(t_i, y_i)` to `t = 0`.
fn extrapolate_to_zero(points: &[(f64, f64)]) -> f64 {
    let mut p: Vec<f64> = points.iter().map(|(_, y)| *y).collect();
    let n = points.len();
    for level in 1..n {
        for i in 0..n - level {
            let (ti, tj) = (points[i].0, points[i + level].0);
            p[i] = (tj * p[i] - ti * p[i + 1]) / (tj - ti);
        }
    }
    p[0]
}

// Euler averaging smears the smooth (non-alternating) part of the partial
// sums, which puts sizeable t^4 and t^5 terms into the row; a quintic in
// t = 1/X through points spread over the later part of the row absorbs them.
const FIT_POINTS: usize = 6;
const FIT_STRIDE_DIV: usize = 10;

/// Accelerated limit of the partial sums and an error estimate.
fn accelerate(partials: &[f64], spec: &OscillatorySpec) -> (f64, f64) {
    let n = partials.len();
    let depth = EULER_DEPTH.min(n.saturating_sub(4));
    let row = euler_averages(partials, depth);
    let m = row.len();
    if m < FIT_POINTS {
        let last = row[m - 1];
        let spread = if m >= 2 {
            (last - row[m - 2]).abs()
        } else {
            f64::INFINITY
        };
        return (last, spread);
    }
    // row[i] averages the partial sums ending at c + (i+1)h .. c + (i+1+depth)h
    let centre = |i: usize| spec.tail_start + (i as f64 + 1.0 + 0.5 * depth as f64) * spec.half_period;
    let stride = ((m - 1) / FIT_STRIDE_DIV).max(1);
    let points: Vec<(f64, f64)> = (0..FIT_POINTS)
        .map(|j| {
            let i = m - 1 - j * stride;
            (1.0 / centre(i), row[i])
        })
        .collect();
    let full = extrapolate_to_zero(&points);
    let reduced = extrapolate_to_zero(&points[..FIT_POINTS - 1]);
    (full, (full - reduced).abs())
}

/// Integrates `f` over `[c, ∞)` segment by segment.
///
/// Segment sums must alternate in sign once past a short grace period
/// (negligible sums are ignored); otherwise the result is returned with
/// `converged == false` and a diagnostic.
pub fn integrate_oscillatory_tail<F>(
    f: F,
    spec: &OscillatorySpec,
    tol: f64,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    spec.validate()?;
    if !(tol > 0.0) {
        return Err(QuadratureError::InvalidTolerance(tol));
    }
    let segment_tol = tol / (4.0 * spec.max_segments as f64);
    let negligible = 1e-3 * tol;

    let mut partials: Vec<f64> = Vec::with_capacity(spec.max_segments);
    let mut previous_sum: Option<f64> = None;
    let mut running = 0.0;
    let mut quad_error = 0.0;
    let mut evaluations = 0;
    let mut last_estimate: Option<f64> = None;
    let mut accel_error = f64::INFINITY;

    let result =
        |value: f64, error: f64, evaluations: usize, converged: bool, diagnostic: Option<String>| QuadratureResult {
            value,
            error_estimate: error,
            function_evaluations: evaluations.max(1),
            converged,
            diagnostic,
        };

    for j in 0..spec.max_segments {
        let a = spec.tail_start + j as f64 * spec.half_period;
        let b = spec.tail_start + (j + 1) as f64 * spec.half_period;
        let seg = integrate_adaptive_with(&f, a, b, segment_tol, MAX_INTERVALS)?;
        evaluations += seg.function_evaluations;
        quad_error += seg.error_estimate;
        if !seg.converged {
            let note = format!("segment {j} on [{a}, {b}] did not converge");
            return Ok(result(
                running + seg.value,
                f64::INFINITY,
                evaluations,
                false,
                Some(note),
            ));
        }

        let s = seg.value;
        if j >= GRACE_SEGMENTS {
            if let Some(prev) = previous_sum {
                if s.abs() > negligible && prev.abs() > negligible && s.signum() == prev.signum() {
                    let note = format!("segment sums stopped alternating at segment {j} ({prev:e}, {s:e})");
                    return Ok(result(running + s, f64::INFINITY, evaluations, false, Some(note)));
                }
            }
        }
        previous_sum = Some(s);
        running += s;
        partials.push(running);

        let count = partials.len();
        if count >= FIRST_CHECK && (count - FIRST_CHECK).is_multiple_of(CHECK_EVERY) {
            let (estimate, spread) = accelerate(&partials, spec);
            accel_error = match last_estimate {
                Some(prev) => spread.max((estimate - prev).abs()),
                None => f64::INFINITY,
            };
            last_estimate = Some(estimate);
            if accel_error + quad_error <= tol {
                return Ok(result(estimate, accel_error + quad_error, evaluations, true, None));
            }
        }
    }

    let value = last_estimate.unwrap_or(running);
    let note = format!(
        "tail did not settle within {} segments (estimate spread {accel_error:.3e})",
        spec.max_segments
    );
    Ok(result(value, accel_error + quad_error, evaluations, false, Some(note)))
}

/// `∫₀^∞ g` for an integrand with a removable singularity at zero and an
/// oscillatory tail: adaptive head on `(0, c]` plus accelerated tail.
pub fn integrate_frullani_oscillatory<F>(
    g: F,
    spec: &OscillatorySpec,
    tol: f64,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    spec.validate()?;
    let head = integrate_adaptive_with(&g, 0.0, spec.tail_start, 0.5 * tol, MAX_INTERVALS)?;
    let tail = integrate_oscillatory_tail(&g, spec, 0.5 * tol)?;
    let diagnostic = match (head.diagnostic, tail.diagnostic) {
        (None, None) => None,
        (Some(h), None) => Some(format!("head: {h}")),
        (None, Some(t)) => Some(format!("tail: {t}")),
        (Some(h), Some(t)) => Some(format!("head: {h}; tail: {t}")),
    };
    Ok(QuadratureResult {
        value: head.value + tail.value,
        error_estimate: head.error_estimate + tail.error_estimate,
        function_evaluations: head.function_evaluations + tail.function_evaluations,
        converged: head.converged && tail.converged,
        diagnostic,
    })
}

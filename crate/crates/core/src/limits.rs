//! Numerical one-sided limits at `0+` and at `+∞`.
//!
//! The probe samples `f` along a geometric sequence of abscissas
//! (`x0·r^k` towards zero, `x0·R^k` towards infinity), accelerates the
//! samples with Aitken's Δ² process and classifies the outcome as a
//! [`LimitVerdict`]. It is a heuristic: slowly drifting functions such as
//! `1/ln x` can be reported as [`LimitVerdict::NoLimit`].

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::expr::EvalError;

/// Samples beyond this magnitude that keep growing are declared divergent.
pub const OVERFLOW_GUARD: f64 = 1e12;

/// Trailing window inspected for undamped oscillation.
pub const OSCILLATION_WINDOW: usize = 8;

/// Number of consecutive extrapolant agreements required for `Finite`.
const AGREEMENTS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LimitVerdict {
    Finite {
        value: f64,
        uncertainty: f64,
    },
    /// `sign` is `+1` or `-1`.
    Diverges {
        sign: i8,
    },
    NoLimit {
        amplitude: f64,
    },
}

impl LimitVerdict {
    pub fn finite_value(&self) -> Option<f64> {
        match self {
            LimitVerdict::Finite { value, .. } => Some(*value),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, LimitVerdict::Finite { .. })
    }

    /// The variant name, ignoring payload.
    pub fn tag(&self) -> &'static str {
        match self {
            LimitVerdict::Finite { .. } => "finite",
            LimitVerdict::Diverges { .. } => "diverges",
            LimitVerdict::NoLimit { .. } => "no-limit",
        }
    }
}

impl fmt::Display for LimitVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitVerdict::Finite { value, uncertainty } => {
                write!(f, "Finite({value:?} ± {uncertainty:.3e})")
            }
            LimitVerdict::Diverges { sign } => {
                write!(f, "Diverges({})", if *sign < 0 { "-∞" } else { "+∞" })
            }
            LimitVerdict::NoLimit { amplitude } => write!(f, "NoLimit(amplitude ≈ {amplitude:.3e})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeConfig {
    pub x0: f64,
    /// Geometric ratio in `(0, 1)` for the probe towards zero.
    pub zero_ratio: f64,
    /// Geometric ratio `> 1` for the probe towards infinity.
    pub infinity_ratio: f64,
    pub max_samples: usize,
    pub tolerance: f64,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            x0: 1.0,
            zero_ratio: 0.5,
            infinity_ratio: 2.0,
            max_samples: 60,
            tolerance: 1e-9,
        }
    }
}

impl ProbeConfig {
    pub fn validate(&self) -> Result<(), ProbeError> {
        let ok = self.x0 > 0.0
            && self.x0.is_finite()
            && self.zero_ratio > 0.0
            && self.zero_ratio < 1.0
            && self.infinity_ratio > 1.0
            && self.infinity_ratio.is_finite()
            && self.max_samples >= OSCILLATION_WINDOW
            && self.tolerance > 0.0;
        if ok {
            Ok(())
        } else {
            Err(ProbeError::InvalidConfig(*self))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProbeError {
    #[error("invalid probe configuration {0:?}")]
    InvalidConfig(ProbeConfig),
    #[error("evaluation failed at x = {abscissa:e}: {source}")]
    Evaluation { abscissa: f64, source: EvalError },
}

/// One sampled point and, once three samples exist, its Aitken extrapolant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeSample {
    pub abscissa: f64,
    pub value: f64,
    pub extrapolant: Option<f64>,
}

/// A verdict together with the samples that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Probe {
    pub verdict: LimitVerdict,
    pub samples: Vec<ProbeSample>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    ZeroPlus,
    Infinity,
}

pub fn limit_at_zero_plus<F>(f: F, cfg: &ProbeConfig) -> Result<LimitVerdict, ProbeError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    probe(f, Side::ZeroPlus, cfg).map(|p| p.verdict)
}

pub fn limit_at_infinity<F>(f: F, cfg: &ProbeConfig) -> Result<LimitVerdict, ProbeError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    probe(f, Side::Infinity, cfg).map(|p| p.verdict)
}

/// Aitken's Δ² extrapolant of three consecutive terms. Falls back to the
/// newest term when the second difference vanishes.
pub fn aitken(s0: f64, s1: f64, s2: f64) -> f64 {
    let d1 = s2 - s1;
    let d2 = s2 - 2.0 * s1 + s0;
    if d2 == 0.0 || !d2.is_finite() {
        s2
    } else {
        let v = s2 - d1 * d1 / d2;
        if v.is_finite() {
            v
        } else {
            s2
        }
    }
}

/// Runs the probe on one side and keeps the full sample trail.
pub fn probe<F>(f: F, side: Side, cfg: &ProbeConfig) -> Result<Probe, ProbeError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    cfg.validate()?;
    let ratio = match side {
        Side::ZeroPlus => cfg.zero_ratio,
        Side::Infinity => cfg.infinity_ratio,
    };
    let mut samples: Vec<ProbeSample> = Vec::with_capacity(cfg.max_samples);
    let mut agreements = 0;
    let mut x = cfg.x0;

    for k in 0..cfg.max_samples {
        if k > 0 {
            x *= ratio;
        }
        let value = f(x).map_err(|source| ProbeError::Evaluation { abscissa: x, source })?;
        let extrapolant = (k >= 2).then(|| aitken(samples[k - 2].value, samples[k - 1].value, value));
        samples.push(ProbeSample {
            abscissa: x,
            value,
            extrapolant,
        });

        if let Some(sign) = runaway(&samples) {
            return Ok(Probe {
                verdict: LimitVerdict::Diverges { sign },
                samples,
            });
        }

        let previous = if k >= 1 { samples[k - 1].extrapolant } else { None };
        if let (Some(prev), Some(cur)) = (previous, extrapolant) {
            let gap = (cur - prev).abs();
            let scale = cur.abs().max(1.0);
            // Aitken maps divergent geometric runs onto a finite antilimit,
            // so the raw steps must be shrinking as well.
            let step = (samples[k].value - samples[k - 1].value).abs();
            let prev_step = (samples[k - 1].value - samples[k - 2].value).abs();
            let settling = step <= prev_step || step <= cfg.tolerance * scale;
            if settling && gap <= cfg.tolerance * scale {
                agreements += 1;
                if agreements >= AGREEMENTS {
                    return Ok(Probe {
                        verdict: LimitVerdict::Finite {
                            value: cur,
                            uncertainty: gap,
                        },
                        samples,
                    });
                }
            } else {
                agreements = 0;
            }
        }
    }

    let verdict = classify_window(&samples, cfg.tolerance);
    Ok(Probe { verdict, samples })
}

/// `Some(sign)` when the newest three samples grow monotonically in
/// magnitude past the overflow guard.
fn runaway(samples: &[ProbeSample]) -> Option<i8> {
    let n = samples.len();
    if n < 3 {
        return None;
    }
    let [a, b, c] = [samples[n - 3].value, samples[n - 2].value, samples[n - 1].value];
    let same_sign = a.signum() == b.signum() && b.signum() == c.signum();
    if c.abs() > OVERFLOW_GUARD && same_sign && c.abs() > b.abs() && b.abs() > a.abs() {
        Some(if c < 0.0 { -1 } else { 1 })
    } else {
        None
    }
}

/// Classification once the sample budget is exhausted without agreement.
fn classify_window(samples: &[ProbeSample], tolerance: f64) -> LimitVerdict {
    let window: Vec<f64> = samples[samples.len() - OSCILLATION_WINDOW..]
        .iter()
        .map(|s| s.value)
        .collect();
    let max = window.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = window.iter().copied().fold(f64::INFINITY, f64::min);
    let spread = max - min;
    let mean = window.iter().sum::<f64>() / window.len() as f64;
    if spread <= tolerance * mean.abs().max(1.0) {
        return LimitVerdict::Finite {
            value: window[window.len() - 1],
            uncertainty: spread,
        };
    }

    // Steady monotone growth whose steps do not shrink (ln x at 0+, say)
    // never settles even below the overflow guard.
    let steps: Vec<f64> = window.windows(2).map(|w| w[1] - w[0]).collect();
    let monotone = steps.iter().all(|d| *d > 0.0) || steps.iter().all(|d| *d < 0.0);
    let growing_magnitude = window.windows(2).all(|w| w[1].abs() > w[0].abs());
    let non_decaying = steps.windows(2).all(|d| d[1].abs() >= 0.999 * d[0].abs());
    if monotone && growing_magnitude && non_decaying {
        let last = window[window.len() - 1];
        return LimitVerdict::Diverges {
            sign: if last < 0.0 { -1 } else { 1 },
        };
    }

    LimitVerdict::NoLimit {
        amplitude: 0.5 * spread,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(f: impl Fn(f64) -> f64) -> impl Fn(f64) -> Result<f64, EvalError> {
        move |x| Ok(f(x))
    }

    fn finite(v: LimitVerdict) -> f64 {
        v.finite_value().unwrap_or_else(|| panic!("expected Finite, got {v}"))
    }

    #[test]
    fn exponential_at_both_ends() {
        let cfg = ProbeConfig::default();
        let zero = limit_at_zero_plus(ok(|x| (-x).exp()), &cfg).unwrap();
        assert!((finite(zero) - 1.0).abs() < 1e-9);
        let inf = limit_at_infinity(ok(|x| (-x).exp()), &cfg).unwrap();
        assert!(finite(inf).abs() < 1e-12);
    }

    #[test]
    fn removable_singularity_gives_frequency_difference() {
        let f = ok(|x: f64| ((-x).exp() - (-3.0 * x).exp()) / x);
        let v = limit_at_zero_plus(f, &ProbeConfig::default()).unwrap();
        assert!((finite(v) - 2.0).abs() < 1e-6, "{v}");
    }

    #[test]
    fn compound_interest_limits() {
        let f = |x: f64| (1.0 + 1.0 / x).powf(x);
        let cfg = ProbeConfig::default();
        let at_zero = limit_at_zero_plus(ok(f), &cfg).unwrap();
        assert!((finite(at_zero) - 1.0).abs() < 1e-6, "{at_zero}");
        let at_inf = limit_at_infinity(ok(f), &cfg).unwrap();
        assert!((finite(at_inf) - std::f64::consts::E).abs() < 1e-6, "{at_inf}");
    }

    #[test]
    fn log_cosine_has_no_limit_at_infinity() {
        let f = ok(|x: f64| (1.0 + x.cos() + 0.25).ln());
        let v = limit_at_infinity(f, &ProbeConfig::default()).unwrap();
        assert!(
            matches!(v, LimitVerdict::NoLimit { amplitude } if amplitude > 0.1),
            "{v}"
        );
    }

    #[test]
    fn reciprocal_diverges_at_zero() {
        let v = limit_at_zero_plus(ok(|x| 1.0 / x), &ProbeConfig::default()).unwrap();
        assert_eq!(v, LimitVerdict::Diverges { sign: 1 });
        let v = limit_at_infinity(ok(|x| -x * x), &ProbeConfig::default()).unwrap();
        assert_eq!(v, LimitVerdict::Diverges { sign: -1 });
    }

    #[test]
    fn logarithm_diverges_below_the_guard() {
        let v = limit_at_zero_plus(ok(f64::ln), &ProbeConfig::default()).unwrap();
        assert_eq!(v, LimitVerdict::Diverges { sign: -1 });
    }

    #[test]
    fn constants_are_exact() {
        for c in [0.0, -3.5, 1e6] {
            let cfg = ProbeConfig::default();
            assert_eq!(
                limit_at_zero_plus(ok(move |_| c), &cfg).unwrap(),
                LimitVerdict::Finite {
                    value: c,
                    uncertainty: 0.0
                }
            );
            assert_eq!(
                limit_at_infinity(ok(move |_| c), &cfg).unwrap(),
                LimitVerdict::Finite {
                    value: c,
                    uncertainty: 0.0
                }
            );
        }
    }

    #[test]
    fn evaluation_errors_carry_the_abscissa() {
        let f = |x: f64| {
            if x < 0.1 {
                Err(EvalError::Domain {
                    function: "ln",
                    argument: -x,
                })
            } else {
                Ok(1.0)
            }
        };
        match limit_at_zero_plus(f, &ProbeConfig::default()) {
            Err(ProbeError::Evaluation { abscissa, .. }) => assert_eq!(abscissa, 0.0625),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_configs() {
        let bad = [
            ProbeConfig {
                x0: 0.0,
                ..Default::default()
            },
            ProbeConfig {
                zero_ratio: 1.0,
                ..Default::default()
            },
            ProbeConfig {
                infinity_ratio: 0.5,
                ..Default::default()
            },
            ProbeConfig {
                max_samples: 3,
                ..Default::default()
            },
            ProbeConfig {
                tolerance: 0.0,
                ..Default::default()
            },
        ];
        for cfg in bad {
            assert!(matches!(
                limit_at_infinity(ok(|x| x), &cfg),
                Err(ProbeError::InvalidConfig(_))
            ));
        }
    }

    #[test]
    fn aitken_is_exact_on_geometric_sequences() {
        // s_k = 3 + 2·(0.5)^k
        let s = |k: i32| 3.0 + 2.0 * 0.5f64.powi(k);
        assert_eq!(aitken(s(0), s(1), s(2)), 3.0);
        assert_eq!(aitken(1.0, 1.0, 1.0), 1.0);
    }

    #[test]
    fn trail_records_every_sample() {
        let p = probe(ok(|x: f64| (-x).exp()), Side::Infinity, &ProbeConfig::default()).unwrap();
        assert!(p.samples.len() >= 3);
        assert_eq!(p.samples[0].abscissa, 1.0);
        assert_eq!(p.samples[1].abscissa, 2.0);
        assert!(p.samples[0].extrapolant.is_none());
        assert!(p.samples[2].extrapolant.is_some());
    }
}

//! The Frullani closed form
//!
//! ```text
//! ∫₀^∞ (f(a x^p) - f(b x^p)) / x  dx  =  (1/p) (f(0) - f(∞)) ln(b/a)
//! ```
//!
//! with a numeric check that `f(0+)` and `f(∞)` exist before it is applied.
//!
//! ```
//! use frullani::expr::parse;
//! use frullani::frullani::{evaluate_pipeline, FrullaniProblem};
//! use frullani::record::Status;
//!
//! let prob = FrullaniProblem::new(parse("exp(-x)").unwrap(), 1.0, 2.0, 1.0).unwrap();
//! let record = evaluate_pipeline(&prob, 1e-8);
//! assert_eq!(record.status, Status::Pass);
//! assert!((record.expected.unwrap() - 2f64.ln()).abs() < 1e-8);
//! ```

use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::expr::{Expr, INTEGRATION_VARIABLE};
use crate::limits::{limit_at_infinity, limit_at_zero_plus, LimitVerdict, ProbeConfig, ProbeError};
use crate::quadrature::integrate_decaying;
use crate::record::{Params, Status, VerificationRecord};
use crate::series::log_ratio;

/// Oracle tolerance as a fraction of the comparison tolerance.
pub const ORACLE_TOL_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrullaniError {
    #[error("{name} must be a positive finite number, got {value}")]
    InvalidScale { name: &'static str, value: f64 },
    #[error("f may only depend on x; unbound: {}", .0.join(", "))]
    UnboundParameters(Vec<String>),
    #[error("f does not depend on x")]
    MissingVariable,
    #[error(transparent)]
    Probe(#[from] ProbeError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrullaniProblem {
    pub f: Expr,
    pub a: f64,
    pub b: f64,
    pub power: f64,
}

impl FrullaniProblem {
    pub fn new(f: Expr, a: f64, b: f64, power: f64) -> Result<Self, FrullaniError> {
        for (name, value) in [("a", a), ("b", b), ("power", power)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(FrullaniError::InvalidScale { name, value });
            }
        }
        let mut free: BTreeSet<String> = f.free_variables();
        if !free.remove(INTEGRATION_VARIABLE) {
            return Err(FrullaniError::MissingVariable);
        }
        if !free.is_empty() {
            return Err(FrullaniError::UnboundParameters(free.into_iter().collect()));
        }
        Ok(FrullaniProblem { f, a, b, power })
    }

    /// `f(x)`, with evaluation failures surfacing as NaN.
    pub fn f_at(&self, x: f64) -> f64 {
        self.f.evaluate_at(x).unwrap_or(f64::NAN)
    }

    /// `(f(a x^p) - f(b x^p)) / x`.
    pub fn integrand(&self, x: f64) -> f64 {
        if self.a == self.b {
            return 0.0;
        }
        let xp = if self.power == 1.0 { x } else { x.powf(self.power) };
        (self.f_at(self.a * xp) - self.f_at(self.b * xp)) / x
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApplicabilityReport {
    pub verdict_at_zero: LimitVerdict,
    pub verdict_at_infinity: LimitVerdict,
    pub applicable: bool,
    pub reason: String,
}

impl ApplicabilityReport {
    /// `(f(0), f(∞))` when both limits are finite.
    pub fn limits(&self) -> Option<(f64, f64)> {
        Some((
            self.verdict_at_zero.finite_value()?,
            self.verdict_at_infinity.finite_value()?,
        ))
    }
}

/// Probes `f(0+)` and `f(∞)`.
pub fn diagnose(prob: &FrullaniProblem, cfg: &ProbeConfig) -> Result<ApplicabilityReport, FrullaniError> {
    let f = |x: f64| prob.f.evaluate_at(x);
    let zero = limit_at_zero_plus(f, cfg)?;
    let infinity = limit_at_infinity(f, cfg)?;
    let applicable = zero.is_finite() && infinity.is_finite();
    let reason = match (zero.is_finite(), infinity.is_finite()) {
        (true, true) => "both limits are finite".to_owned(),
        (false, true) => format!("f(0+) is not finite: {zero}"),
        (true, false) => format!("f(∞) is not finite: {infinity}"),
        (false, false) => format!("neither limit is finite: f(0+) {zero}, f(∞) {infinity}"),
    };
    Ok(ApplicabilityReport {
        verdict_at_zero: zero,
        verdict_at_infinity: infinity,
        applicable,
        reason,
    })
}

/// `(1/p) (f0 - finf) ln(b/a)`.
///
/// Swapping `a` and `b` negates the result exactly, and the power enters
/// only through the final factor `1/p`.
pub fn closed_form(prob: &FrullaniProblem, f0: f64, finf: f64) -> f64 {
    (1.0 / prob.power) * ((f0 - finf) * log_ratio(prob.a, prob.b))
}

/// Where the limits fed to [`closed_form`] came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitSource {
    Probe,
    /// Supplied by the caller, e.g. from a catalog formula.
    Analytic {
        f0: f64,
        finf: f64,
    },
}

/// Diagnoses, evaluates the closed form from probed limits and checks it
/// against the quadrature oracle at `tol`.
pub fn evaluate_pipeline(prob: &FrullaniProblem, tol: f64) -> VerificationRecord {
    evaluate_pipeline_with(prob, tol, &ProbeConfig::default(), LimitSource::Probe)
}

pub fn evaluate_pipeline_with(
    prob: &FrullaniProblem,
    tol: f64,
    cfg: &ProbeConfig,
    source: LimitSource,
) -> VerificationRecord {
    let started = Instant::now();
    let mut record = run_pipeline(prob, tol, cfg, source);
    record.wall_time = started.elapsed();
    record
}

fn run_pipeline(prob: &FrullaniProblem, tol: f64, cfg: &ProbeConfig, source: LimitSource) -> VerificationRecord {
    let params = Params(vec![
        ("a".to_owned(), prob.a),
        ("b".to_owned(), prob.b),
        ("p".to_owned(), prob.power),
    ]);
    let entry = format!("eval:{}", prob.f);

    let (f0, finf, provenance) = match source {
        LimitSource::Analytic { f0, finf } => (f0, finf, format!("limits analytic: f(0)={f0:?}, f(inf)={finf:?}")),
        LimitSource::Probe => {
            let report = match diagnose(prob, cfg) {
                Ok(r) => r,
                Err(e) => {
                    return VerificationRecord::new(entry, params, Status::NotApplicable)
                        .with_note(format!("limit probe failed: {e}"));
                }
            };
            let Some((f0, finf)) = report.limits() else {
                return VerificationRecord::new(entry, params, Status::NotApplicable).with_note(report.reason);
            };
            (f0, finf, format!("limits probed: f(0)={f0:?}, f(inf)={finf:?}"))
        }
    };

    let mut record = VerificationRecord::new(entry, params, Status::OracleFailed);
    let expected = closed_form(prob, f0, finf);
    record.expected = Some(expected);

    match integrate_decaying(|x| prob.integrand(x), ORACLE_TOL_FRACTION * tol) {
        Ok(r) => {
            let abs_err = (r.value - expected).abs();
            record.numeric = Some(r.value);
            record.abs_err = Some(abs_err);
            record.oracle_error = Some(r.error_estimate);
            record.status = if !r.converged {
                Status::OracleFailed
            } else if abs_err <= tol {
                Status::Pass
            } else {
                Status::Fail
            };
            let note = match r.diagnostic {
                Some(d) => format!("{provenance}; oracle: {d}"),
                None => provenance,
            };
            record.with_note(note)
        }
        Err(e) => record.with_note(format!("{provenance}; oracle: {e}")),
    }
}

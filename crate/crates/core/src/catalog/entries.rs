//! The table itself. Integrands are the printed ones, rewritten only with
//! `expm1`/`ln_1p` where a difference of nearly equal terms would otherwise
//! cancel near `x = 0`.
//!
//! Parameter slices follow each entry's `params` order.

use std::f64::consts::FRAC_PI_2;

use super::{Alias, CatalogEntry, Constraint, EvalClass, FrullaniForm, Source};
use crate::series::{gr_4_324_2_closed, log_ratio};

const A_B_POSITIVE: Constraint = Constraint {
    prose: "a > 0, b > 0",
    holds: |v| v[0] > 0.0 && v[1] > 0.0,
};

/// Grid for entries whose only parameters are the two scales.
const AB_GRID: &[&[f64]] = &[&[1.0, 2.0], &[1.0, 10.0], &[3.0, 3.0]];

/// `e^{-αx} - e^{-βx}` without cancellation for small arguments.
fn exp_diff(alpha: f64, beta: f64, x: f64) -> f64 {
    (-alpha * x).exp_m1() - (-beta * x).exp_m1()
}

/// `(1 + a/y)^y`.
fn compound(a: f64, y: f64) -> f64 {
    (y * (a / y).ln_1p()).exp()
}

fn abs_scales(v: &[f64]) -> (f64, f64, f64) {
    (v[0], v[1], 1.0)
}

pub(super) static ENTRIES: [CatalogEntry; 20] = [
    CatalogEntry {
        id: "GR-3.434.2",
        source: Source::GradshteynRyzhik,
        number: "3.434.2",
        params: &["a", "b"],
        constraints: &[A_B_POSITIVE],
        integrand_text: "(e^{-ax} - e^{-bx})/x",
        closed_form_text: "ln(b/a)",
        class: EvalClass::SmoothDecay,
        integrand: |v, x| exp_diff(v[0], v[1], x) / x,
        closed_form: |v| log_ratio(v[0], v[1]),
        frequencies: None,
        scale_pair: Some(("a", "b")),
        frullani: Some(FrullaniForm {
            f: "exp(-x)",
            scales: abs_scales,
            limits: Some(|_| (1.0, 0.0)),
        }),
        grid: AB_GRID,
    },
    CatalogEntry {
        id: "GR-4.267.8",
        source: Source::GradshteynRyzhik,
        number: "4.267.8",
        params: &["a", "b"],
        constraints: &[A_B_POSITIVE],
        integrand_text: "(t^{b-1} - t^{a-1})/ln t on (0, 1)",
        // t = e^{-x} turns this into GR-3.434.2, whose value is ln(b/a)
        closed_form_text: "ln(b/a)",
        class: EvalClass::FiniteInterval,
        integrand: |v, t| {
            let l = t.ln();
            (((v[1] - 1.0) * l).exp_m1() - ((v[0] - 1.0) * l).exp_m1()) / l
        },
        closed_form: |v| log_ratio(v[0], v[1]),
        frequencies: None,
        scale_pair: Some(("a", "b")),
        frullani: Some(FrullaniForm {
            f: "exp(-x)",
            scales: abs_scales,
            limits: Some(|_| (1.0, 0.0)),
        }),
        grid: AB_GRID,
    },
    CatalogEntry {
        id: "GR-3.476.1",
        source: Source::GradshteynRyzhik,
        number: "3.476.1",
        params: &["u", "v", "p"],
        constraints: &[Constraint {
            prose: "u > 0, v > 0, p > 0",
            holds: |v| v[0] > 0.0 && v[1] > 0.0 && v[2] > 0.0,
        }],
        integrand_text: "(e^{-v x^p} - e^{-u x^p})/x",
        closed_form_text: "(1/p) ln(u/v)",
        class: EvalClass::SmoothDecay,
        integrand: |v, x| exp_diff(v[1], v[0], x.powf(v[2])) / x,
        closed_form: |v| (1.0 / v[2]) * log_ratio(v[1], v[0]),
        frequencies: None,
        scale_pair: Some(("u", "v")),
        frullani: Some(FrullaniForm {
            f: "exp(-x)",
            scales: |v| (v[1], v[0], v[2]),
            limits: Some(|_| (1.0, 0.0)),
        }),
        // p < 1 puts an x^(p-1) singularity at the origin, which the
        // endpoint guard cannot resolve to 1e-7
        grid: &[&[2.0, 1.0, 2.0], &[10.0, 1.0, 1.0], &[3.0, 3.0, 3.0], &[1.0, 2.0, 1.5]],
    },
    CatalogEntry {
        id: "GR-3.436",
        source: Source::GradshteynRyzhik,
        number: "3.436",
        params: &["a", "b", "p", "q"],
        constraints: &[Constraint {
            prose: "a, b, p, q all positive",
            holds: |v| v.iter().all(|x| *x > 0.0),
        }],
        integrand_text: "[(e^{-aqx} - e^{-apx})/a - (e^{-bqx} - e^{-bpx})/b]/x^2",
        closed_form_text: "(p-q) ln(b/a)",
        class: EvalClass::SmoothDecay,
        integrand: |v, x| {
            let (a, b, p, q) = (v[0], v[1], v[2], v[3]);
            (exp_diff(a * q, a * p, x) / a - exp_diff(b * q, b * p, x) / b) / (x * x)
        },
        closed_form: |v| (v[2] - v[3]) * log_ratio(v[0], v[1]),
        frequencies: None,
        scale_pair: Some(("a", "b")),
        frullani: Some(FrullaniForm {
            f: "(exp(-q*x) - exp(-p*x))/x",
            scales: abs_scales,
            limits: Some(|v| (v[2] - v[3], 0.0)),
        }),
        grid: &[
            &[1.0, 2.0, 3.0, 1.0],
            &[1.0, 10.0, 2.0, 1.0],
            &[2.0, 2.0, 3.0, 1.0],
            &[1.0, 2.0, 1.0, 3.0],
        ],
    },
    CatalogEntry {
        id: "GR-3.329",
        source: Source::GradshteynRyzhik,
        number: "3.329",
        params: &["a", "b", "c"],
        constraints: &[
            A_B_POSITIVE,
            Constraint {
                prose: "c > 0 (inferred: exp(-c e^{ax}) must decay)",
                holds: |v| v[2] > 0.0,
            },
        ],
        integrand_text: "a exp(-c e^{ax})/(1 - e^{-ax}) - b exp(-c e^{bx})/(1 - e^{-bx})",
        closed_form_text: "e^{-c} ln(b/a)",
        class: EvalClass::SmoothDecay,
        integrand: |v, x| {
            let (a, b, c) = (v[0], v[1], v[2]);
            let term = |s: f64| s * (-c * (s * x).exp()).exp() / -(-s * x).exp_m1();
            term(a) - term(b)
        },
        closed_form: |v| (-v[2]).exp() * log_ratio(v[0], v[1]),
        frequencies: None,
        scale_pair: Some(("a", "b")),
        frullani: Some(FrullaniForm {
            f: "x/(1 - exp(-x))*exp(-c*exp(x))",
            scales: abs_scales,
            limits: Some(|v| ((-v[2]).exp(), 0.0)),
        }),
        grid: &[&[1.0, 2.0, 1.0], &[1.0, 10.0, 0.5], &[2.0, 2.0, 1.0]],
    },
    CatalogEntry {
        id: "GR-3.232",
        source: Source::GradshteynRyzhik,
        number: "3.232",
        params: &["a", "b", "c", "mu"],
        constraints: &[
            A_B_POSITIVE,
            Constraint {
                prose: "c > 0, mu > 0",
                holds: |v| v[2] > 0.0 && v[3] > 0.0,
            },
        ],
        integrand_text: "((ax+c)^{-mu} - (bx+c)^{-mu})/x",
        closed_form_text: "c^{-mu} ln(b/a)",
        class: EvalClass::SmoothDecay,
        integrand: |v, x| {
            let (a, b, c, mu) = (v[0], v[1], v[2], v[3]);
            // c^{-mu} [(1 + ax/c)^{-mu} - (1 + bx/c)^{-mu}]
            let lead = c.powf(-mu);
            let g = |s: f64| (-mu * (s * x / c).ln_1p()).exp_m1();
            lead * (g(a) - g(b)) / x
        },
        closed_form: |v| v[2].powf(-v[3]) * log_ratio(v[0], v[1]),
        frequencies: None,
        scale_pair: Some(("a", "b")),
        frullani: Some(FrullaniForm {
            f: "(x + c)^(-mu)",
            scales: abs_scales,
            limits: Some(|v| (v[2].powf(-v[3]), 0.0)),
        }),
        // mu < 1 leaves an x^(-1-mu) tail too slow for the mapped interval
        grid: &[
            &[1.0, 2.0, 1.0, 2.0],
            &[1.0, 10.0, 2.0, 1.0],
            &[3.0, 3.0, 1.0, 1.0],
            &[2.0, 1.0, 0.5, 3.0],
        ],
    },
    CatalogEntry {
        id: "GR-4.536.2",
        source: Source::GradshteynRyzhik,
        number: "4.536.2",
        params: &["p", "q"],
        constraints: &[Constraint {
            prose: "p > 0, q > 0",
            holds: |v| v[0] > 0.0 && v[1] > 0.0,
        }],
        integrand_text: "(atan(px) - atan(qx))/x",
        closed_form_text: "(pi/2) ln(p/q)",
        class: EvalClass::SmoothDecay,
        integrand: |v, x| ((v[0] * x).atan() - (v[1] * x).atan()) / x,
        closed_form: |v| FRAC_PI_2 * log_ratio(v[1], v[0]),
        frequencies: None,
        scale_pair: Some(("p", "q")),
        frullani: Some(FrullaniForm {
            f: "atan(x)",
            scales: abs_scales,
            limits: Some(|_| (0.0, FRAC_PI_2)),
        }),
        grid: &[&[2.0, 1.0], &[10.0, 1.0], &[3.0, 3.0]],
    },
    CatalogEntry {
        id: "GR-4.319.3",
        source: Source::GradshteynRyzhik,
        number: "4.319.3",
        params: &["a", "b", "p", "q"],
        constraints: &[
            Constraint {
                prose: "a > 0, a + b > 0 (inferred: the logarithms must be real)",
                holds: |v| v[0] > 0.0 && v[0] + v[1] > 0.0,
            },
            Constraint {
                prose: "p > 0, q > 0",
                holds: |v| v[2] > 0.0 && v[3] > 0.0,
            },
        ],
        integrand_text: "(ln(a + b e^{-px}) - ln(a + b e^{-qx}))/x",
        closed_form_text: "ln(a/(a+b)) ln(p/q)",
        class: EvalClass::SmoothDecay,
        integrand: |v, x| {
            let (a, b, p, q) = (v[0], v[1], v[2], v[3]);
            (b * exp_diff(p, q, x) / (a + b * (-q * x).exp())).ln_1p() / x
        },
        closed_form: |v| (v[0] / (v[0] + v[1])).ln() * log_ratio(v[3], v[2]),
        frequencies: None,
        scale_pair: Some(("p", "q")),
        frullani: Some(FrullaniForm {
            f: "ln(a + b*exp(-x))",
            scales: |v| (v[2], v[3], 1.0),
            limits: Some(|v| ((v[0] + v[1]).ln(), v[0].ln())),
        }),
        grid: &[&[1.0, 1.0, 1.0, 2.0], &[2.0, -1.0, 1.0, 10.0], &[1.0, 3.0, 2.0, 2.0]],
    },
    CatalogEntry {
        id: "GR-4.297.7",
        source: Source::GradshteynRyzhik,
        number: "4.297.7",
        params: &["a", "b"],
        constraints: &[A_B_POSITIVE],
        integrand_text: "(b ln(1 + ax) - a ln(1 + bx))/x^2",
        closed_form_text: "ab ln(b/a)",
        class: EvalClass::SmoothDecay,
        integrand: |v, x| (v[1] * (v[0] * x).ln_1p() - v[0] * (v[1] * x).ln_1p()) / (x * x),
        closed_form: |v| v[0] * v[1] * log_ratio(v[0], v[1]),
        frequencies: None,
        scale_pair: Some(("a", "b")),
        frullani: Some(FrullaniForm {
            f: "a*b*ln(1 + x)/x",
            scales: abs_scales,
            limits: Some(|v| (v[0] * v[1], 0.0)),
        }),
        grid: AB_GRID,
    },
    CatalogEntry {
        id: "GR-3.484",
        source: Source::GradshteynRyzhik,
        number: "3.484",
        params: &["a", "p", "q"],
        constraints: &[Constraint {
            prose: "a > 0 (inferred: 1 + a/x must stay positive), p > 0, q > 0",
            holds: |v| v.iter().all(|x| *x > 0.0),
        }],
        integrand_text: "[(1 + a/(qx))^{qx} - (1 + a/(px))^{px}]/x",
        closed_form_text: "(e^a - 1) ln(q/p)",
        class: EvalClass::SmoothDecay,
        integrand: |v, x| (compound(v[0], v[2] * x) - compound(v[0], v[1] * x)) / x,
        closed_form: |v| v[0].exp_m1() * log_ratio(v[1], v[2]),
        frequencies: None,
        scale_pair: Some(("p", "q")),
        frullani: Some(FrullaniForm {
            f: "(1 + a/x)^x",
            scales: |v| (v[2], v[1], 1.0),
            limits: Some(|v| (1.0, v[0].exp())),
        }),
        grid: &[&[1.0, 1.0, 2.0], &[0.5, 1.0, 10.0], &[2.0, 3.0, 3.0]],
    },
    CatalogEntry {
        id: "GR-3.412.1",
        source: Source::GradshteynRyzhik,
        number: "3.412.1",
        params: &["a", "b", "c", "g", "h", "p", "q"],
        constraints: &[
            Constraint {
                prose: "c > 0, g >= 0, h >= 0 (inferred: the denominator must stay positive and grow)",
                holds: |v| v[2] > 0.0 && v[3] >= 0.0 && v[4] >= 0.0,
            },
            Constraint {
                prose: "p > 0, q > 0",
                holds: |v| v[5] > 0.0 && v[6] > 0.0,
            },
        ],
        integrand_text: "[(a + b e^{-px})/(c e^{px} + g + h e^{-px}) - (a + b e^{-qx})/(c e^{qx} + g + h e^{-qx})]/x",
        closed_form_text: "(a+b)/(c+g+h) ln(q/p)",
        class: EvalClass::SmoothDecay,
        integrand: |v, x| {
            let (a, b, c, g, h) = (v[0], v[1], v[2], v[3], v[4]);
            let f = |y: f64| (a + b * (-y).exp()) / (c * y.exp() + g + h * (-y).exp());
            (f(v[5] * x) - f(v[6] * x)) / x
        },
        closed_form: |v| (v[0] + v[1]) / (v[2] + v[3] + v[4]) * log_ratio(v[5], v[6]),
        frequencies: None,
        scale_pair: Some(("p", "q")),
        frullani: Some(FrullaniForm {
            f: "(a + b*exp(-x))/(c*exp(x) + g + h*exp(-x))",
            scales: |v| (v[5], v[6], 1.0),
            limits: Some(|v| ((v[0] + v[1]) / (v[2] + v[3] + v[4]), 0.0)),
        }),
        grid: &[
            &[1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0],
            &[2.0, 0.5, 1.0, 0.0, 2.0, 1.0, 10.0],
            &[1.0, 2.0, 3.0, 1.0, 0.0, 2.0, 2.0],
        ],
    },
    CatalogEntry {
        id: "GR-4.324.2",
        source: Source::GradshteynRyzhik,
        number: "4.324.2",
        params: &["a", "p", "q"],
        constraints: &[
            Constraint {
                prose: "a != -1",
                holds: |v| v[0] != -1.0,
            },
            Constraint {
                prose: "p > 0, q > 0",
                holds: |v| v[1] > 0.0 && v[2] > 0.0,
            },
        ],
        integrand_text: "[ln(1 + 2a cos px + a^2) - ln(1 + 2a cos qx + a^2)]/x",
        closed_form_text: "2 ln(q/p) ln(1+a) for |a| <= 1, 2 ln(q/p) ln(1+1/a) otherwise",
        class: EvalClass::Oscillatory,
        integrand: |v, x| {
            let (a, p, q) = (v[0], v[1], v[2]);
            // ln of the ratio, with cos px - cos qx as a product of sines
            let cos_diff = -2.0 * (0.5 * (p + q) * x).sin() * (0.5 * (p - q) * x).sin();
            let denominator = 1.0 + 2.0 * a * (q * x).cos() + a * a;
            (2.0 * a * cos_diff / denominator).ln_1p() / x
        },
        closed_form: |v| gr_4_324_2_closed(v[0], v[1], v[2]).unwrap_or(f64::NAN),
        frequencies: Some(|v| vec![v[1], v[2]]),
        scale_pair: Some(("p", "q")),
        frullani: Some(FrullaniForm {
            f: "ln(1 + 2*a*cos(x) + a^2)",
            scales: |v| (v[1], v[2], 1.0),
            limits: None,
        }),
        grid: &[&[0.5, 1.0, 2.0], &[-0.5, 1.0, 10.0], &[2.0, 1.0, 2.0], &[0.5, 3.0, 3.0]],
    },
    CatalogEntry {
        id: "R-3.1",
        source: Source::Ramanujan,
        number: "3.1",
        params: &["a", "b"],
        constraints: &[A_B_POSITIVE],
        integrand_text: "(atan(ax) - atan(bx))/x",
        closed_form_text: "(pi/2) ln(a/b)",
        class: EvalClass::SmoothDecay,
        integrand: |v, x| ((v[0] * x).atan() - (v[1] * x).atan()) / x,
        closed_form: |v| FRAC_PI_2 * log_ratio(v[1], v[0]),
        frequencies: None,
        scale_pair: Some(("a", "b")),
        frullani: Some(FrullaniForm {
            f: "atan(x)",
            scales: abs_scales,
            limits: Some(|_| (0.0, FRAC_PI_2)),
        }),
        grid: AB_GRID,
    },
    CatalogEntry {
        id: "R-3.2",
        source: Source::Ramanujan,
        number: "3.2",
        params: &["a", "b", "p", "q"],
        constraints: &[
            A_B_POSITIVE,
            Constraint {
                prose: "p > 0, p + q > 0 (inferred: the logarithm must be real)",
                holds: |v| v[2] > 0.0 && v[2] + v[3] > 0.0,
            },
        ],
        integrand_text: "ln((p + q e^{-ax})/(p + q e^{-bx}))/x",
        closed_form_text: "ln(1 + q/p) ln(b/a)",
        class: EvalClass::SmoothDecay,
        integrand: |v, x| {
            let (a, b, p, q) = (v[0], v[1], v[2], v[3]);
            (q * exp_diff(a, b, x) / (p + q * (-b * x).exp())).ln_1p() / x
        },
        closed_form: |v| (v[3] / v[2]).ln_1p() * log_ratio(v[0], v[1]),
        frequencies: None,
        scale_pair: Some(("a", "b")),
        frullani: Some(FrullaniForm {
            f: "ln(p + q*exp(-x))",
            scales: abs_scales,
            limits: Some(|v| ((v[2] + v[3]).ln(), v[2].ln())),
        }),
        grid: &[&[1.0, 2.0, 1.0, 1.0], &[1.0, 10.0, 2.0, -1.0], &[3.0, 3.0, 1.0, 2.0]],
    },
    CatalogEntry {
        id: "R-3.3",
        source: Source::Ramanujan,
        number: "3.3",
        params: &["a", "b", "p", "q", "n"],
        constraints: &[Constraint {
            prose: "a, b, p, q all positive",
            holds: |v| v[..4].iter().all(|x| *x > 0.0),
        }],
        integrand_text: "[((ax+p)/(ax+q))^n - ((bx+p)/(bx+q))^n]/x",
        closed_form_text: "(1 - p^n/q^n) ln(a/b)",
        class: EvalClass::SmoothDecay,
        integrand: |v, x| {
            let (a, b, p, q, n) = (v[0], v[1], v[2], v[3], v[4]);
            // n ln((sx+p)/(sx+q)) = n ln(1 + (p-q)/(sx+q))
            let e = |s: f64| n * ((p - q) / (s * x + q)).ln_1p();
            let (ea, eb) = (e(a), e(b));
            eb.exp() * (ea - eb).exp_m1() / x
        },
        closed_form: |v| -(v[4] * (v[2] / v[3]).ln()).exp_m1() * log_ratio(v[1], v[0]),
        frequencies: None,
        scale_pair: Some(("a", "b")),
        frullani: Some(FrullaniForm {
            f: "((x + p)/(x + q))^n",
            scales: abs_scales,
            limits: Some(|v| ((v[2] / v[3]).powf(v[4]), 1.0)),
        }),
        grid: &[
            &[1.0, 2.0, 1.0, 2.0, 1.0],
            &[1.0, 10.0, 2.0, 1.0, 3.0],
            &[3.0, 3.0, 1.0, 2.0, 2.0],
            &[2.0, 1.0, 3.0, 1.0, -0.5],
        ],
    },
    CatalogEntry {
        id: "R-3.4",
        source: Source::Ramanujan,
        number: "3.4",
        params: &["a", "b"],
        constraints: &[A_B_POSITIVE],
        integrand_text: "(cos ax - cos bx)/x",
        closed_form_text: "ln(b/a)",
        class: EvalClass::Oscillatory,
        integrand: |v, x| ((v[0] * x).cos() - (v[1] * x).cos()) / x,
        closed_form: |v| log_ratio(v[0], v[1]),
        frequencies: Some(|v| vec![v[0], v[1]]),
        scale_pair: Some(("a", "b")),
        frullani: Some(FrullaniForm {
            f: "cos(x)",
            scales: abs_scales,
            limits: None,
        }),
        grid: AB_GRID,
    },
    CatalogEntry {
        id: "R-3.5",
        source: Source::Ramanujan,
        number: "3.5",
        params: &["a", "b"],
        constraints: &[A_B_POSITIVE],
        integrand_text: "sin((b-a)x/2) sin((b+a)x/2)/x",
        closed_form_text: "(1/2) ln(b/a)",
        class: EvalClass::Oscillatory,
        integrand: |v, x| (0.5 * (v[1] - v[0]) * x).sin() * (0.5 * (v[1] + v[0]) * x).sin() / x,
        closed_form: |v| 0.5 * log_ratio(v[0], v[1]),
        // the product equals (cos ax - cos bx)/2, so a and b are the frequencies present
        frequencies: Some(|v| vec![v[0], v[1]]),
        scale_pair: Some(("a", "b")),
        frullani: Some(FrullaniForm {
            f: "cos(x)/2",
            scales: abs_scales,
            limits: None,
        }),
        grid: AB_GRID,
    },
    CatalogEntry {
        id: "R-3.6",
        source: Source::Ramanujan,
        number: "3.6",
        params: &["p", "q"],
        constraints: &[Constraint {
            prose: "p > q > 0 (inferred: ln((p+q)/(p-q)) must be real)",
            holds: |v| v[0] > v[1] && v[1] > 0.0,
        }],
        integrand_text: "sin(px) sin(qx)/x",
        closed_form_text: "(1/2) ln((p+q)/(p-q))",
        class: EvalClass::Oscillatory,
        integrand: |v, x| (v[0] * x).sin() * (v[1] * x).sin() / x,
        closed_form: |v| 0.5 * log_ratio(v[0] - v[1], v[0] + v[1]),
        // sin px sin qx = (cos (p-q)x - cos (p+q)x)/2
        frequencies: Some(|v| vec![v[0] - v[1], v[0] + v[1]]),
        scale_pair: None,
        frullani: Some(FrullaniForm {
            f: "cos(x)/2",
            scales: |v| (v[0] - v[1], v[0] + v[1], 1.0),
            limits: None,
        }),
        grid: &[&[3.0, 1.0], &[2.0, 1.0], &[11.0, 9.0]],
    },
    CatalogEntry {
        id: "R-3.8",
        source: Source::Ramanujan,
        number: "3.8",
        params: &["a", "b"],
        constraints: &[A_B_POSITIVE],
        integrand_text: "(e^{-ax} sin ax - e^{-bx} sin bx)/x",
        closed_form_text: "0",
        class: EvalClass::Oscillatory,
        integrand: |v, x| {
            let g = |s: f64| (-s * x).exp() * (s * x).sin();
            (g(v[0]) - g(v[1])) / x
        },
        closed_form: |_| 0.0,
        frequencies: Some(|v| vec![v[0], v[1]]),
        scale_pair: Some(("a", "b")),
        frullani: Some(FrullaniForm {
            f: "exp(-x)*sin(x)",
            scales: abs_scales,
            limits: Some(|_| (0.0, 0.0)),
        }),
        grid: AB_GRID,
    },
    CatalogEntry {
        id: "R-3.9",
        source: Source::Ramanujan,
        number: "3.9",
        params: &["a", "b"],
        constraints: &[A_B_POSITIVE],
        integrand_text: "(e^{-ax} cos ax - e^{-bx} cos bx)/x",
        closed_form_text: "ln(b/a)",
        class: EvalClass::SmoothDecay,
        integrand: |v, x| {
            let g = |s: f64| (-s * x).exp() * (s * x).cos();
            (g(v[0]) - g(v[1])) / x
        },
        closed_form: |v| log_ratio(v[0], v[1]),
        frequencies: None,
        scale_pair: Some(("a", "b")),
        frullani: Some(FrullaniForm {
            f: "exp(-x)*cos(x)",
            scales: abs_scales,
            limits: Some(|_| (1.0, 0.0)),
        }),
        grid: AB_GRID,
    },
];

pub(super) static ALIASES: [Alias; 1] = [Alias {
    id: "R-3.7",
    target: "GR-4.324.2",
    rename: &[("n", "a"), ("a", "p"), ("b", "q")],
    note: "ln((1 + 2n cos ax + n^2)/(1 + 2n cos bx + n^2))/x; ln(b/a) ln((1+n)^2) for n^2 < 1, ln(b/a) ln((1+1/n)^2) for n^2 > 1",
}];

//! Series machinery behind
//!
//! ```text
//! ∫₀^∞ ln(1 + 2a cos px + a²) - ln(1 + 2a cos qx + a²)  dx/x
//! ```
//!
//! Writing `1 + 2a cos t + a² = (1 + a²)(1 + A cos t)` with `A = 2a/(1+a²)`,
//! expanding `ln(1 + A cos t)` and integrating term by term leaves a log
//! series in `A` (odd powers) and a central binomial series in
//! `Q = A²/4` (even powers, where the constant term of `cos^k` drops out).

use std::f64::consts::LN_2;

use thiserror::Error;

use crate::quadrature::{integrate_frullani_oscillatory, OscillatorySpec, QuadratureError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("{0}")]
    Domain(String),
    #[error("parity weight for k = {0} does not fit in 64 bits")]
    Overflow(u32),
    #[error("oscillatory oracle did not converge: {0}")]
    Oracle(String),
}

impl From<QuadratureError> for SeriesError {
    fn from(e: QuadratureError) -> Self {
        SeriesError::Oracle(e.to_string())
    }
}

/// Amplitude `a` with the derived quantities `A` and `Q`, always recomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesParams {
    pub a: f64,
}

impl SeriesParams {
    pub fn new(a: f64) -> Result<Self, SeriesError> {
        if !a.is_finite() {
            return Err(SeriesError::Domain(format!("a must be finite, got {a}")));
        }
        if a == -1.0 {
            return Err(SeriesError::Domain("a = -1 makes the integrand ln 0 at cos = 1".into()));
        }
        Ok(SeriesParams { a })
    }

    /// `2a/(1 + a²)`, computed so that `a` and `1/a` give the same value.
    pub fn big_a(&self) -> f64 {
        let a = self.a;
        if a.abs() <= 1.0 {
            2.0 * a / (1.0 + a * a)
        } else {
            let r = 1.0 / a;
            2.0 * r / (1.0 + r * r)
        }
    }

    /// `A²/4 = a²/(1 + a²)²`, always in `[0, 1/4]`.
    pub fn q(&self) -> f64 {
        let big_a = self.big_a();
        0.25 * big_a * big_a
    }
}

/// `Σ_{k=1..K} (-1)^(k-1) z^k / k`, the Taylor series of `ln(1 + z)`.
pub fn log_series_partial(z: f64, terms: usize) -> Result<f64, SeriesError> {
    if !(z.abs() <= 1.0) || z == -1.0 {
        return Err(SeriesError::Domain(format!("log series needs -1 < z <= 1, got {z}")));
    }
    let mut sum = 0.0;
    let mut power = 1.0;
    for k in 1..=terms {
        power *= z;
        let term = power / k as f64;
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

/// Coefficient of `ln(q/p)` contributed by `cos^k`: the number of
/// `r ∈ 0..=k` with `2r ≠ k`, weighted by `C(k, r)`.
///
/// ```
/// use frullani::series::parity_weight;
///
/// assert_eq!(parity_weight(1).unwrap(), 2);
/// assert_eq!(parity_weight(4).unwrap(), 16 - 6);
/// ```
pub fn parity_weight(k: u32) -> Result<u64, SeriesError> {
    if k == 0 {
        return Err(SeriesError::Domain("parity weight needs k >= 1".into()));
    }
    let total = 1u128
        .checked_shl(k)
        .filter(|_| k < 128)
        .ok_or(SeriesError::Overflow(k))?;
    let weight = if k % 2 == 1 {
        total
    } else {
        total - central_binomial_u128(k / 2).ok_or(SeriesError::Overflow(k))?
    };
    u64::try_from(weight).map_err(|_| SeriesError::Overflow(k))
}

/// `C(2m, m)` exactly, or `None` past `u128`.
fn central_binomial_u128(m: u32) -> Option<u128> {
    let mut c: u128 = 1;
    for i in 1..=u128::from(m) {
        // C(2i, i) = C(2i-2, i-1) * (2i)(2i-1) / i², and the division is exact
        // after each of the two steps below
        c = c.checked_mul(2 * (2 * i - 1))? / i;
    }
    Some(c)
}

fn check_q(q: f64) -> Result<(), SeriesError> {
    if (0.0..=0.25).contains(&q) {
        Ok(())
    } else {
        Err(SeriesError::Domain(format!("Q must lie in [0, 1/4], got {q}")))
    }
}

/// `-2 ln(½(1 + √(1 - 4Q)))`.
pub fn central_binomial_closed(q: f64) -> Result<f64, SeriesError> {
    check_q(q)?;
    let root = (1.0 - 4.0 * q).max(0.0).sqrt();
    Ok(-2.0 * (0.5 * (1.0 + root)).ln())
}

/// `Σ_{k=1..K} C(2k, k) Q^k / k`, with `C(2k,k)Q^k` carried by the ratio
/// `Q(2k+1)(2k+2)/(k+1)²` between successive terms.
pub fn central_binomial_partial(q: f64, terms: usize) -> Result<f64, SeriesError> {
    check_q(q)?;
    let mut sum = 0.0;
    let mut term = 2.0 * q; // C(2,1) Q
    for k in 1..=terms {
        let kf = k as f64;
        sum += term / kf;
        term *= q * (2.0 * kf + 1.0) * (2.0 * kf + 2.0) / ((kf + 1.0) * (kf + 1.0));
    }
    Ok(sum)
}

/// Both sides of `1 - 4Q = ((a² - 1)/(a² + 1))²`.
///
/// Each side is evaluated as printed but in double-double arithmetic, since
/// both cancel to nearly nothing as `|a| -> 1` and plain `f64` would leave
/// only a few correct digits there.
pub fn discriminant_identity(a: f64) -> (f64, f64) {
    let one = Dd::from(1.0);
    let s = Dd::prod(a, a);
    let d = one.add(s);
    let lhs = one.sub(s.scale(4.0).div(d.mul(d)));
    let r = s.sub(one).div(s.add(one));
    (lhs.value(), r.mul(r).value())
}

/// An unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl From<f64> for Dd {
    fn from(hi: f64) -> Self {
        Dd { hi, lo: 0.0 }
    }
}

impl Dd {
    fn two_sum(a: f64, b: f64) -> Dd {
        let hi = a + b;
        let v = hi - a;
        Dd {
            hi,
            lo: (a - (hi - v)) + (b - v),
        }
    }

    fn prod(a: f64, b: f64) -> Dd {
        let hi = a * b;
        Dd {
            hi,
            lo: a.mul_add(b, -hi),
        }
    }

    fn renormalize(hi: f64, lo: f64) -> Dd {
        let s = hi + lo;
        Dd {
            hi: s,
            lo: lo - (s - hi),
        }
    }

    fn add(self, o: Dd) -> Dd {
        let s = Dd::two_sum(self.hi, o.hi);
        Dd::renormalize(s.hi, s.lo + self.lo + o.lo)
    }

    fn sub(self, o: Dd) -> Dd {
        self.add(Dd { hi: -o.hi, lo: -o.lo })
    }

    fn scale(self, k: f64) -> Dd {
        Dd {
            hi: self.hi * k,
            lo: self.lo * k,
        }
    }

    fn mul(self, o: Dd) -> Dd {
        let p = Dd::prod(self.hi, o.hi);
        Dd::renormalize(p.hi, p.lo + self.hi * o.lo + self.lo * o.hi)
    }

    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul(Dd::from(q1)));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul(Dd::from(q2)));
        let q3 = r.hi / o.hi;
        Dd::renormalize(q1, q2).add(Dd::from(q3))
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

fn check_scales(p: f64, q: f64) -> Result<(), SeriesError> {
    if p > 0.0 && q > 0.0 && p.is_finite() && q.is_finite() {
        Ok(())
    } else {
        Err(SeriesError::Domain(format!(
            "p and q must be positive, got p = {p}, q = {q}"
        )))
    }
}

/// `ln(q/p)`, arranged so that swapping `p` and `q` flips the sign exactly.
pub fn log_ratio(p: f64, q: f64) -> f64 {
    if q >= p {
        (q / p).ln()
    } else {
        -(p / q).ln()
    }
}

/// `2 ln(q/p) ln(1 + a)` for `|a| ≤ 1`, `2 ln(q/p) ln(1 + 1/a)` otherwise.
///
/// ```
/// use frullani::series::gr_4_324_2_closed;
///
/// let v = gr_4_324_2_closed(0.5, 1.0, 2.0).unwrap();
/// assert!((v - 2.0 * 2f64.ln() * 1.5f64.ln()).abs() < 1e-15);
/// assert_eq!(v, gr_4_324_2_closed(2.0, 1.0, 2.0).unwrap());
/// ```
pub fn gr_4_324_2_closed(a: f64, p: f64, q: f64) -> Result<f64, SeriesError> {
    SeriesParams::new(a)?;
    check_scales(p, q)?;
    let l = if a.abs() <= 1.0 { a.ln_1p() } else { (1.0 / a).ln_1p() };
    Ok(2.0 * log_ratio(p, q) * l)
}

/// The same value through `A` and `Q`:
/// `ln(q/p) [ln(1 + A) - ln(½(1 + √(1 - 4Q)))]`.
pub fn gr_4_324_2_closed_via_q(a: f64, p: f64, q: f64) -> Result<f64, SeriesError> {
    let params = SeriesParams::new(a)?;
    check_scales(p, q)?;
    let big_a = params.big_a();
    let half_central = 0.5 * central_binomial_closed(params.q())?;
    Ok(log_ratio(p, q) * (big_a.ln_1p() + half_central))
}

/// `ln(q/p) Σ_{k≤K} (-1)^(k-1) A^k/k + ½ ln(q/p) Σ_{k≤K/2} C(2k,k) Q^k/k`.
pub fn gr_4_324_2_series(a: f64, p: f64, q: f64, terms: usize) -> Result<f64, SeriesError> {
    let params = SeriesParams::new(a)?;
    check_scales(p, q)?;
    let l = log_ratio(p, q);
    let odd = log_series_partial(params.big_a(), terms)?;
    let even = central_binomial_partial(params.q(), terms / 2)?;
    Ok(l * odd + 0.5 * l * even)
}

/// `ln(b/a) ln((1 + n)²)`, the closed form listed for
/// `∫ ln(1 + 2n cos ax + n²) - ln(1 + 2n cos bx + n²)  dx/x` when `n² < 1`,
/// and `ln(b/a) ln((1 + 1/n)²)` when `n² > 1`.
pub fn ramanujan_3_7_closed(n: f64, a: f64, b: f64) -> Result<f64, SeriesError> {
    // the same arithmetic as gr_4_324_2_closed so the two agree bitwise
    gr_4_324_2_closed(n, a, b)
}

/// Numerically evaluates `∫₀^∞ (e^{ipx} - e^{iqx})/x dx` as the pair
/// `(∫ (cos px - cos qx)/x, ∫ (sin px - sin qx)/x)`, which should be
/// `(ln(q/p), 0)`.
pub fn imaginary_exponential_check(p: f64, q: f64, tol: f64) -> Result<(f64, f64), SeriesError> {
    check_scales(p, q)?;
    let spec = OscillatorySpec::for_frequencies(&[p, q])?;
    let real = integrate_frullani_oscillatory(|x: f64| ((p * x).cos() - (q * x).cos()) / x, &spec, tol)?;
    let imag = integrate_frullani_oscillatory(|x: f64| ((p * x).sin() - (q * x).sin()) / x, &spec, tol)?;
    for (part, r) in [("real", &real), ("imaginary", &imag)] {
        if !r.converged {
            let why = r.diagnostic.clone().unwrap_or_default();
            return Err(SeriesError::Oracle(format!("{part} part: {why}")));
        }
    }
    Ok((real.value, imag.value))
}

/// `2 ln 2`, the boundary value of [`central_binomial_closed`] at `Q = 1/4`.
pub const CENTRAL_BINOMIAL_AT_QUARTER: f64 = 2.0 * LN_2;

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ulps_apart(x: f64, y: f64) -> u64 {
        if x == y {
            return 0;
        }
        let scale = x.abs().max(y.abs());
        ((x - y).abs() / (scale * f64::EPSILON)).ceil() as u64
    }

    fn binomial_oracle(k: u32, r: u32) -> u128 {
        // Pascal's triangle, independent of the multiplicative recurrence
        let mut row = vec![1u128];
        for _ in 0..k {
            let mut next = vec![1u128; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
        }
        row[r as usize]
    }

    #[test]
    fn params_derivation() {
        let s = SeriesParams::new(0.5).unwrap();
        assert!((s.big_a() - 0.8).abs() < 1e-16);
        assert!((s.q() - 0.16).abs() < 1e-16);
        assert!(SeriesParams::new(-1.0).is_err());
        assert_eq!(SeriesParams::new(0.0).unwrap().q(), 0.0);
        assert_eq!(SeriesParams::new(1.0).unwrap().q(), 0.25);
    }

    #[test]
    fn log_series_examples() {
        assert_eq!(log_series_partial(0.0, 10).unwrap(), 0.0);
        assert!((log_series_partial(0.5, 60).unwrap() - 1.5f64.ln()).abs() < 1e-12);
        let k = 1_000_000;
        let err = (log_series_partial(1.0, k).unwrap() - LN_2).abs();
        assert!(err < 1.0 / k as f64 && err > 0.1 / k as f64);
        assert!(log_series_partial(-1.0, 3).is_err());
        assert!(log_series_partial(1.5, 3).is_err());
        assert_eq!(log_series_partial(0.3, 0).unwrap(), 0.0);
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_weight(1).unwrap(), 2);
        assert_eq!(parity_weight(2).unwrap(), 2);
        assert_eq!(parity_weight(4).unwrap(), 10);
        assert!(parity_weight(0).is_err());
    }

    #[test]
    fn parity_matches_brute_force() {
        for k in 1..=64u32 {
            let brute: u128 = (0..=k).filter(|r| 2 * r != k).map(|r| binomial_oracle(k, r)).sum();
            assert_eq!(u128::from(parity_weight(k).unwrap()), brute, "k = {k}");
        }
    }

    #[test]
    fn parity_overflow_is_rejected() {
        // 2^64 - C(64, 32) still fits; 2^65 does not
        assert!(parity_weight(64).is_ok());
        assert_eq!(parity_weight(65), Err(SeriesError::Overflow(65)));
        assert_eq!(parity_weight(66), Err(SeriesError::Overflow(66)));
        assert_eq!(parity_weight(200), Err(SeriesError::Overflow(200)));
    }

    #[test]
    fn central_binomial_examples() {
        assert_eq!(central_binomial_closed(0.0).unwrap(), 0.0);
        assert_eq!(central_binomial_partial(0.0, 50).unwrap(), 0.0);
        let expected = -2.0 * ((1.0 + 0.2f64.sqrt()) / 2.0).ln();
        assert!((central_binomial_closed(0.2).unwrap() - expected).abs() < 1e-15);
        assert!((central_binomial_closed(0.2).unwrap() - 0.647_014_26).abs() < 1e-8);
        assert!((central_binomial_closed(0.25).unwrap() - CENTRAL_BINOMIAL_AT_QUARTER).abs() < 1e-15);
        assert!(central_binomial_closed(0.26).is_err());
        assert!(central_binomial_partial(-0.01, 3).is_err());
    }

    #[test]
    fn central_binomial_terms_match_exact_coefficients() {
        // first few terms against exact binomials
        let q: f64 = 0.1;
        for k in 1..=20usize {
            let direct: f64 = (1..=k)
                .map(|j| binomial_oracle(2 * j as u32, j as u32) as f64 * q.powi(j as i32) / j as f64)
                .sum();
            let partial = central_binomial_partial(q, k).unwrap();
            assert!((partial - direct).abs() < 1e-14 * direct.max(1.0), "k = {k}");
        }
    }

    #[test]
    fn partial_sums_converge_where_the_series_is_fast() {
        for q in [0.0, 0.05, 0.1, 0.15, 0.2] {
            let diff = central_binomial_partial(q, 200).unwrap() - central_binomial_closed(q).unwrap();
            assert!(diff.abs() < 1e-10, "Q = {q}: {diff:e}");
        }
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant_identity(1.0), (0.0, 0.0));
        assert_eq!(discriminant_identity(0.0), (1.0, 1.0));
        let (l, r) = discriminant_identity(2.0);
        assert!((l - 0.36).abs() < 1e-15 && (r - 0.36).abs() < 1e-15);
    }

    #[test]
    fn closed_form_examples() {
        let target = 2.0 * LN_2 * 1.5f64.ln();
        assert_eq!(gr_4_324_2_closed(0.0, 1.0, 2.0).unwrap(), 0.0);
        assert_eq!(gr_4_324_2_closed(0.0, 3.0, 7.0).unwrap(), 0.0);
        assert!((gr_4_324_2_closed(0.5, 1.0, 2.0).unwrap() - target).abs() < 1e-15);
        assert!((gr_4_324_2_closed(2.0, 1.0, 2.0).unwrap() - target).abs() < 1e-15);
        assert!((target - 0.562_093_993).abs() < 1e-8);
        let at_one = gr_4_324_2_closed(1.0, 1.0, 2.0).unwrap();
        assert!((at_one - 2.0 * LN_2 * LN_2).abs() < 1e-15);
        assert!(gr_4_324_2_closed(-1.0, 1.0, 2.0).is_err());
        assert!(gr_4_324_2_closed(0.5, 0.0, 2.0).is_err());
    }

    #[test]
    fn both_branches_agree_at_one() {
        let (p, q) = (1.0, 2.0);
        let lower = 2.0 * log_ratio(p, q) * 1f64.ln_1p();
        let upper = 2.0 * log_ratio(p, q) * (1.0f64 / 1.0).ln_1p();
        assert!(ulps_apart(lower, upper) <= 4);
    }

    #[test]
    fn a_below_minus_one_uses_the_reciprocal_branch() {
        let v = gr_4_324_2_closed(-3.0, 1.0, 2.0).unwrap();
        assert!((v - 2.0 * LN_2 * (2.0f64 / 3.0).ln()).abs() < 1e-15);
        assert!(v < 0.0);
    }

    #[test]
    fn forms_through_q_agree() {
        for a in [-10.0, -3.0, -0.9, -0.5, 0.0, 0.1, 0.5, 0.99, 1.0, 1.5, 2.0, 10.0] {
            let direct = gr_4_324_2_closed(a, 1.0, 3.0).unwrap();
            let via_q = gr_4_324_2_closed_via_q(a, 1.0, 3.0).unwrap();
            assert!((direct - via_q).abs() < 1e-13 * direct.abs().max(1.0), "a = {a}");
        }
    }

    #[test]
    fn series_examples() {
        assert_eq!(gr_4_324_2_series(0.0, 1.0, 2.0, 17).unwrap(), 0.0);
        for a in [0.5, -0.5] {
            let closed = gr_4_324_2_closed(a, 1.0, 2.0).unwrap();
            let series = gr_4_324_2_series(a, 1.0, 2.0, 400).unwrap();
            assert!((series - closed).abs() < 1e-8, "a = {a}");
        }
        assert!(gr_4_324_2_closed(-0.5, 1.0, 2.0).unwrap() < 0.0);
    }

    #[test]
    fn ramanujan_alias_matches() {
        for n in [-0.9, -0.3, 0.2, 0.7, 1.0, 1.5, -4.0] {
            let direct = ramanujan_3_7_closed(n, 2.0, 5.0).unwrap();
            assert_eq!(direct, gr_4_324_2_closed(n, 2.0, 5.0).unwrap());
        }
        // printed form for n² < 1
        let n: f64 = 0.4;
        let printed = (5.0f64 / 2.0).ln() * ((1.0 + n) * (1.0 + n)).ln();
        assert!(ulps_apart(printed, ramanujan_3_7_closed(n, 2.0, 5.0).unwrap()) <= 4);
    }

    #[test]
    fn imaginary_exponential_examples() {
        let (re, im) = imaginary_exponential_check(1.0, 2.0, 1e-7).unwrap();
        assert!((re - LN_2).abs() < 1e-6 && im.abs() < 1e-6, "{re} {im}");
        let (re, im) = imaginary_exponential_check(2.0, 3.0, 1e-7).unwrap();
        assert!((re - 1.5f64.ln()).abs() < 1e-6 && im.abs() < 1e-6, "{re} {im}");
        assert_eq!(imaginary_exponential_check(1.5, 1.5, 1e-7).unwrap(), (0.0, 0.0));
    }

    proptest! {
        #[test]
        fn a_and_its_reciprocal_give_the_same_value(a in 0.01f64..100.0, p in 0.1f64..10.0, q in 0.1f64..10.0) {
            let x = gr_4_324_2_closed(a, p, q).unwrap();
            let y = gr_4_324_2_closed(1.0 / a, p, q).unwrap();
            prop_assert!(ulps_apart(x, y) <= 4, "{} vs {}", x, y);
        }

        #[test]
        fn discriminant_holds(a in -10.0f64..10.0) {
            prop_assume!(a != -1.0);
            let (l, r) = discriminant_identity(a);
            prop_assert!(ulps_apart(l, r) <= 4, "{} vs {}", l, r);
        }

        #[test]
        fn q_stays_in_range(a in -1e6f64..1e6) {
            prop_assume!(a != -1.0);
            let s = SeriesParams::new(a).unwrap();
            prop_assert!(s.big_a().abs() <= 1.0);
            prop_assert!((0.0..=0.25).contains(&s.q()));
        }

        #[test]
        fn series_error_shrinks_with_more_terms(a in -0.6f64..0.6) {
            let closed = gr_4_324_2_closed(a, 1.0, 2.0).unwrap();
            let mut previous = f64::INFINITY;
            for k in (20..=400).step_by(20) {
                let err = (gr_4_324_2_series(a, 1.0, 2.0, k).unwrap() - closed).abs();
                prop_assert!(err <= previous + 1e-15, "K = {}", k);
                previous = err;
            }
        }
    }
}

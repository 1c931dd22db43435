//! Saddle-point estimates for `d(n, l)`, the number of permutations of `n` points whose
//! cycles have length at most `l`.
//!
//! The saddle point `r` solves `r + r^2 + ... + r^l = n`. With it,
//! `d(n, l) ~ n! / sqrt(2 pi l n) * exp(sum_j r^j/j - n ln r)`. Writing `eta = n^{1/l}`,
//! the exponent `Phi(eta) = sum_j r^j/j - n ln(r/eta)` expands as
//! `beta_l eta^l + ... + beta_1 eta + beta_0 + O(1/eta)`, which gives a closed form.
//!
//! Everything is evaluated in log space. `ln n!` is an explicit sum of `ln j`, so the
//! ratio tests measure the saddle-point error alone.

use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use num_bigint::Sign;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use twofloat::TwoFloat;

use crate::cyclecount::restricted_counts;
use crate::error::{Error, Result};
use crate::exactnum::{ExactInt, ExactRat};
use crate::series::TruncatedEGF;

/// Newton iteration cap before falling back to bisection.
pub const NEWTON_MAX_ITER: u32 = 100;

/// Positive root of `r + r^2 + ... + r^l = n`.
#[derive(Debug, Clone, Copy)]
pub struct SaddleSolution {
    pub n: u64,
    pub l: usize,
    /// The root in double-double precision.
    pub r_plus: TwoFloat,
    /// `|r + ... + r^l - n|` at the returned root.
    pub residual: f64,
    pub iterations: u32,
    pub bisected: bool,
}

impl SaddleSolution {
    pub fn r(&self) -> f64 {
        self.r_plus.hi() + self.r_plus.lo()
    }
}

fn tf(x: f64) -> TwoFloat {
    TwoFloat::from(x)
}

/// `(r + ... + r^l - n, 1 + 2r + ... + l r^{l-1})` by Horner's rule.
fn saddle_poly(r: TwoFloat, l: usize, n: f64) -> (TwoFloat, TwoFloat) {
    let mut p = tf(0.0);
    let mut dp = tf(0.0);
    for _ in 0..l {
        dp = dp * r + p;
        p = p * r + tf(1.0);
    }
    // p = 1 + r + ... + r^{l-1} here
    dp = dp * r + p;
    (p * r - tf(n), dp)
}

/// Newton's method from `n^{1/l}`, with bisection on `[0, n]` if Newton fails to settle.
pub fn solve_saddle(n: u64, l: usize, tol: f64) -> Result<SaddleSolution> {
    if n == 0 || l == 0 || tol.is_nan() || tol <= 0.0 {
        return Err(Error::Precondition(
            "saddle point needs n >= 1, l >= 1 and tol > 0".into(),
        ));
    }
    let nf = n as f64;
    let hi = tf(nf);
    let in_bracket = |r: TwoFloat| r > tf(0.0) && r <= hi;

    let mut r = tf(nf.powf(1.0 / l as f64));
    let mut iterations = 0;
    let mut converged = false;
    while iterations < NEWTON_MAX_ITER {
        iterations += 1;
        let (p, dp) = saddle_poly(r, l, nf);
        let step = p / dp;
        r -= step;
        if !in_bracket(r) {
            break;
        }
        let small_step = step.abs() <= r * tf(1e-30);
        if small_step && saddle_poly(r, l, nf).0.abs() < tf(tol) {
            converged = true;
            break;
        }
    }
    let mut bisected = false;
    if !converged {
        bisected = true;
        let (mut a, mut b) = (tf(0.0), hi);
        for _ in 0..220 {
            let mid = (a + b) / tf(2.0);
            if saddle_poly(mid, l, nf).0 < tf(0.0) {
                a = mid;
            } else {
                b = mid;
            }
            iterations += 1;
        }
        r = (a + b) / tf(2.0);
    }
    let residual = saddle_poly(r, l, nf).0.abs();
    let residual = residual.hi() + residual.lo();
    if residual.is_nan() || residual >= tol {
        return Err(Error::NonConvergence { n, l, residual });
    }
    Ok(SaddleSolution {
        n,
        l,
        r_plus: r,
        residual,
        iterations,
        bisected,
    })
}

/// `ln n!` as an explicit sum of logarithms.
pub fn ln_factorial(n: u64) -> f64 {
    let s = (2..=n).fold(tf(0.0), |acc, j| acc + tf((j as f64).ln()));
    s.hi() + s.lo()
}

/// Natural logarithm of a positive big integer.
pub fn ln_big(x: &ExactInt) -> f64 {
    assert!(x.sign() == Sign::Plus, "ln of a non-positive integer");
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

/// `sum_j r^j / j` in double-double.
fn cycle_sum_at(r: TwoFloat, l: usize) -> TwoFloat {
    let mut pow = tf(1.0);
    let mut s = tf(0.0);
    for j in 1..=l {
        pow *= r;
        s += pow / tf(j as f64);
    }
    s
}

/// The saddle-point estimate, kept as a logarithm.
#[derive(Debug, Clone, Copy)]
pub struct SaddleEstimate {
    pub n: u64,
    pub l: usize,
    pub r_plus: f64,
    pub ln_estimate: f64,
}

impl SaddleEstimate {
    /// May overflow to infinity; the logarithm never does.
    pub fn estimate(&self) -> f64 {
        self.ln_estimate.exp()
    }
}

/// `n! / sqrt(2 pi l n) * exp(sum_j r^j/j - n ln r)` at the saddle point.
pub fn estimate_saddle(n: u64, l: usize) -> Result<SaddleEstimate> {
    let sol = solve_saddle(n, l, 1e-10)?;
    let exponent = cycle_sum_at(sol.r_plus, l);
    let exponent = exponent.hi() + exponent.lo();
    let r = sol.r();
    let ln_estimate = ln_factorial(n) - 0.5 * (std::f64::consts::TAU * l as f64 * n as f64).ln()
        + exponent
        - n as f64 * r.ln();
    Ok(SaddleEstimate {
        n,
        l,
        r_plus: r,
        ln_estimate,
    })
}

fn rat(n: i64, d: i64) -> ExactRat {
    ExactRat::new(ExactInt::from(n), ExactInt::from(d))
}

/// `beta_0 = -(1/l) sum_{j=2}^{l} 1/j`
fn beta_zero(l: usize) -> ExactRat {
    let h = (2..=l as i64).fold(ExactRat::zero(), |acc, j| acc + rat(1, j));
    -h / ExactInt::from(l)
}

/// The closed-form coefficient `beta_k`. For `k = 0` and `k = l` these are the exact values;
/// for `0 < k < l` this is the product formula
/// `(1/(k (l-k)!)) prod_{i=1}^{l-1} ((l-k)/l + i)`, which disagrees with
/// [`beta_series_extraction`] and is kept for comparison.
pub fn beta_closed_form(l: usize, k: usize) -> Result<ExactRat> {
    if l == 0 || k > l {
        return Err(Error::Precondition(format!("need 0 <= k <= l, l >= 1; got l = {l}, k = {k}")));
    }
    if k == 0 {
        return Ok(beta_zero(l));
    }
    if k == l {
        return Ok(rat(1, l as i64));
    }
    let base = rat((l - k) as i64, l as i64);
    let prod = (1..l as i64).fold(ExactRat::one(), |acc, i| acc * (&base + rat(i, 1)));
    let fact: ExactInt = (1..=(l - k) as u64).product();
    Ok(prod / (fact * ExactInt::from(k)))
}

/// `beta_k = (l / (k (l-k))) [u^{l-k}] S(u)^{(l-k)/l}` with `S(u) = 1 + u + ... + u^{l-1}`,
/// the residue of `eta(r)^{l-k} / r` where `eta(r) = r S(1/r)^{1/l}`. The power comes from
/// the generalized binomial series truncated at `order`.
pub fn beta_series_extraction(l: usize, k: usize, order: usize) -> Result<ExactRat> {
    if k == 0 || k >= l {
        return Err(Error::Precondition(format!(
            "series extraction needs 0 < k < l; got l = {l}, k = {k}"
        )));
    }
    let need = l - k;
    if order < need {
        return Err(Error::InsufficientOrder { have: order, need });
    }
    let s = TruncatedEGF::from_ints(&vec![1; l], order);
    let p = s.pow_rational(&rat((l - k) as i64, l as i64))?;
    Ok(p.coeff(need) * rat(l as i64, (k * (l - k)) as i64))
}

/// `beta_0..=beta_l` from both sources.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaCoefficients {
    pub l: usize,
    /// Closed forms, with the product formula for `0 < k < l`.
    pub printed: Vec<ExactRat>,
    /// Closed forms at the ends, series extraction in between.
    pub extracted: Vec<ExactRat>,
}

impl BetaCoefficients {
    pub fn new(l: usize) -> Result<Self> {
        let printed = (0..=l)
            .map(|k| beta_closed_form(l, k))
            .collect::<Result<Vec<_>>>()?;
        let extracted = (0..=l)
            .map(|k| {
                if k == 0 || k == l {
                    beta_closed_form(l, k)
                } else {
                    beta_series_extraction(l, k, l)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            l,
            printed,
            extracted,
        })
    }

    pub fn get(&self, source: BetaSource) -> &[ExactRat] {
        match source {
            BetaSource::Printed => &self.printed,
            BetaSource::Extracted => &self.extracted,
        }
    }
}

/// Which `beta_k` feed the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaSource {
    Printed,
    Extracted,
}

/// The closed-form estimate assembled two ways from the same coefficients.
#[derive(Debug, Clone, Copy)]
pub struct ClosedFormEstimate {
    pub n: u64,
    pub l: usize,
    pub source: BetaSource,
    /// `-ln(l)/2 + n(1-1/l) ln n + beta_0 + n/l + sum_{k=1}^{l-1} beta_k n^{k/l}`.
    pub ln_as_printed: f64,
    /// `-ln(l)/2 + n(1-1/l) ln n - n + sum_{k=0}^{l} beta_k n^{k/l}`, consistent with Stirling.
    pub ln_stirling: f64,
}

/// Both closed-form assemblies at `n`.
pub fn estimate_closed_form(n: u64, l: usize, source: BetaSource) -> Result<ClosedFormEstimate> {
    if n == 0 || l == 0 {
        return Err(Error::Precondition("closed form needs n >= 1, l >= 1".into()));
    }
    let betas = BetaCoefficients::new(l)?;
    let b: Vec<f64> = betas
        .get(source)
        .iter()
        .map(|x| x.to_f64().expect("finite"))
        .collect();
    let nf = n as f64;
    let lf = l as f64;
    let head = -0.5 * lf.ln() + nf * (1.0 - 1.0 / lf) * nf.ln();
    let middle: f64 = (1..l).map(|k| b[k] * nf.powf(k as f64 / lf)).sum();
    Ok(ClosedFormEstimate {
        n,
        l,
        source,
        ln_as_printed: head + b[0] + nf / lf + middle,
        ln_stirling: head - nf + b[0] + middle + b[l] * nf,
    })
}

/// One row of an exact-versus-estimate comparison.
#[derive(Debug, Clone)]
pub struct RatioRow {
    pub n: u64,
    pub l: usize,
    pub exact: ExactInt,
    pub ln_exact: f64,
    pub ln_estimate: f64,
    /// `exact / estimate`
    pub ratio: f64,
    /// `ln(exact) - ln(estimate)`
    pub log_error: f64,
}

impl RatioRow {
    pub const CSV_HEADER: &'static str = "n,l,exact,estimate,ratio,log_error";

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{:.12},{:.6e}",
            self.n,
            self.l,
            self.exact,
            sci_from_ln(self.ln_estimate),
            self.ratio,
            self.log_error
        )
    }
}

/// `e^x` in scientific notation, without overflowing for large `x`.
fn sci_from_ln(x: f64) -> String {
    let t = x / std::f64::consts::LN_10;
    let mut e = t.floor();
    let mut m = 10f64.powf(t - e);
    // rounding the mantissa to 12 places can carry into the exponent
    if format!("{m:.12}").starts_with("10") {
        m /= 10.0;
        e += 1.0;
    }
    format!("{m:.12}e{e}")
}

/// Compares the saddle-point estimate with exact `d(n, l)` for each `n`, in input order.
pub fn ratio_sweep(ns: &[u64], l: usize) -> Result<Vec<RatioRow>> {
    let top = ns.iter().copied().max().unwrap_or(0);
    let exact = restricted_counts(top, l);
    ns.par_iter()
        .map(|&n| {
            let est = estimate_saddle(n, l)?;
            let d = exact[n as usize].clone();
            let ln_exact = ln_big(&d);
            let log_error = ln_exact - est.ln_estimate;
            Ok(RatioRow {
                n,
                l,
                exact: d,
                ln_exact,
                ln_estimate: est.ln_estimate,
                ratio: log_error.exp(),
                log_error,
            })
        })
        .collect()
}

/// One comparison row for the saddle estimate alone.
pub fn compare_saddle(n: u64, l: usize) -> Result<RatioRow> {
    Ok(ratio_sweep(&[n], l)?.remove(0))
}

/// `Phi(eta) = sum_j r^j/j - n ln(r/eta)` at `eta = n^{1/l}`.
pub fn phi(n: u64, l: usize) -> Result<f64> {
    let sol = solve_saddle(n, l, 1e-10)?;
    let eta = (n as f64).powf(1.0 / l as f64);
    let gap = sol.r_plus - tf(eta);
    let gap = (gap.hi() + gap.lo()) / eta;
    let s = cycle_sum_at(sol.r_plus, l);
    Ok(s.hi() + s.lo() - n as f64 * gap.ln_1p())
}

/// Least-squares recovery of `beta_l` and `beta_0` from sampled `Phi`.
#[derive(Debug, Clone)]
pub struct BetaFit {
    pub l: usize,
    pub samples: usize,
    /// Fitted coefficients of `eta^l, eta^{l-1}, ..., eta^{-NEG}`.
    pub coefficients: Vec<f64>,
}

impl BetaFit {
    /// Fitted coefficient of `eta^k` for `k <= l`.
    pub fn beta(&self, k: usize) -> f64 {
        self.coefficients[self.l - k]
    }
}

const FIT_NEGATIVE_POWERS: usize = 4;

/// Fits `Phi(eta)` over `samples` log-spaced `n` in `[n_lo, n_hi]` to a Laurent
/// polynomial in `eta` with powers `l` down to `-4`.
pub fn fit_beta(l: usize, n_lo: u64, n_hi: u64, samples: usize) -> Result<BetaFit> {
    let cols = l + 1 + FIT_NEGATIVE_POWERS;
    if samples < cols || n_lo < 2 || n_hi <= n_lo {
        return Err(Error::Precondition(format!(
            "fit needs at least {cols} samples over a nontrivial range"
        )));
    }
    let (a, b) = ((n_lo as f64).ln(), (n_hi as f64).ln());
    let ns: Vec<u64> = (0..samples)
        .map(|i| (a + (b - a) * i as f64 / (samples - 1) as f64).exp().round() as u64)
        .collect();
    let ys = ns
        .par_iter()
        .map(|&n| phi(n, l))
        .collect::<Result<Vec<_>>>()?;
    let powers: Vec<i32> = (0..cols).map(|c| l as i32 - c as i32).collect();
    let mut m = DMatrix::from_fn(samples, cols, |i, c| {
        (ns[i] as f64).powf(powers[c] as f64 / l as f64)
    });
    let scales: Vec<f64> = (0..cols).map(|c| m.column(c).amax()).collect();
    for (c, s) in scales.iter().enumerate() {
        m.column_mut(c).scale_mut(1.0 / s);
    }
    let y = DVector::from_vec(ys);
    let sol = m
        .svd(true, true)
        .solve(&y, 1e-15)
        .map_err(|e| Error::Precondition(format!("least squares failed: {e}")))?;
    Ok(BetaFit {
        l,
        samples,
        coefficients: (0..cols).map(|c| sol[c] / scales[c]).collect(),
    })
}

/// Fit over the standard range `10^4..10^6` with 60 samples.
pub fn fit_beta_default(l: usize) -> Result<BetaFit> {
    fit_beta(l, 10_000, 1_000_000, 60)
}

/// Plain-text comparison of the printed and extracted coefficients and of both
/// closed-form assemblies against the exact count at `n`.
pub fn discrepancy_report(l: usize, n: u64) -> Result<String> {
    let betas = BetaCoefficients::new(l)?;
    let mut out = String::new();
    writeln!(out, "l = {l}").unwrap();
    writeln!(out, "k\tprinted\textracted").unwrap();
    for k in 0..=l {
        writeln!(out, "{k}\t{}\t{}", betas.printed[k], betas.extracted[k]).unwrap();
    }
    let row = compare_saddle(n, l)?;
    writeln!(out, "n = {n}: ln exact = {:.6}", row.ln_exact).unwrap();
    writeln!(out, "saddle estimate: ratio {:.6}", row.ratio).unwrap();
    for source in [BetaSource::Printed, BetaSource::Extracted] {
        let c = estimate_closed_form(n, l, source)?;
        writeln!(
            out,
            "{source:?} coefficients: as-printed ln ratio {:.6e}, Stirling-consistent ratio {:.6}",
            row.ln_exact - c.ln_as_printed,
            (row.ln_exact - c.ln_stirling).exp()
        )
        .unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scientific_from_log() {
        assert_eq!(sci_from_ln(0.0), "1.000000000000e0");
        assert_eq!(sci_from_ln(100f64.ln()), "1.000000000000e2");
        assert_eq!(sci_from_ln(2.5e3f64.ln()), "2.500000000000e3");
        assert!(sci_from_ln(5000.0).ends_with("e2171"));
    }

    #[test]
    fn saddle_roots() {
        let s = solve_saddle(37, 1, 1e-12).unwrap();
        assert_eq!(s.r(), 37.0);
        let s = solve_saddle(100, 2, 1e-12).unwrap();
        let expected = (401f64.sqrt() - 1.0) / 2.0;
        assert!((s.r() - expected).abs() < 1e-12);
        assert!(s.residual < 1e-12);
        // bisection oracle in plain f64
        let f = |r: f64| r + r * r + r * r * r - 1000.0;
        let (mut a, mut b) = (0.0, 1000.0);
        for _ in 0..200 {
            let m = (a + b) / 2.0;
            if f(m) < 0.0 {
                a = m
            } else {
                b = m
            }
        }
        let s = solve_saddle(1000, 3, 1e-12).unwrap();
        assert!((s.r() - a).abs() < 1e-10);
        assert!((s.r() - 9.64531052).abs() < 1e-7);
        assert!(solve_saddle(0, 2, 1e-10).is_err());
        assert!(solve_saddle(5, 2, 0.0).is_err());
    }

    #[test]
    fn saddle_residuals_at_scale() {
        for l in 1..=6 {
            for n in [1u64, 2, 10, 1000, 1_000_000] {
                let s = solve_saddle(n, l, 1e-10).unwrap();
                assert!(s.residual < 1e-10, "n = {n}, l = {l}");
                assert!(s.r() > 0.0 && s.r() <= n as f64);
            }
        }
    }

    #[test]
    fn big_logs() {
        assert!((ln_big(&ExactInt::from(1000)) - 1000f64.ln()).abs() < 1e-12);
        let big = ExactInt::from(3).pow(2000);
        assert!((ln_big(&big) - 2000.0 * 3f64.ln()).abs() < 1e-9);
        assert!((ln_factorial(10) - 3628800f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn saddle_ratios() {
        let r100 = compare_saddle(100, 2).unwrap();
        assert!((0.9..=1.1).contains(&r100.ratio));
        let r500 = compare_saddle(500, 2).unwrap();
        assert!((r500.ratio - 1.0).abs() < (r100.ratio - 1.0).abs());
        let r = compare_saddle(200, 3).unwrap();
        assert!((0.85..=1.15).contains(&r.ratio));
    }

    #[test]
    fn closed_form_betas() {
        assert_eq!(beta_closed_form(2, 2).unwrap(), rat(1, 2));
        assert_eq!(beta_closed_form(2, 0).unwrap(), rat(-1, 4));
        assert_eq!(beta_closed_form(2, 1).unwrap(), rat(3, 2));
        assert_eq!(beta_closed_form(3, 1).unwrap(), rat(20, 9));
        assert_eq!(beta_closed_form(3, 2).unwrap(), rat(14, 9));
        assert!(beta_closed_form(2, 3).is_err());
    }

    #[test]
    fn extracted_betas() {
        assert_eq!(beta_series_extraction(2, 1, 10).unwrap(), rat(1, 1));
        assert_eq!(beta_series_extraction(3, 1, 12).unwrap(), rat(5, 6));
        assert_eq!(beta_series_extraction(3, 2, 12).unwrap(), rat(1, 2));
        assert_eq!(beta_series_extraction(4, 1, 4).unwrap(), rat(77, 96));
        assert_eq!(beta_series_extraction(5, 3, 5).unwrap(), rat(7, 30));
        assert!(matches!(
            beta_series_extraction(5, 1, 3),
            Err(Error::InsufficientOrder { have: 3, need: 4 })
        ));
        // more order does not change the extracted coefficient
        assert_eq!(
            beta_series_extraction(4, 2, 4).unwrap(),
            beta_series_extraction(4, 2, 20).unwrap()
        );
    }

    #[test]
    fn closed_form_assemblies() {
        let exact = compare_saddle(500, 2).unwrap();
        let c = estimate_closed_form(500, 2, BetaSource::Extracted).unwrap();
        assert!((0.9..=1.1).contains(&(exact.ln_exact - c.ln_stirling).exp()));
        // the as-printed assembly is off by roughly e^n
        let p = estimate_closed_form(500, 2, BetaSource::Printed).unwrap();
        assert!((exact.ln_exact - p.ln_as_printed).abs() > 100.0);
        let exact = compare_saddle(100, 4).unwrap();
        let c = estimate_closed_form(100, 4, BetaSource::Extracted).unwrap();
        assert!((0.8..=1.2).contains(&(exact.ln_exact - c.ln_stirling).exp()));
    }

    #[test]
    fn closed_form_tracks_saddle() {
        for n in [200u64, 400, 1000] {
            let s = estimate_saddle(n, 2).unwrap();
            let c = estimate_closed_form(n, 2, BetaSource::Extracted).unwrap();
            assert!((s.ln_estimate - c.ln_stirling).exp_m1().abs() < 0.02, "n = {n}");
        }
    }

    #[test]
    fn fitted_betas() {
        for l in 2..=4 {
            let fit = fit_beta_default(l).unwrap();
            let b0 = beta_closed_form(l, 0).unwrap().to_f64().unwrap();
            assert!((fit.beta(l) - 1.0 / l as f64).abs() < 1e-3);
            assert!((fit.beta(0) - b0).abs() < 1e-3, "l = {l}: {}", fit.beta(0));
        }
    }
}

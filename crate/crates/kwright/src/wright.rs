//! The generalized K-Wright function ₚΨqᵏ: parameter bundle, convergence
//! classification and direct series evaluation.
//!
//! ₚΨqᵏ(z) = Σₙ [Πᵢ Γ_k(aᵢ+nαᵢ) / Πⱼ Γ_k(bⱼ+nβⱼ)] zⁿ/n!
//!
//! Convergence is governed by
//!
//!   Δ = Σ βⱼ/k − Σ αᵢ/k,
//!   δ = Π |αᵢ/k|^(−αᵢ/k) · Π |βⱼ/k|^(βⱼ/k),
//!   μ = Σ bⱼ/k − Σ aᵢ/k + (p−q)/2:
//!
//! Δ > −1 gives an entire function; Δ = −1 gives absolute convergence on
//! |z| < δ, and on |z| = δ when Re(μ) > 1/2. Nothing is claimed for the
//! remaining boundary cases, and evaluation refuses them.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::log_gamma_k;

/// Default hard cap on summed terms.
pub const DEFAULT_TERM_CAP: usize = 10_000;

/// Tolerance for detecting the Δ = −1 regime and the |z| = δ boundary.
const DELTA_TOL: f64 = 1e-12;

/// One (offset, step) entry: the series term carries Γ_k(offset + n·step).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPair {
    pub offset: Complex64,
    pub step: f64,
}

impl ParamPair {
    pub fn new(offset: Complex64, step: f64) -> Self {
        Self { offset, step }
    }

    pub fn real(offset: f64, step: f64) -> Self {
        Self {
            offset: Complex64::new(offset, 0.0),
            step,
        }
    }
}

/// The (k; (aᵢ, αᵢ); (bⱼ, βⱼ)) bundle of ₚΨqᵏ.
///
/// Pole-freedom of the summed Γ_k arguments is checked lazily, term by term,
/// during evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct WrightParams {
    pub k: f64,
    pub upper: Vec<ParamPair>,
    pub lower: Vec<ParamPair>,
}

impl WrightParams {
    pub fn new(k: f64, upper: Vec<ParamPair>, lower: Vec<ParamPair>) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::Domain(format!("k must be a positive real, got {k}")));
        }
        for (side, list) in [("upper", &upper), ("lower", &lower)] {
            for (i, pair) in list.iter().enumerate() {
                if pair.step == 0.0 || !pair.step.is_finite() {
                    return Err(Error::Domain(format!(
                        "{side}[{i}] has step {} (must be nonzero finite)",
                        pair.step
                    )));
                }
            }
        }
        Ok(Self { k, upper, lower })
    }

    /// Series with no gamma factors at all: ₀Ψ₀ᵏ(z) = eᶻ.
    pub fn empty(k: f64) -> Result<Self> {
        Self::new(k, Vec::new(), Vec::new())
    }

    pub fn p(&self) -> usize {
        self.upper.len()
    }

    pub fn q(&self) -> usize {
        self.lower.len()
    }
}

// Wire format: {"k": real, "upper": [[a_re, a_im, alpha], ...], "lower": [...]}
#[derive(Serialize, Deserialize)]
struct WrightParamsWire {
    k: f64,
    upper: Vec<[f64; 3]>,
    lower: Vec<[f64; 3]>,
}

impl Serialize for WrightParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let enc = |list: &[ParamPair]| -> Vec<[f64; 3]> {
            list.iter()
                .map(|p| [p.offset.re, p.offset.im, p.step])
                .collect()
        };
        WrightParamsWire {
            k: self.k,
            upper: enc(&self.upper),
            lower: enc(&self.lower),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WrightParams {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = WrightParamsWire::deserialize(d)?;
        let dec = |list: Vec<[f64; 3]>| -> Vec<ParamPair> {
            list.into_iter()
                .map(|[re, im, step]| ParamPair::new(Complex64::new(re, im), step))
                .collect()
        };
        WrightParams::new(wire.k, dec(wire.upper), dec(wire.lower))
            .map_err(serde::de::Error::custom)
    }
}

/// The convergence invariants (Δ, δ, μ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceData {
    pub delta_cap: f64,
    pub delta_radius: f64,
    pub mu: Complex64,
}

/// Where a given argument sits relative to the convergence statement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConvergenceClass {
    /// Δ > −1: entire in z.
    Entire,
    /// Δ = −1 and |z| strictly inside the disk of this radius.
    DiskInterior(f64),
    /// Δ = −1, |z| on the boundary circle, Re(μ) > 1/2: still convergent.
    DiskBoundary(f64),
    /// Δ = −1 but the point is not covered by any convergence clause
    /// (outside the disk, or on the boundary with Re(μ) ≤ 1/2).
    NotGuaranteed(f64),
    /// Δ < −1: the classification applies to no z.
    OutsideTheoremScope,
}

impl ConvergenceClass {
    pub fn is_convergent(&self) -> bool {
        matches!(
            self,
            ConvergenceClass::Entire
                | ConvergenceClass::DiskInterior(_)
                | ConvergenceClass::DiskBoundary(_)
        )
    }
}

impl std::fmt::Display for ConvergenceClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConvergenceClass::Entire => write!(f, "entire"),
            ConvergenceClass::DiskInterior(d) => write!(f, "convergent in |z| < {d}"),
            ConvergenceClass::DiskBoundary(d) => {
                write!(f, "convergent on |z| = {d} (Re(mu) > 1/2)")
            }
            ConvergenceClass::NotGuaranteed(d) => {
                write!(f, "not guaranteed convergent (|z| < {d} required)")
            }
            ConvergenceClass::OutsideTheoremScope => {
                write!(f, "outside classification (delta < -1)")
            }
        }
    }
}

/// Compute (Δ, δ, μ) for a parameter bundle.
pub fn convergence_data(params: &WrightParams) -> ConvergenceData {
    let k = params.k;
    let mut delta = 0.0;
    let mut radius = 1.0;
    let mut mu = Complex64::new((params.p() as f64 - params.q() as f64) / 2.0, 0.0);
    for pair in &params.upper {
        let s = pair.step / k;
        delta -= s;
        radius *= s.abs().powf(-s);
        mu -= pair.offset / k;
    }
    for pair in &params.lower {
        let s = pair.step / k;
        delta += s;
        radius *= s.abs().powf(s);
        mu += pair.offset / k;
    }
    ConvergenceData {
        delta_cap: delta,
        delta_radius: radius,
        mu,
    }
}

/// Classify an argument per the convergence statement.
pub fn classify(params: &WrightParams, z: Complex64) -> ConvergenceClass {
    let cd = convergence_data(params);
    if (cd.delta_cap + 1.0).abs() <= DELTA_TOL {
        let r = z.norm();
        let d = cd.delta_radius;
        if (r - d).abs() <= DELTA_TOL * d {
            if cd.mu.re > 0.5 {
                ConvergenceClass::DiskBoundary(d)
            } else {
                ConvergenceClass::NotGuaranteed(d)
            }
        } else if r < d {
            ConvergenceClass::DiskInterior(d)
        } else {
            ConvergenceClass::NotGuaranteed(d)
        }
    } else if cd.delta_cap > -1.0 {
        ConvergenceClass::Entire
    } else {
        ConvergenceClass::OutsideTheoremScope
    }
}

/// A converged series evaluation together with its error estimate.
#[derive(Debug, Clone, Copy)]
pub struct SeriesEval {
    pub value: Complex64,
    /// Magnitude of the largest trailing term — the truncation estimate
    /// backing the stop rule.
    pub est_error: f64,
    pub terms: usize,
}

// λ_n = Σ logΓ_k(aᵢ+nαᵢ) − Σ logΓ_k(bⱼ+nβⱼ); errors name the offending index.
fn log_term_coefficient(params: &WrightParams, n: usize) -> Result<Complex64> {
    let nf = n as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, pair) in params.upper.iter().enumerate() {
        acc += log_gamma_k(pair.offset + nf * pair.step, params.k).map_err(|e| match e {
            Error::Pole { z, .. } => Error::pole(z, format!("term n = {n}, upper[{i}]")),
            other => other,
        })?;
    }
    for (j, pair) in params.lower.iter().enumerate() {
        acc -= log_gamma_k(pair.offset + nf * pair.step, params.k).map_err(|e| match e {
            Error::Pole { z, .. } => Error::pole(z, format!("term n = {n}, lower[{j}]")),
            other => other,
        })?;
    }
    Ok(acc)
}

fn term_value(
    params: &WrightParams,
    n: usize,
    ln_z: Complex64,
    ln_nfact: f64,
) -> Result<Complex64> {
    let lam = log_term_coefficient(params, n)? + (n as f64) * ln_z - ln_nfact;
    if lam.re > 709.0 {
        return Err(Error::Overflow(format!(
            "series term n = {n} exceeds double range (log magnitude {:.1})",
            lam.re
        )));
    }
    Ok(lam.exp())
}

/// Evaluate ₚΨqᵏ(z) with the default term cap.
pub fn eval_kwright(params: &WrightParams, z: Complex64, tol: f64) -> Result<Complex64> {
    eval_kwright_with_cap(params, z, tol, DEFAULT_TERM_CAP).map(|r| r.value)
}

/// Evaluate ₚΨqᵏ(z), reporting the truncation estimate and term count.
///
/// Refuses arguments the classifier does not cover. Terms are computed in
/// the log domain (sums of log Γ_k) and exponentiated, so large parameters
/// cannot overflow mid-product; only a genuinely out-of-range term raises.
pub fn eval_kwright_with_cap(
    params: &WrightParams,
    z: Complex64,
    tol: f64,
    cap: usize,
) -> Result<SeriesEval> {
    if tol <= 0.0 {
        return Err(Error::Domain("tol must be positive".into()));
    }
    let class = classify(params, z);
    if !class.is_convergent() {
        return Err(Error::Domain(format!("refusing z = {z}: series is {class}")));
    }
    let first = log_term_coefficient(params, 0)?.exp();
    if z.norm() == 0.0 {
        return Ok(SeriesEval {
            value: first,
            est_error: 0.0,
            terms: 1,
        });
    }
    let ln_z = z.ln();
    let mut ln_nfact = 0.0;
    let mut sum = first;
    let mut small = 0u32;
    let mut trailing: [f64; 3] = [f64::INFINITY; 3];
    for n in 1..cap.max(2) {
        ln_nfact += (n as f64).ln();
        let term = term_value(params, n, ln_z, ln_nfact)?;
        sum += term;
        if !sum.is_finite() {
            return Err(Error::Overflow(format!("partial sum overflow at term {n}")));
        }
        let mag = term.norm();
        trailing = [trailing[1], trailing[2], mag];
        if mag <= tol * sum.norm() {
            small += 1;
            if small >= 3 {
                return Ok(SeriesEval {
                    value: sum,
                    est_error: trailing.iter().cloned().fold(0.0, f64::max),
                    terms: n + 1,
                });
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence {
        count: cap,
        unit: "terms",
        context: format!("K-Wright series at z = {z}"),
    })
}

/// Exact partial sum of the first `n_terms` terms (no convergence gate).
///
/// This is the truncation the operator identities commute with term by
/// term, so the quadrature comparisons use it on both sides.
pub fn eval_kwright_partial(
    params: &WrightParams,
    z: Complex64,
    n_terms: usize,
) -> Result<Complex64> {
    let coeffs = series_coefficients(params, n_terms)?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zn = Complex64::new(1.0, 0.0);
    for (n, c) in coeffs.iter().enumerate() {
        if n > 0 {
            zn *= z;
        }
        sum += c * zn;
    }
    Ok(sum)
}

/// The first `n_terms` coefficients ΠΓ_k(aᵢ+nαᵢ)/ΠΓ_k(bⱼ+nβⱼ)/n! of the
/// series, for callers that assemble the truncated sum themselves.
pub fn series_coefficients(params: &WrightParams, n_terms: usize) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(n_terms);
    let mut ln_nfact = 0.0;
    for n in 0..n_terms {
        if n > 0 {
            ln_nfact += (n as f64).ln();
        }
        let lam = log_term_coefficient(params, n)? - ln_nfact;
        if lam.re > 709.0 {
            return Err(Error::Overflow(format!(
                "series coefficient n = {n} exceeds double range"
            )));
        }
        out.push(lam.exp());
    }
    Ok(out)
}

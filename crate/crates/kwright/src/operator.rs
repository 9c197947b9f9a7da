//! Closed-form operator images.
//!
//! The Marichev-Saigo-Maeda (MSM) operators carry five parameters
//! (α, α′, β, β′, γ) and come in three kinds per side: the integral, the
//! derivative built as d^m/dx^m of an integral with substituted parameters
//! (m = ⌊Re γ⌋ + 1), and the Caputo variant that differentiates the operand
//! first. Applied to a power t^(ρ−1) (left) or t^(−ρ) (right) they return a
//! gamma-ratio coefficient times a power of x; applied to a power-weighted
//! K-Wright series they return a K-Wright series of order (p+3, q+3) whose
//! appended parameter pairs are exact affine maps of the operator
//! parameters. Saigo (₂F₁-kernel) and Erdélyi-Kober operators are the
//! specialisations obtained through
//!
//!   I^{α,0,β,β′,γ}  = Saigo I^{γ, α−γ, −β}        (integrals)
//!   D^{0,α′,β,β′,γ} = Saigo D^{γ, α′−γ, β′−γ}     (derivatives, Caputo)
//!
//! and their images append two pairs (Saigo) or one (Erdélyi-Kober) per
//! side instead of three.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{gamma, recip_gamma};
use crate::wright::{
    convergence_data, eval_kwright_partial, eval_kwright_with_cap, ParamPair, WrightParams,
    DEFAULT_TERM_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    Integral,
    Derivative,
    #[serde(rename = "caputo")]
    CaputoDerivative,
}

/// Five-parameter MSM operator (plus side and kind).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MsmParams {
    #[serde(with = "complex_pair")]
    pub alpha: Complex64,
    #[serde(with = "complex_pair")]
    pub alpha_prime: Complex64,
    #[serde(with = "complex_pair")]
    pub beta: Complex64,
    #[serde(with = "complex_pair")]
    pub beta_prime: Complex64,
    #[serde(with = "complex_pair")]
    pub gamma: Complex64,
    pub side: Side,
    pub kind: OperatorKind,
}

/// Three-parameter Saigo operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaigoParams {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub side: Side,
    pub kind: OperatorKind,
}

/// Two-parameter Erdélyi-Kober operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EkParams {
    pub alpha: Complex64,
    pub gamma: Complex64,
    pub side: Side,
    pub kind: OperatorKind,
}

/// Operators served by the reduced (corollary) parameter maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CorollaryOp {
    Saigo(SaigoParams),
    ErdelyiKober(EkParams),
}

mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

impl MsmParams {
    /// Differentiation order m = ⌊Re γ⌋ + 1, recomputed on demand.
    pub fn order_m(&self) -> i64 {
        self.gamma.re.floor() as i64 + 1
    }
}

impl SaigoParams {
    /// Differentiation order m = ⌊Re α⌋ + 1 (the Saigo order parameter).
    pub fn order_m(&self) -> i64 {
        self.alpha.re.floor() as i64 + 1
    }
}

impl EkParams {
    pub fn to_saigo(&self) -> SaigoParams {
        SaigoParams {
            alpha: self.alpha,
            beta: Complex64::new(0.0, 0.0),
            gamma: self.gamma,
            side: self.side,
            kind: self.kind,
        }
    }
}

/// Embed a Saigo operator in the five-parameter family.
///
/// Integrals: Saigo (α, β, γ) becomes (α+β, 0, −γ, 0, α); derivatives and
/// Caputo derivatives: (0, α+β, 0, α+γ, α). The free slot that drops out of
/// the reduced operator is set to 0 so coincident pairs cancel maximally.
pub fn reduce_saigo(op: &SaigoParams) -> MsmParams {
    let zero = Complex64::new(0.0, 0.0);
    match op.kind {
        OperatorKind::Integral => MsmParams {
            alpha: op.alpha + op.beta,
            alpha_prime: zero,
            beta: -op.gamma,
            beta_prime: zero,
            gamma: op.alpha,
            side: op.side,
            kind: op.kind,
        },
        OperatorKind::Derivative | OperatorKind::CaputoDerivative => MsmParams {
            alpha: zero,
            alpha_prime: op.alpha + op.beta,
            beta: zero,
            beta_prime: op.alpha + op.gamma,
            gamma: op.alpha,
            side: op.side,
            kind: op.kind,
        },
    }
}

/// The closed-form image of a power function: coefficient · x^exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerImage {
    pub coefficient: Complex64,
    pub exponent: Complex64,
}

// A hypothesis of the form Re(lhs) > max{bounds}; errors spell out the
// inequality with its rule identifier.
fn require_re_above(rule: &str, lhs_name: &str, lhs: f64, bounds: &[(&str, f64)]) -> Result<()> {
    let mut worst = f64::NEG_INFINITY;
    for &(_, b) in bounds {
        worst = worst.max(b);
    }
    if lhs > worst {
        return Ok(());
    }
    let listing = bounds
        .iter()
        .map(|(n, b)| format!("{n} = {b:.6}"))
        .collect::<Vec<_>>()
        .join(", ");
    Err(Error::Precondition(format!(
        "rule {rule} requires {lhs_name} > max{{{listing}}} = {worst:.6}; got {lhs_name} = {lhs:.6}"
    )))
}

fn require_positive_re(rule: &str, name: &str, v: Complex64) -> Result<()> {
    if v.re > 0.0 {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "rule {rule} requires Re({name}) > 0; got {:.6}",
            v.re
        )))
    }
}

fn require_nonneg_m(rule: &str, m: i64) -> Result<()> {
    if m >= 0 {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "rule {rule} requires differentiation order m >= 0; got m = {m}"
        )))
    }
}

// coefficient = Π Γ(num) · Π 1/Γ(den); a pole in a numerator is an error,
// a pole in a denominator sends the coefficient to zero.
fn gamma_ratio(num: &[Complex64], den: &[Complex64]) -> Result<Complex64> {
    let mut c = Complex64::new(1.0, 0.0);
    for &z in num {
        c *= gamma(z).map_err(|e| match e {
            Error::Pole { z, .. } => Error::pole(z, "numerator gamma"),
            other => other,
        })?;
    }
    for &z in den {
        c *= recip_gamma(z);
    }
    if !c.is_finite() {
        return Err(Error::Overflow("power-image coefficient overflow".into()));
    }
    Ok(c)
}

/// Closed-form image of the monomial test function under an MSM operator:
/// t^(ρ−1) on the left side, t^(−ρ) on the right side.
///
/// Hypothesis violations are rejected with the inequality named; they are
/// never computed silently.
pub fn power_image(op: &MsmParams, rho: Complex64) -> Result<PowerImage> {
    let MsmParams {
        alpha: a,
        alpha_prime: ap,
        beta: b,
        beta_prime: bp,
        gamma: g,
        side,
        kind,
    } = *op;
    let r = rho;
    match (kind, side) {
        (OperatorKind::Integral, Side::Left) => {
            require_positive_re("2.1a", "gamma", g)?;
            require_re_above(
                "2.1a",
                "Re(rho)",
                r.re,
                &[
                    ("0", 0.0),
                    ("Re(alpha'-beta')", (ap - bp).re),
                    ("Re(alpha+alpha'+beta-gamma)", (a + ap + b - g).re),
                ],
            )?;
            Ok(PowerImage {
                coefficient: gamma_ratio(
                    &[r, -ap + bp + r, -a - ap - b + g + r],
                    &[bp + r, -a - ap + g + r, -ap - b + g + r],
                )?,
                exponent: -a - ap + g + r - 1.0,
            })
        }
        (OperatorKind::Integral, Side::Right) => {
            require_positive_re("2.1b", "gamma", g)?;
            require_re_above(
                "2.1b",
                "Re(rho)",
                r.re,
                &[
                    ("Re(beta)", b.re),
                    ("Re(-alpha-alpha'+gamma)", (-a - ap + g).re),
                    ("Re(-alpha-beta'+gamma)", (-a - bp + g).re),
                ],
            )?;
            Ok(PowerImage {
                coefficient: gamma_ratio(
                    &[-b + r, a + ap - g + r, a + bp - g + r],
                    &[r, a - b + r, a + ap + bp - g + r],
                )?,
                exponent: -a - ap + g - r,
            })
        }
        (OperatorKind::Derivative, Side::Left) => {
            require_nonneg_m("4.1a", op.order_m())?;
            require_re_above(
                "4.1a",
                "Re(rho)",
                r.re,
                &[
                    ("0", 0.0),
                    ("Re(-alpha+beta)", (-a + b).re),
                    ("Re(-alpha-alpha'-beta'+gamma)", (-a - ap - bp + g).re),
                ],
            )?;
            Ok(PowerImage {
                coefficient: gamma_ratio(
                    &[r, a - b + r, a + ap + bp - g + r],
                    &[-b + r, a + ap - g + r, a + bp - g + r],
                )?,
                exponent: a + ap - g + r - 1.0,
            })
        }
        (OperatorKind::Derivative, Side::Right) => {
            let m = op.order_m();
            require_nonneg_m("4.1b", m)?;
            require_re_above(
                "4.1b",
                "Re(rho)",
                r.re,
                &[
                    ("Re(-beta')", (-bp).re),
                    ("Re(alpha'+beta-gamma)", (ap + b - g).re),
                    ("Re(alpha+alpha'-gamma)+m", (a + ap - g).re + m as f64),
                ],
            )?;
            Ok(PowerImage {
                coefficient: gamma_ratio(
                    &[bp + r, -a - ap + g + r, -ap - b + g + r],
                    &[r, -ap + bp + r, -a - ap - b + g + r],
                )?,
                exponent: a + ap - g - r,
            })
        }
        (OperatorKind::CaputoDerivative, Side::Left) => {
            let m = op.order_m();
            require_nonneg_m("5.1a", m)?;
            let mf = m as f64;
            require_re_above(
                "5.1a",
                "Re(rho)-m",
                r.re - mf,
                &[
                    ("0", 0.0),
                    ("Re(-alpha+beta)", (-a + b).re),
                    ("Re(-alpha-alpha'-beta'+gamma)", (-a - ap - bp + g).re),
                ],
            )?;
            Ok(PowerImage {
                coefficient: gamma_ratio(
                    &[r, a - b + r - mf, a + ap + bp - g + r - mf],
                    &[-b + r - mf, a + ap - g + r, a + bp - g + r - mf],
                )?,
                exponent: a + ap - g + r - 1.0,
            })
        }
        (OperatorKind::CaputoDerivative, Side::Right) => {
            let m = op.order_m();
            require_nonneg_m("5.1b", m)?;
            let mf = m as f64;
            require_re_above(
                "5.1b",
                "Re(rho)+m",
                r.re + mf,
                &[
                    ("Re(-beta')", (-bp).re),
                    ("Re(alpha'+beta-gamma)", (ap + b - g).re),
                    ("Re(alpha+alpha'-gamma)+m", (a + ap - g).re + mf),
                ],
            )?;
            Ok(PowerImage {
                coefficient: gamma_ratio(
                    &[bp + r + mf, -a - ap + g + r, -ap - b + g + r + mf],
                    &[r, -ap + bp + r + mf, -a - ap - b + g + r + mf],
                )?,
                exponent: a + ap - g - r,
            })
        }
    }
}

/// Power image of a Saigo or Erdélyi-Kober operator, obtained through the
/// five-parameter embedding.
pub fn saigo_power_image(op: &SaigoParams, rho: Complex64) -> Result<PowerImage> {
    power_image(&reduce_saigo(op), rho)
}

/// The power weight and series argument wrapped around the K-Wright
/// function: t^(ρ/k−1) ₚΨqᵏ(a·t^(μ/k)) on the left side and
/// t^(−ρ/k) ₚΨqᵏ(a·t^(−μ/k)) on the right.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerWeight {
    pub rho: Complex64,
    pub mu: f64,
    pub a: Complex64,
}

impl PowerWeight {
    pub fn new(rho: Complex64, mu: f64, a: Complex64) -> Result<Self> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::Domain(format!("mu must be positive, got {mu}")));
        }
        Ok(Self { rho, mu, a })
    }
}

/// Sign of the series argument exponent: a·x^(+μ/k) or a·x^(−μ/k).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgSign {
    Positive,
    Negative,
}

/// A closed-form operator image: k^(k_power) · x^(x_exponent) ·
/// ₚ₊ΔΨq₊Δᵏ(a·x^(±μ/k)) with the appended parameter pairs stored in
/// `params` (all carrying step μ).
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedWright {
    /// exponent of k in the prefactor (γ for integrals, −γ for derivatives;
    /// α/−α for the reduced operators)
    pub k_power: Complex64,
    pub x_exponent: Complex64,
    pub params: WrightParams,
    pub argument_sign: ArgSign,
    pub a: Complex64,
    pub mu: f64,
}

// Wire format:
// {"prefactor_k_exp": [re,im], "x_exponent": [re,im], "argument_sign": "+",
//  "params": <params JSON>, "a": [re,im], "mu": real}
#[derive(Serialize, Deserialize)]
struct TransformedWire {
    prefactor_k_exp: [f64; 2],
    x_exponent: [f64; 2],
    argument_sign: String,
    params: WrightParams,
    a: [f64; 2],
    mu: f64,
}

impl Serialize for TransformedWright {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TransformedWire {
            prefactor_k_exp: [self.k_power.re, self.k_power.im],
            x_exponent: [self.x_exponent.re, self.x_exponent.im],
            argument_sign: match self.argument_sign {
                ArgSign::Positive => "+".into(),
                ArgSign::Negative => "-".into(),
            },
            params: self.params.clone(),
            a: [self.a.re, self.a.im],
            mu: self.mu,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TransformedWright {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = TransformedWire::deserialize(d)?;
        let argument_sign = match w.argument_sign.as_str() {
            "+" => ArgSign::Positive,
            "-" => ArgSign::Negative,
            other => {
                return Err(serde::de::Error::custom(format!(
                    "argument_sign must be \"+\" or \"-\", got {other:?}"
                )))
            }
        };
        if !(w.mu > 0.0) {
            return Err(serde::de::Error::custom("mu must be positive"));
        }
        Ok(TransformedWright {
            k_power: Complex64::new(w.prefactor_k_exp[0], w.prefactor_k_exp[1]),
            x_exponent: Complex64::new(w.x_exponent[0], w.x_exponent[1]),
            params: w.params,
            argument_sign,
            a: Complex64::new(w.a[0], w.a[1]),
            mu: w.mu,
        })
    }
}

impl TransformedWright {
    /// Cancel parameter pairs that appear identically (within `tol`) in the
    /// upper and lower lists. Cancellation changes the pole structure, so it
    /// is opt-in rather than automatic.
    pub fn simplified(&self, tol: f64) -> TransformedWright {
        let mut upper = self.params.upper.clone();
        let mut lower = self.params.lower.clone();
        let mut i = 0;
        while i < upper.len() {
            let u = upper[i];
            let hit = lower
                .iter()
                .position(|l| (l.offset - u.offset).norm() <= tol && (l.step - u.step).abs() <= tol);
            if let Some(j) = hit {
                upper.remove(i);
                lower.remove(j);
            } else {
                i += 1;
            }
        }
        TransformedWright {
            params: WrightParams {
                k: self.params.k,
                upper,
                lower,
            },
            ..self.clone()
        }
    }

    /// The series argument a·x^(±μ/k) induced at x.
    pub fn argument_at(&self, x: f64) -> Complex64 {
        let e = self.mu / self.params.k;
        let p = match self.argument_sign {
            ArgSign::Positive => x.powf(e),
            ArgSign::Negative => x.powf(-e),
        };
        self.a * p
    }

    fn prefactor_at(&self, x: f64) -> Complex64 {
        let k = Complex64::new(self.params.k, 0.0);
        let xx = Complex64::new(x, 0.0);
        k.powc(self.k_power) * xx.powc(self.x_exponent)
    }
}

fn check_delta(f: &WrightParams) -> Result<()> {
    let delta = convergence_data(f).delta_cap;
    if delta > -1.0 + 1e-12 {
        Ok(())
    } else {
        Err(Error::Convergence(format!(
            "transform rules require delta > -1; the bundle has delta = {delta}"
        )))
    }
}

/// Apply the full five-parameter transform: the image of
/// t^(±ρ/k∓…) ₚΨqᵏ(a t^(±μ/k)) under the MSM operator, as an order
/// (p+3, q+3) K-Wright image with exact appended pairs.
pub fn transform(op: &MsmParams, w: &PowerWeight, f: &WrightParams) -> Result<TransformedWright> {
    check_delta(f)?;
    let k = f.k;
    let MsmParams {
        alpha: a,
        alpha_prime: ap,
        beta: b,
        beta_prime: bp,
        gamma: g,
        side,
        kind,
    } = *op;
    let r = w.rho;
    let rk = r / k;

    // The hypothesis set matches the power-image lemma of the same kind and
    // side, stated for ρ/k.
    match (kind, side) {
        (OperatorKind::Integral, Side::Left) => {
            require_positive_re("3.1", "gamma", g)?;
            require_re_above(
                "3.1",
                "Re(rho/k)",
                rk.re,
                &[
                    ("0", 0.0),
                    ("Re(alpha'-beta')", (ap - bp).re),
                    ("Re(alpha+alpha'+beta-gamma)", (a + ap + b - g).re),
                ],
            )?;
        }
        (OperatorKind::Integral, Side::Right) => {
            require_positive_re("3.2", "gamma", g)?;
            require_re_above(
                "3.2",
                "Re(rho/k)",
                rk.re,
                &[
                    ("Re(beta)", b.re),
                    ("Re(-alpha-alpha'+gamma)", (-a - ap + g).re),
                    ("Re(-alpha-beta'+gamma)", (-a - bp + g).re),
                ],
            )?;
        }
        (OperatorKind::Derivative, Side::Left) => {
            require_nonneg_m("4.1", op.order_m())?;
            require_re_above(
                "4.1",
                "Re(rho/k)",
                rk.re,
                &[
                    ("0", 0.0),
                    ("Re(-alpha+beta)", (-a + b).re),
                    ("Re(-alpha-alpha'-beta'+gamma)", (-a - ap - bp + g).re),
                ],
            )?;
        }
        (OperatorKind::Derivative, Side::Right) => {
            let m = op.order_m();
            require_nonneg_m("4.2", m)?;
            require_re_above(
                "4.2",
                "Re(rho/k)",
                rk.re,
                &[
                    ("Re(-beta')", (-bp).re),
                    ("Re(alpha'+beta-gamma)", (ap + b - g).re),
                    ("Re(alpha+alpha'-gamma)+m", (a + ap - g).re + m as f64),
                ],
            )?;
        }
        (OperatorKind::CaputoDerivative, Side::Left) => {
            let m = op.order_m();
            require_nonneg_m("5.1", m)?;
            require_re_above(
                "5.1",
                "Re(rho/k)-m",
                rk.re - m as f64,
                &[
                    ("0", 0.0),
                    ("Re(-alpha+beta)", (-a + b).re),
                    ("Re(-alpha-alpha'-beta'+gamma)", (-a - ap - bp + g).re),
                ],
            )?;
        }
        (OperatorKind::CaputoDerivative, Side::Right) => {
            let m = op.order_m();
            require_nonneg_m("5.2", m)?;
            require_re_above(
                "5.2",
                "Re(rho/k)+m",
                rk.re + m as f64,
                &[
                    ("Re(-beta')", (-bp).re),
                    ("Re(alpha'+beta-gamma)", (ap + b - g).re),
                    ("Re(alpha+alpha'-gamma)+m", (a + ap - g).re + m as f64),
                ],
            )?;
        }
    }

    let km = Complex64::new(k * op.order_m() as f64, 0.0);
    let (up, low, k_power, x_exponent, sign): (Vec<Complex64>, Vec<Complex64>, _, _, _) =
        match (kind, side) {
            (OperatorKind::Integral, Side::Left) => (
                vec![r, -k * ap + k * bp + r, -k * a - k * ap - k * b + k * g + r],
                vec![
                    k * bp + r,
                    -k * a - k * ap + k * g + r,
                    -k * ap - k * b + k * g + r,
                ],
                g,
                -a - ap + g + rk - 1.0,
                ArgSign::Positive,
            ),
            (OperatorKind::Integral, Side::Right) => (
                vec![
                    -k * b + r,
                    k * a + k * ap - k * g + r,
                    k * a + k * bp - k * g + r,
                ],
                vec![r, k * a - k * b + r, k * a + k * ap + k * bp - k * g + r],
                g,
                -a - ap + g - rk,
                ArgSign::Negative,
            ),
            (OperatorKind::Derivative, Side::Left) => (
                vec![r, k * a - k * b + r, k * a + k * ap + k * bp - k * g + r],
                vec![
                    -k * b + r,
                    k * a + k * ap - k * g + r,
                    k * a + k * bp - k * g + r,
                ],
                -g,
                a + ap - g + rk - 1.0,
                ArgSign::Positive,
            ),
            (OperatorKind::Derivative, Side::Right) => (
                vec![
                    k * bp + r,
                    -k * a - k * ap + k * g + r,
                    -k * ap - k * b + k * g + r,
                ],
                vec![r, -k * ap + k * bp + r, -k * a - k * ap - k * b + k * g + r],
                -g,
                a + ap - g - rk,
                ArgSign::Negative,
            ),
            (OperatorKind::CaputoDerivative, Side::Left) => (
                vec![
                    r,
                    k * a - k * b + r - km,
                    k * a + k * ap + k * bp - k * g + r - km,
                ],
                vec![
                    -k * b + r - km,
                    k * a + k * ap - k * g + r,
                    k * a + k * bp - k * g + r - km,
                ],
                -g,
                a + ap - g + rk - 1.0,
                ArgSign::Positive,
            ),
            (OperatorKind::CaputoDerivative, Side::Right) => (
                vec![
                    k * bp + r + km,
                    -k * a - k * ap + k * g + r,
                    -k * ap - k * b + k * g + r + km,
                ],
                vec![
                    r,
                    -k * ap + k * bp + r + km,
                    -k * a - k * ap - k * b + k * g + r + km,
                ],
                -g,
                a + ap - g - rk,
                ArgSign::Negative,
            ),
        };

    build_transformed(f, w, up, low, k_power, x_exponent, sign)
}

fn build_transformed(
    f: &WrightParams,
    w: &PowerWeight,
    appended_upper: Vec<Complex64>,
    appended_lower: Vec<Complex64>,
    k_power: Complex64,
    x_exponent: Complex64,
    sign: ArgSign,
) -> Result<TransformedWright> {
    debug_assert_eq!(appended_upper.len(), appended_lower.len());
    let mut upper = f.upper.clone();
    let mut lower = f.lower.clone();
    upper.extend(appended_upper.into_iter().map(|o| ParamPair::new(o, w.mu)));
    lower.extend(appended_lower.into_iter().map(|o| ParamPair::new(o, w.mu)));
    Ok(TransformedWright {
        k_power,
        x_exponent,
        params: WrightParams::new(f.k, upper, lower)?,
        argument_sign: sign,
        a: w.a,
        mu: w.mu,
    })
}

/// Apply a reduced (Saigo or Erdélyi-Kober) transform using the printed
/// two-pair / one-pair parameter maps directly.
pub fn corollary_transform(
    op: &CorollaryOp,
    w: &PowerWeight,
    f: &WrightParams,
) -> Result<TransformedWright> {
    check_delta(f)?;
    let k = f.k;
    let r = w.rho;
    let rk = r / k;
    match op {
        CorollaryOp::Saigo(s) => {
            let SaigoParams {
                alpha: a,
                beta: b,
                gamma: g,
                side,
                kind,
            } = *s;
            let m = s.order_m();
            let mf = m as f64;
            let km = Complex64::new(k * mf, 0.0);
            match (kind, side) {
                (OperatorKind::Integral, Side::Left) => {
                    require_positive_re("c3.1", "alpha", a)?;
                    require_re_above(
                        "c3.1",
                        "Re(rho/k)",
                        rk.re,
                        &[("0", 0.0), ("Re(beta-gamma)", (b - g).re)],
                    )?;
                    build_transformed(
                        f,
                        w,
                        vec![r, -k * b + k * g + r],
                        vec![-k * b + r, k * a + k * g + r],
                        a,
                        -b + rk - 1.0,
                        ArgSign::Positive,
                    )
                }
                (OperatorKind::Integral, Side::Right) => {
                    require_positive_re("c3.4", "alpha", a)?;
                    require_re_above(
                        "c3.4",
                        "Re(rho/k)",
                        rk.re,
                        &[("Re(-beta)", (-b).re), ("Re(-gamma)", (-g).re)],
                    )?;
                    build_transformed(
                        f,
                        w,
                        vec![k * b + r, k * g + r],
                        vec![r, k * a + k * b + k * g + r],
                        a,
                        -b - rk,
                        ArgSign::Negative,
                    )
                }
                (OperatorKind::Derivative, Side::Left) => {
                    require_nonneg_m("c4.1", m)?;
                    require_re_above(
                        "c4.1",
                        "Re(rho/k)",
                        rk.re,
                        &[("0", 0.0), ("Re(-alpha-beta-gamma)", (-a - b - g).re)],
                    )?;
                    build_transformed(
                        f,
                        w,
                        vec![r, k * a + k * b + k * g + r],
                        vec![k * b + r, k * g + r],
                        -a,
                        b + rk - 1.0,
                        ArgSign::Positive,
                    )
                }
                (OperatorKind::Derivative, Side::Right) => {
                    require_nonneg_m("c4.4", m)?;
                    require_re_above(
                        "c4.4",
                        "Re(rho/k)",
                        rk.re,
                        &[("Re(-alpha-gamma)", (-a - g).re), ("Re(beta)+m", b.re + mf)],
                    )?;
                    build_transformed(
                        f,
                        w,
                        vec![-k * b + r, k * a + k * g + r],
                        vec![r, -k * b + k * g + r],
                        -a,
                        b - rk,
                        ArgSign::Negative,
                    )
                }
                (OperatorKind::CaputoDerivative, Side::Left) => {
                    require_nonneg_m("c5.1", m)?;
                    require_re_above(
                        "c5.1",
                        "Re(rho/k)-m",
                        rk.re - mf,
                        &[("0", 0.0), ("Re(-alpha-beta-gamma)", (-a - b - g).re)],
                    )?;
                    build_transformed(
                        f,
                        w,
                        vec![r, k * a + k * b + k * g + r - km],
                        vec![k * b + r, k * g + r - km],
                        -a,
                        b + rk - 1.0,
                        ArgSign::Positive,
                    )
                }
                (OperatorKind::CaputoDerivative, Side::Right) => {
                    require_nonneg_m("c5.4", m)?;
                    require_re_above(
                        "c5.4",
                        "Re(rho/k)+m",
                        rk.re + mf,
                        &[("Re(beta)+m", b.re + mf), ("Re(-alpha-gamma)", (-a - g).re)],
                    )?;
                    build_transformed(
                        f,
                        w,
                        vec![-k * b + r, k * a + k * g + r + km],
                        vec![r, -k * b + k * g + r + km],
                        -a,
                        b - rk,
                        ArgSign::Negative,
                    )
                }
            }
        }
        CorollaryOp::ErdelyiKober(e) => {
            let EkParams {
                alpha: a,
                gamma: g,
                side,
                kind,
            } = *e;
            let m = e.to_saigo().order_m();
            let mf = m as f64;
            let km = Complex64::new(k * mf, 0.0);
            match (kind, side) {
                (OperatorKind::Integral, Side::Left) => {
                    require_positive_re("c3.3", "alpha", a)?;
                    require_re_above(
                        "c3.3",
                        "Re(rho/k)",
                        rk.re,
                        &[("0", 0.0), ("Re(-gamma)", (-g).re)],
                    )?;
                    build_transformed(
                        f,
                        w,
                        vec![k * g + r],
                        vec![k * a + k * g + r],
                        a,
                        rk - 1.0,
                        ArgSign::Positive,
                    )
                }
                (OperatorKind::Integral, Side::Right) => {
                    require_positive_re("c3.6", "alpha", a)?;
                    require_re_above(
                        "c3.6",
                        "Re(rho/k)",
                        rk.re,
                        &[("0", 0.0), ("Re(-gamma)", (-g).re)],
                    )?;
                    build_transformed(
                        f,
                        w,
                        vec![k * g + r],
                        vec![k * a + k * g + r],
                        a,
                        -rk,
                        ArgSign::Negative,
                    )
                }
                (OperatorKind::Derivative, Side::Left) => {
                    require_nonneg_m("c4.3", m)?;
                    require_re_above(
                        "c4.3",
                        "Re(rho/k)",
                        rk.re,
                        &[("0", 0.0), ("Re(-alpha-gamma)", (-a - g).re)],
                    )?;
                    build_transformed(
                        f,
                        w,
                        vec![k * a + k * g + r],
                        vec![k * g + r],
                        -a,
                        rk - 1.0,
                        ArgSign::Positive,
                    )
                }
                (OperatorKind::Derivative, Side::Right) => {
                    require_nonneg_m("c4.6", m)?;
                    require_re_above(
                        "c4.6",
                        "Re(rho/k)",
                        rk.re,
                        &[("m", mf), ("Re(-alpha-gamma)", (-a - g).re)],
                    )?;
                    build_transformed(
                        f,
                        w,
                        vec![k * a + k * g + r],
                        vec![k * g + r],
                        -a,
                        -rk,
                        ArgSign::Negative,
                    )
                }
                (OperatorKind::CaputoDerivative, Side::Left) => {
                    require_nonneg_m("c5.3", m)?;
                    require_re_above(
                        "c5.3",
                        "Re(rho/k)-m",
                        rk.re - mf,
                        &[("0", 0.0), ("Re(-alpha-gamma)", (-a - g).re)],
                    )?;
                    build_transformed(
                        f,
                        w,
                        vec![k * a + k * g + r - km],
                        vec![k * g + r - km],
                        -a,
                        rk - 1.0,
                        ArgSign::Positive,
                    )
                }
                (OperatorKind::CaputoDerivative, Side::Right) => {
                    require_nonneg_m("c5.6", m)?;
                    require_re_above(
                        "c5.6",
                        "Re(rho/k)+m",
                        rk.re + mf,
                        &[("m", mf), ("Re(-alpha-gamma)", (-a - g).re)],
                    )?;
                    build_transformed(
                        f,
                        w,
                        vec![k * a + k * g + r + km],
                        vec![k * g + r + km],
                        -a,
                        -rk,
                        ArgSign::Negative,
                    )
                }
            }
        }
    }
}

/// Numerically evaluate a transformed image at x > 0.
pub fn evaluate_image(t: &TransformedWright, x: f64, tol: f64) -> Result<Complex64> {
    evaluate_image_with_cap(t, x, tol, DEFAULT_TERM_CAP).map(|(v, _)| v)
}

/// As [`evaluate_image`], also reporting the series truncation estimate
/// scaled by the prefactor magnitude.
pub fn evaluate_image_with_cap(
    t: &TransformedWright,
    x: f64,
    tol: f64,
    cap: usize,
) -> Result<(Complex64, f64)> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    let pre = t.prefactor_at(x);
    let series = eval_kwright_with_cap(&t.params, t.argument_at(x), tol, cap)?;
    Ok((pre * series.value, pre.norm() * series.est_error))
}

/// Evaluate the image with the series truncated after exactly `n_terms`
/// terms — the form the quadrature comparisons consume.
pub fn evaluate_image_partial(t: &TransformedWright, x: f64, n_terms: usize) -> Result<Complex64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    let pre = t.prefactor_at(x);
    let series = eval_kwright_partial(&t.params, t.argument_at(x), n_terms)?;
    Ok(pre * series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma_k;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn rel_err(got: Complex64, want: Complex64) -> f64 {
        (got - want).norm() / want.norm().max(f64::MIN_POSITIVE)
    }

    fn msm(a: f64, ap: f64, b: f64, bp: f64, g: f64, side: Side, kind: OperatorKind) -> MsmParams {
        MsmParams {
            alpha: r(a),
            alpha_prime: r(ap),
            beta: r(b),
            beta_prime: r(bp),
            gamma: r(g),
            side,
            kind,
        }
    }

    // The worked five-parameter set used across the transform tests.
    fn worked_set(side: Side, kind: OperatorKind) -> MsmParams {
        msm(0.5, 0.3, 0.2, 0.1, 1.2, side, kind)
    }

    fn pairs(t: &TransformedWright, upper: bool) -> Vec<(f64, f64, f64)> {
        let list = if upper { &t.params.upper } else { &t.params.lower };
        list.iter()
            .map(|p| (p.offset.re, p.offset.im, p.step))
            .collect()
    }

    fn assert_pairs(got: &[(f64, f64, f64)], want: &[(f64, f64)]) {
        assert_eq!(got.len(), want.len(), "pair count");
        for (g, w) in got.iter().zip(want) {
            assert!(
                (g.0 - w.0).abs() < 1e-12 && g.1.abs() < 1e-12 && (g.2 - w.1).abs() < 1e-12,
                "pair {g:?} != {w:?}"
            );
        }
    }

    #[test]
    fn power_image_left_integral_collapse() {
        // All parameters zero except γ: the classical fractional integral,
        // image Γ(ρ)/Γ(γ+ρ) x^(γ+ρ−1).
        let op = msm(0.0, 0.0, 0.0, 0.0, 0.5, Side::Left, OperatorKind::Integral);
        let img = power_image(&op, r(1.0)).unwrap();
        let want = 1.0 / gamma(r(1.5)).unwrap().re;
        assert!((img.coefficient.re - want).abs() < 1e-13);
        assert!((img.coefficient.re - 1.1283791670955126).abs() < 1e-12);
        assert!(rel_err(img.exponent, r(0.5)) < 1e-15);
    }

    #[test]
    fn power_image_left_derivative_collapse() {
        let op = msm(0.0, 0.0, 0.0, 0.0, 0.5, Side::Left, OperatorKind::Derivative);
        let img = power_image(&op, r(2.0)).unwrap();
        // Γ(2)/Γ(1.5) x^(0.5)
        assert!((img.coefficient.re - 1.1283791670955126).abs() < 1e-12);
        assert!(rel_err(img.exponent, r(0.5)) < 1e-15);
    }

    #[test]
    fn power_image_worked_set_exponent() {
        let op = worked_set(Side::Left, OperatorKind::Integral);
        let img = power_image(&op, r(2.0)).unwrap();
        // exponent −α−α′+γ+ρ−1 = 1.4
        assert!(rel_err(img.exponent, r(1.4)) < 1e-14);
        assert!(img.coefficient.im.abs() < 1e-14);
        assert!(img.coefficient.re > 0.0);
    }

    #[test]
    fn power_image_rejects_violated_inequality() {
        let op = worked_set(Side::Left, OperatorKind::Integral);
        // Re(ρ) must exceed Re(α'−β') = 0.2; 0.1 violates it.
        match power_image(&op, r(0.1)) {
            Err(Error::Precondition(msg)) => {
                assert!(msg.contains("Re(rho)"), "msg: {msg}");
                assert!(msg.contains("alpha'-beta'"), "msg: {msg}");
            }
            other => panic!("expected precondition error, got {other:?}"),
        }
        // Integral kinds demand Re(γ) > 0.
        let op = msm(0.0, 0.0, 0.0, 0.0, -0.5, Side::Left, OperatorKind::Integral);
        assert!(matches!(power_image(&op, r(1.0)), Err(Error::Precondition(_))));
    }

    #[test]
    fn power_image_caputo_factorisation() {
        // Caputo image = Γ(ρ)/Γ(ρ−m) · integral image at substituted
        // parameters and ρ−m (the defining composition).
        let op = msm(
            -0.3,
            -0.2,
            -0.35,
            -0.15,
            0.45,
            Side::Left,
            OperatorKind::CaputoDerivative,
        );
        let m = op.order_m();
        assert_eq!(m, 1);
        let rho = r(2.7);
        let caputo = power_image(&op, rho).unwrap();
        let mf = m as f64;
        let inner = MsmParams {
            alpha: -op.alpha_prime,
            alpha_prime: -op.alpha,
            beta: -op.beta_prime + mf,
            beta_prime: -op.beta,
            gamma: -op.gamma + mf,
            side: Side::Left,
            kind: OperatorKind::Integral,
        };
        let base = power_image(&inner, rho - mf).unwrap();
        let factor = gamma(rho).unwrap() / gamma(rho - mf).unwrap();
        assert!(rel_err(caputo.coefficient, factor * base.coefficient) < 1e-10);
        // The γ → −γ+m substitution absorbs the order shift: the exponents
        // coincide.
        assert!(rel_err(caputo.exponent, base.exponent) < 1e-12);
    }

    #[test]
    fn power_image_right_derivative_reflection_route() {
        // The right-side derivative image equals (−1)^m times the m-th
        // analytic derivative of the substituted right-integral image.
        let op = msm(
            -0.3,
            -0.2,
            -0.35,
            -0.15,
            0.45,
            Side::Right,
            OperatorKind::Derivative,
        );
        let m = op.order_m();
        assert_eq!(m, 1);
        let mf = m as f64;
        let rho = r(2.3);
        let deriv = power_image(&op, rho).unwrap();
        let inner = MsmParams {
            alpha: -op.alpha_prime,
            alpha_prime: -op.alpha,
            beta: -op.beta_prime,
            beta_prime: -op.beta + mf,
            gamma: -op.gamma + mf,
            side: Side::Right,
            kind: OperatorKind::Integral,
        };
        let base = power_image(&inner, rho).unwrap();
        // d^m/dx^m x^e = e(e−1)…(e−m+1) x^(e−m), and the operator carries
        // the (−1)^m of (−d/dx)^m.
        let mut fall = Complex64::new(1.0, 0.0);
        for j in 0..m {
            fall *= base.exponent - j as f64;
        }
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let want = sign * fall * base.coefficient;
        assert!(
            rel_err(deriv.coefficient, want) < 1e-10,
            "err {:.3e}",
            rel_err(deriv.coefficient, want)
        );
        assert!(rel_err(deriv.exponent, base.exponent - mf) < 1e-12);
    }

    #[test]
    fn transform_left_integral_worked_example() {
        let op = worked_set(Side::Left, OperatorKind::Integral);
        let w = PowerWeight::new(r(2.0), 1.0, r(0.5)).unwrap();
        let f = WrightParams::empty(1.0).unwrap();
        let t = transform(&op, &w, &f).unwrap();
        assert_pairs(&pairs(&t, true), &[(2.0, 1.0), (1.8, 1.0), (2.2, 1.0)]);
        assert_pairs(&pairs(&t, false), &[(2.1, 1.0), (2.4, 1.0), (2.7, 1.0)]);
        assert!(rel_err(t.k_power, r(1.2)) < 1e-15);
        assert!(rel_err(t.x_exponent, r(1.4)) < 1e-14);
        assert_eq!(t.argument_sign, ArgSign::Positive);
        // order law: three pairs appended on each side
        assert_eq!(t.params.p(), f.p() + 3);
        assert_eq!(t.params.q(), f.q() + 3);
    }

    #[test]
    fn transform_left_derivative_worked_example() {
        let op = worked_set(Side::Left, OperatorKind::Derivative);
        let w = PowerWeight::new(r(2.0), 1.0, r(0.5)).unwrap();
        let f = WrightParams::empty(1.0).unwrap();
        let t = transform(&op, &w, &f).unwrap();
        // upper: (ρ), (kα−kβ+ρ), (kα+kα′+kβ′−kγ+ρ) = 2, 2.3, 1.7
        assert_pairs(&pairs(&t, true), &[(2.0, 1.0), (2.3, 1.0), (1.7, 1.0)]);
        // lower: (−kβ+ρ), (kα+kα′−kγ+ρ), (kα+kβ′−kγ+ρ) = 1.8, 1.6, 1.4
        assert_pairs(&pairs(&t, false), &[(1.8, 1.0), (1.6, 1.0), (1.4, 1.0)]);
        // prefactor k^(−γ), x exponent α+α′−γ+ρ−1 = 0.6
        assert!(rel_err(t.k_power, r(-1.2)) < 1e-15);
        assert!(rel_err(t.x_exponent, r(0.6)) < 1e-14);
    }

    #[test]
    fn transform_left_caputo_worked_example() {
        let op = worked_set(Side::Left, OperatorKind::CaputoDerivative);
        assert_eq!(op.order_m(), 2);
        let w = PowerWeight::new(r(4.4), 1.0, r(0.5)).unwrap();
        let f = WrightParams::empty(1.0).unwrap();
        let t = transform(&op, &w, &f).unwrap();
        // lower first pair: (−kβ+ρ−km) = −0.2+4.4−2 = 2.2
        let low = pairs(&t, false);
        assert!((low[0].0 - 2.2).abs() < 1e-12);
        assert!(rel_err(t.k_power, r(-1.2)) < 1e-15);
        // x exponent α+α′−γ+ρ−1 = 3.0
        assert!(rel_err(t.x_exponent, r(3.0)) < 1e-14);
    }

    #[test]
    fn transform_requires_entire_bundle() {
        // Δ = −1 bundle must be refused by every transform rule.
        let f = WrightParams::new(1.0, vec![ParamPair::real(1.0, 1.0)], vec![]).unwrap();
        let op = worked_set(Side::Left, OperatorKind::Integral);
        let w = PowerWeight::new(r(2.0), 1.0, r(0.1)).unwrap();
        assert!(matches!(transform(&op, &w, &f), Err(Error::Convergence(_))));
    }

    #[test]
    fn reduce_saigo_integral_map() {
        let s = SaigoParams {
            alpha: r(0.75),
            beta: r(0.25),
            gamma: r(0.5),
            side: Side::Left,
            kind: OperatorKind::Integral,
        };
        let m = reduce_saigo(&s);
        assert_eq!(m.alpha, r(1.0));
        assert_eq!(m.alpha_prime, r(0.0));
        assert_eq!(m.beta, r(-0.5));
        assert_eq!(m.beta_prime, r(0.0));
        assert_eq!(m.gamma, r(0.75));
    }

    #[test]
    fn reduce_saigo_round_trip() {
        // MSM (α, 0, β, β′, γ) corresponds to Saigo (γ, α−γ, −β); embedding
        // that Saigo triple again gives (α, 0, β, 0, γ).
        for &(a, b, g) in &[(0.9, -0.4, 0.7), (1.3, 0.25, 0.5), (0.6, 0.0, 0.3)] {
            let saigo = SaigoParams {
                alpha: r(g),
                beta: r(a - g),
                gamma: r(-b),
                side: Side::Left,
                kind: OperatorKind::Integral,
            };
            let m = reduce_saigo(&saigo);
            assert!(rel_err(m.alpha, r(a)) < 1e-15);
            assert!(m.alpha_prime.norm() < 1e-15);
            assert!((m.beta - r(b)).norm() < 1e-15);
            assert!(m.beta_prime.norm() < 1e-15);
            assert!(rel_err(m.gamma, r(g)) < 1e-15);
        }
    }

    #[test]
    fn ek_embeds_as_saigo_with_zero_beta() {
        let e = EkParams {
            alpha: r(1.0),
            gamma: r(0.5),
            side: Side::Left,
            kind: OperatorKind::Integral,
        };
        let s = e.to_saigo();
        assert_eq!(s.beta, r(0.0));
        let m = reduce_saigo(&s);
        assert_eq!((m.alpha, m.beta, m.gamma), (r(1.0), r(-0.5), r(1.0)));
    }

    #[test]
    fn corollary_ek_left_integral_example() {
        // k = 2, α = 1, γ = 0.5, ρ = 2, μ = 1: prefactor 2^1, appended
        // upper (kγ+ρ) = 3, lower (kα+kγ+ρ) = 5, x exponent ρ/k−1 = 0.
        let e = EkParams {
            alpha: r(1.0),
            gamma: r(0.5),
            side: Side::Left,
            kind: OperatorKind::Integral,
        };
        let w = PowerWeight::new(r(2.0), 1.0, r(0.0)).unwrap();
        let f = WrightParams::empty(2.0).unwrap();
        let t = corollary_transform(&CorollaryOp::ErdelyiKober(e), &w, &f).unwrap();
        assert_pairs(&pairs(&t, true), &[(3.0, 1.0)]);
        assert_pairs(&pairs(&t, false), &[(5.0, 1.0)]);
        assert!(rel_err(t.k_power, r(1.0)) < 1e-15);
        assert!(t.x_exponent.norm() < 1e-15);
        assert_eq!(t.params.p(), 1);
        assert_eq!(t.params.q(), 1);
    }

    #[test]
    fn corollary_saigo_caputo_left_example() {
        // k = 1, α = 0.5 (m = 1), β = 0.1, γ = 0.3, ρ = 2, μ = 1:
        // upper (2), (kα+kβ+kγ+ρ−km) = 1.9; lower (kβ+ρ) = 2.1,
        // (kγ+ρ−km) = 1.3.
        let s = SaigoParams {
            alpha: r(0.5),
            beta: r(0.1),
            gamma: r(0.3),
            side: Side::Left,
            kind: OperatorKind::CaputoDerivative,
        };
        let w = PowerWeight::new(r(2.0), 1.0, r(0.0)).unwrap();
        let f = WrightParams::empty(1.0).unwrap();
        let t = corollary_transform(&CorollaryOp::Saigo(s), &w, &f).unwrap();
        assert_pairs(&pairs(&t, true), &[(2.0, 1.0), (1.9, 1.0)]);
        assert_pairs(&pairs(&t, false), &[(2.1, 1.0), (1.3, 1.0)]);
    }

    // Sorted pair multisets must match exactly for dyadic inputs.
    fn sorted_pairs(t: &TransformedWright) -> (Vec<(f64, f64, f64)>, Vec<(f64, f64, f64)>) {
        let mut up = pairs(t, true);
        let mut low = pairs(t, false);
        up.sort_by(|x, y| x.partial_cmp(y).unwrap());
        low.sort_by(|x, y| x.partial_cmp(y).unwrap());
        (up, low)
    }

    #[test]
    fn theorem_reduces_to_corollary_when_slot_vanishes() {
        // Dyadic inputs keep every appended offset exact in f64.
        let (a, b, bp, g) = (0.5, 0.25, 0.125, 0.75);
        let f = WrightParams::empty(2.0).unwrap();
        let w = PowerWeight::new(r(2.0), 1.0, r(0.25)).unwrap();

        // Integrals: MSM (α, 0, β, β′, γ) vs the Saigo triple (γ, α−γ, −β).
        for side in [Side::Left, Side::Right] {
            let m = MsmParams {
                alpha: r(a),
                alpha_prime: r(0.0),
                beta: r(b),
                beta_prime: r(bp),
                gamma: r(g),
                side,
                kind: OperatorKind::Integral,
            };
            let s = SaigoParams {
                alpha: r(g),
                beta: r(a - g),
                gamma: r(-b),
                side,
                kind: OperatorKind::Integral,
            };
            let tm = transform(&m, &w, &f).unwrap().simplified(1e-14);
            let tc = corollary_transform(&CorollaryOp::Saigo(s), &w, &f).unwrap();
            assert_eq!(sorted_pairs(&tm), sorted_pairs(&tc), "integral side {side:?}");
            assert!(rel_err(tm.k_power, tc.k_power) < 1e-15);
            assert!((tm.x_exponent - tc.x_exponent).norm() < 1e-14);
        }

        // Derivatives and Caputo: MSM (0, α′, 0, β′, γ) vs the Saigo triple
        // (γ, α′−γ, β′−γ).
        for kind in [OperatorKind::Derivative, OperatorKind::CaputoDerivative] {
            for side in [Side::Left, Side::Right] {
                let (ap, bp2) = (0.5, 0.875);
                let m = MsmParams {
                    alpha: r(0.0),
                    alpha_prime: r(ap),
                    beta: r(0.0),
                    beta_prime: r(bp2),
                    gamma: r(g),
                    side,
                    kind,
                };
                let s = SaigoParams {
                    alpha: r(g),
                    beta: r(ap - g),
                    gamma: r(bp2 - g),
                    side,
                    kind,
                };
                let rho = r(4.0);
                let w2 = PowerWeight::new(rho, 1.0, r(0.25)).unwrap();
                let tm = transform(&m, &w2, &f).unwrap().simplified(1e-14);
                let tc = corollary_transform(&CorollaryOp::Saigo(s), &w2, &f).unwrap();
                assert_eq!(sorted_pairs(&tm), sorted_pairs(&tc), "{kind:?} side {side:?}");
                assert!(rel_err(tm.k_power, tc.k_power) < 1e-15);
                assert!((tm.x_exponent - tc.x_exponent).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn saigo_reduces_to_ek_when_beta_vanishes() {
        let f = WrightParams::empty(1.0).unwrap();
        let w = PowerWeight::new(r(3.0), 1.0, r(0.5)).unwrap();
        for kind in [
            OperatorKind::Integral,
            OperatorKind::Derivative,
            OperatorKind::CaputoDerivative,
        ] {
            for side in [Side::Left, Side::Right] {
                let s = SaigoParams {
                    alpha: r(0.75),
                    beta: r(0.0),
                    gamma: r(0.5),
                    side,
                    kind,
                };
                let e = EkParams {
                    alpha: r(0.75),
                    gamma: r(0.5),
                    side,
                    kind,
                };
                let ts = corollary_transform(&CorollaryOp::Saigo(s), &w, &f)
                    .unwrap()
                    .simplified(1e-14);
                let te = corollary_transform(&CorollaryOp::ErdelyiKober(e), &w, &f).unwrap();
                assert_eq!(sorted_pairs(&ts), sorted_pairs(&te), "{kind:?} {side:?}");
                assert!(rel_err(ts.k_power, te.k_power) < 1e-15);
                assert!((ts.x_exponent - te.x_exponent).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn evaluate_image_zero_argument_matches_power_image() {
        // a = 0 kills every n ≥ 1 term, leaving the pure power image.
        let f = WrightParams::empty(2.0).unwrap();
        let op = worked_set(Side::Left, OperatorKind::Integral);
        let rho = r(3.0);
        let w = PowerWeight::new(rho, 1.0, r(0.0)).unwrap();
        let t = transform(&op, &w, &f).unwrap();
        let img = power_image(&op, rho / 2.0).unwrap();
        for &x in &[0.5, 1.0, 2.0] {
            let got = evaluate_image(&t, x, 1e-13).unwrap();
            let want = img.coefficient * Complex64::new(x, 0.0).powc(img.exponent);
            assert!(rel_err(got, want) < 1e-12, "x={x}: {:.3e}", rel_err(got, want));
        }
    }

    #[test]
    fn evaluate_image_x_scaling_with_zero_argument() {
        let f = WrightParams::empty(1.0).unwrap();
        let op = worked_set(Side::Left, OperatorKind::Integral);
        let w = PowerWeight::new(r(2.0), 1.0, r(0.0)).unwrap();
        let t = transform(&op, &w, &f).unwrap();
        let v1 = evaluate_image(&t, 1.0, 1e-13).unwrap();
        let v2 = evaluate_image(&t, 2.0, 1e-13).unwrap();
        let scale = Complex64::new(2.0, 0.0).powc(t.x_exponent);
        assert!(rel_err(v2, v1 * scale) < 1e-12);
    }

    #[test]
    fn transformed_wright_json_round_trip() {
        let f = WrightParams::new(
            2.0,
            vec![ParamPair::real(1.0, 1.0)],
            vec![ParamPair::real(2.0, 1.0)],
        )
        .unwrap();
        let op = worked_set(Side::Right, OperatorKind::CaputoDerivative);
        let w = PowerWeight::new(r(2.0), 1.5, Complex64::new(0.5, -0.25)).unwrap();
        let t = transform(&op, &w, &f).unwrap();
        let js = serde_json::to_string(&t).unwrap();
        assert!(js.contains("prefactor_k_exp"));
        assert!(js.contains("\"argument_sign\":\"-\""));
        let back: TransformedWright = serde_json::from_str(&js).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn simplify_cancels_coincident_pairs_only() {
        let f = WrightParams::new(
            1.0,
            vec![ParamPair::real(1.5, 2.0), ParamPair::real(0.5, 1.0)],
            vec![ParamPair::real(1.5, 2.0), ParamPair::real(0.25, 1.0)],
        )
        .unwrap();
        let t = TransformedWright {
            k_power: r(0.0),
            x_exponent: r(0.0),
            params: f,
            argument_sign: ArgSign::Positive,
            a: r(0.5),
            mu: 1.0,
        };
        let s = t.simplified(1e-14);
        assert_eq!(s.params.p(), 1);
        assert_eq!(s.params.q(), 1);
        assert_eq!(s.params.upper[0], ParamPair::real(0.5, 1.0));
        assert_eq!(s.params.lower[0], ParamPair::real(0.25, 1.0));
    }

    #[test]
    fn term0_gamma_k_ratio_consistency() {
        // The k-power bookkeeping: prefactor k^γ times the Γ_k ratio of the
        // appended offsets equals the plain gamma ratio at ρ/k.
        let op = worked_set(Side::Left, OperatorKind::Integral);
        let k = 2.0;
        let f = WrightParams::empty(k).unwrap();
        let rho = r(3.0);
        let w = PowerWeight::new(rho, 1.0, r(0.0)).unwrap();
        let t = transform(&op, &w, &f).unwrap();
        let mut ratio = Complex64::new(k, 0.0).powc(t.k_power);
        for p in &t.params.upper {
            ratio *= gamma_k(p.offset, k).unwrap();
        }
        for p in &t.params.lower {
            ratio /= gamma_k(p.offset, k).unwrap();
        }
        let img = power_image(&op, rho / k).unwrap();
        assert!(rel_err(ratio, img.coefficient) < 1e-12);
    }
}

//! Gauss ₂F₁ and Appell F₃ evaluators.
//!
//! ₂F₁(a, b; c; z) = Σ (a)ₙ(b)ₙ/(c)ₙ · zⁿ/n! on |z| < 1, extended to the
//! negative real axis by the Pfaff transformation
//! ₂F₁(a, b; c; z) = (1−z)^(−a) ₂F₁(a, c−b; c; z/(z−1)).
//!
//! F₃(α, α′, β, β′; γ; x, y) = Σ (α)ₘ(α′)ₙ(β)ₘ(β′)ₙ/(γ)ₘ₊ₙ · xᵐyⁿ/(m!n!)
//! on max(|x|, |y|) < 1, evaluated through the single-series form
//! Σₘ (α)ₘ(β)ₘ/((γ)ₘ m!) xᵐ ₂F₁(α′, β′; γ+m; y) so that y on (−∞, 0]
//! rides on the continued ₂F₁. Where the operator kernels push y → −∞ the
//! transformed argument approaches 1 and the classical z → 1−z connection
//! formula takes over; this continuation choice is ours, not forced by the
//! series definition.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gamma::{gamma, recip_gamma, POLE_TOL};

/// Hard cap on series terms (outer and inner alike).
pub const TERM_CAP: usize = 20_000;

/// Argument above which the z → 1−z connection formula replaces the direct
/// series on the unit interval.
const CONNECTION_SWITCH: f64 = 0.75;

/// Parameters of ₂F₁(alpha, beta; gamma; ·).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gauss2F1Params {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
}

impl Gauss2F1Params {
    pub fn new(alpha: Complex64, beta: Complex64, gamma: Complex64) -> Self {
        Self { alpha, beta, gamma }
    }
}

/// Parameters of F₃(alpha, alpha′, beta, beta′; gamma; ·, ·).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AppellF3Params {
    pub alpha: Complex64,
    pub alpha_prime: Complex64,
    pub beta: Complex64,
    pub beta_prime: Complex64,
    pub gamma: Complex64,
}

fn near_nonpos_int(z: Complex64) -> Option<i64> {
    if z.re > 0.5 || z.im.abs() >= POLE_TOL {
        return None;
    }
    let n = z.re.round();
    if n <= 0.0 && (z - n).norm() < POLE_TOL {
        Some(n as i64)
    } else {
        None
    }
}

fn is_real_nonpos(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0
}

/// Direct hypergeometric sum Σ (a)ₙ(b)ₙ/(c)ₙ zⁿ/n!, terms by multiplicative
/// recurrence. Stops once three consecutive terms fall below tol·|sum|.
fn hyp_series(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
    tol: f64,
) -> Result<Complex64> {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut small = 0u32;
    for n in 0..TERM_CAP {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if !sum.is_finite() {
            return Err(Error::Overflow(format!(
                "2F1 partial sum overflow at term {n}"
            )));
        }
        if term.norm() <= tol * sum.norm() {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence {
        count: TERM_CAP,
        unit: "terms",
        context: format!("2F1 series at z = {z}"),
    })
}

/// ₂F₁(a, b; c; w) specialised to real w ∈ [0, 1), carrying the z → 1−z
/// connection coefficients so the kernel integrals can evaluate cheaply
/// arbitrarily close to w = 1.
#[derive(Debug, Clone)]
pub(crate) struct UnitHyp {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    /// smallest N with a = −N or b = −N (series is a degree-N polynomial)
    terminating: Option<u32>,
    conn: Option<UnitConn>,
}

#[derive(Debug, Clone)]
struct UnitConn {
    coef1: Complex64,
    c1: Complex64,
    coef2: Complex64,
    a2: Complex64,
    b2: Complex64,
    c2: Complex64,
    /// exponent c − a − b of the (1−w) prefactor on the second branch
    exp: Complex64,
}

impl UnitHyp {
    pub(crate) fn new(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        if let Some(n) = near_nonpos_int(c) {
            return Err(Error::Domain(format!(
                "2F1 lower parameter c = {n} is a nonpositive integer"
            )));
        }
        let terminating = match (near_nonpos_int(a), near_nonpos_int(b)) {
            (Some(m), Some(n)) => Some(m.max(n).unsigned_abs() as u32),
            (Some(m), None) => Some(m.unsigned_abs() as u32),
            (None, Some(n)) => Some(n.unsigned_abs() as u32),
            (None, None) => None,
        };
        let cab = c - a - b;
        let log_case = cab.im.abs() < 1e-10 && (cab.re - cab.re.round()).abs() < 1e-8;
        let conn = if terminating.is_none() && !log_case {
            let gc = gamma(c)?;
            let coef1 = gc * gamma(cab)? * recip_gamma(c - a) * recip_gamma(c - b);
            let coef2 = gc * gamma(-cab)? * recip_gamma(a) * recip_gamma(b);
            Some(UnitConn {
                coef1,
                c1: a + b - c + 1.0,
                coef2,
                a2: c - a,
                b2: c - b,
                c2: cab + 1.0,
                exp: cab,
            })
        } else {
            None
        };
        Ok(Self {
            a,
            b,
            c,
            terminating,
            conn,
        })
    }

    /// Evaluate at w ∈ [0, 1) with 1−w supplied exactly by the caller (the
    /// kernel substitutions produce it without cancellation).
    pub(crate) fn eval(&self, w: f64, one_minus_w: f64, tol: f64) -> Result<Complex64> {
        if let Some(n) = self.terminating {
            let mut sum = Complex64::new(1.0, 0.0);
            let mut term = Complex64::new(1.0, 0.0);
            for j in 0..n {
                let jf = j as f64;
                term *= (self.a + jf) * (self.b + jf) / ((self.c + jf) * (jf + 1.0)) * w;
                sum += term;
            }
            return Ok(sum);
        }
        if w < CONNECTION_SWITCH {
            return hyp_series(self.a, self.b, self.c, Complex64::new(w, 0.0), tol);
        }
        if let Some(conn) = &self.conn {
            let omw = Complex64::new(one_minus_w, 0.0);
            let s1 = hyp_series(self.a, self.b, conn.c1, omw, tol)?;
            let s2 = hyp_series(conn.a2, conn.b2, conn.c2, omw, tol)?;
            let pw = omw.powc(conn.exp);
            return Ok(conn.coef1 * s1 + conn.coef2 * pw * s2);
        }
        // Logarithmic case: fall back to the plain series while it still
        // converges inside the term cap.
        if w <= 0.998 {
            return hyp_series(self.a, self.b, self.c, Complex64::new(w, 0.0), tol);
        }
        Err(Error::NonConvergence {
            count: TERM_CAP,
            unit: "terms",
            context: format!(
                "2F1 at w = {w}: c-a-b = {} is integral, no connection formula",
                self.c - self.a - self.b
            ),
        })
    }
}

/// Gauss hypergeometric function.
///
/// Served region: |z| < 1 (direct series), plus the whole half-line
/// z ∈ (−∞, 0] via the Pfaff transformation, which maps it into [0, 1).
pub fn gauss_2f1(p: &Gauss2F1Params, z: Complex64, tol: f64) -> Result<Complex64> {
    if tol <= 0.0 {
        return Err(Error::Domain("tol must be positive".into()));
    }
    if let Some(n) = near_nonpos_int(p.gamma) {
        return Err(Error::Domain(format!(
            "2F1 lower parameter gamma = {n} is a nonpositive integer"
        )));
    }
    if is_real_nonpos(z) {
        let uh = UnitHyp::new(p.alpha, p.gamma - p.beta, p.gamma)?;
        let w = z.re / (z.re - 1.0);
        let omw = 1.0 / (1.0 - z.re);
        let f = uh.eval(w, omw, tol)?;
        let prefactor = Complex64::new(1.0 - z.re, 0.0).powc(-p.alpha);
        return Ok(prefactor * f);
    }
    if z.norm() < 1.0 {
        return hyp_series(p.alpha, p.beta, p.gamma, z, tol);
    }
    Err(Error::Domain(format!(
        "2F1 argument z = {z} outside the served region (|z| < 1 or real z <= 0)"
    )))
}

/// Direct hypergeometric sum, valid on |z| < 1 only. Exposed so the Pfaff
/// continuation can be cross-checked against it where both converge.
pub fn gauss_2f1_series(p: &Gauss2F1Params, z: Complex64, tol: f64) -> Result<Complex64> {
    if z.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "direct 2F1 series requires |z| < 1, got {z}"
        )));
    }
    hyp_series(p.alpha, p.beta, p.gamma, z, tol)
}

/// Third Appell function.
///
/// Served region: |x| < 1 with |y| < 1, or |x| < 1 with y real ≤ 0 (the
/// inner Gauss factor is continued there).
pub fn appell_f3(p: &AppellF3Params, x: Complex64, y: Complex64, tol: f64) -> Result<Complex64> {
    if tol <= 0.0 {
        return Err(Error::Domain("tol must be positive".into()));
    }
    if let Some(n) = near_nonpos_int(p.gamma) {
        return Err(Error::Domain(format!(
            "F3 lower parameter gamma = {n} is a nonpositive integer"
        )));
    }
    if x.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "F3 first argument must satisfy |x| < 1, got {x}"
        )));
    }
    if y.norm() >= 1.0 && !is_real_nonpos(y) {
        return Err(Error::Domain(format!(
            "F3 second argument y = {y} outside the served region (|y| < 1 or real y <= 0)"
        )));
    }
    let inner_tol = tol * 0.1;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut coef = Complex64::new(1.0, 0.0);
    let mut small = 0u32;
    for m in 0..TERM_CAP {
        let mf = m as f64;
        let g = Gauss2F1Params::new(p.alpha_prime, p.beta_prime, p.gamma + mf);
        let term = coef * gauss_2f1(&g, y, inner_tol)?;
        sum += term;
        if !sum.is_finite() {
            return Err(Error::Overflow(format!(
                "F3 partial sum overflow at term {m}"
            )));
        }
        if term.norm() <= tol * sum.norm() {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
        coef *= (p.alpha + mf) * (p.beta + mf) / ((p.gamma + mf) * (mf + 1.0)) * x;
    }
    Err(Error::NonConvergence {
        count: TERM_CAP,
        unit: "terms",
        context: format!("F3 outer series at x = {x}, y = {y}"),
    })
}

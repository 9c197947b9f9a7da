//! Quadrature oracle: evaluates the fractional operators from their
//! defining kernel integrals, independently of the closed-form images.
//!
//! With t = xu (left side) and t = x/u (right side) both MSM integrals live
//! on the unit interval:
//!
//!   left:  x^(−α−α′+γ)/Γ(γ) ∫₀¹ (1−u)^(γ−1) u^(−α′)   K(u) f(xu)  du
//!   right: x^(−α−α′+γ)/Γ(γ) ∫₀¹ (1−u)^(γ−1) u^(α−γ−1) K(u) f(x/u) du
//!
//! where K(u) = F₃(α, α′, β, β′; γ; 1−u, 1−1/u). Near u = 0 the second
//! kernel argument runs to −∞ and the series form of F₃ becomes useless, so
//! K is evaluated through a Beta-weighted integral representation: for a
//! parameter v ∈ {β′, α′} with Re(γ−v) > 0 (and λ the other one),
//!
//!   K(u) = Γ(γ)/(Γ(v)Γ(γ−v)) ∫₀¹ s^(v−1) (1−s)^(γ−v−1)
//!            ((u+sX)/u)^(−λ) ₂F₁(α, β; γ−v; X(1−s)) ds,    X = 1−u,
//!
//! obtained by inserting the Euler integral of the inner Gauss factor into
//! the single-series form and exchanging sum and integral. Re(v) ≤ 0 (down
//! to −0.95) is served by subtracting the s = 0 Taylor value of the
//! non-singular part. Operators whose parameters offer no usable slot are
//! refused rather than extrapolated.
//!
//! Derivatives are Richardson-extrapolated central differences of the inner
//! integral; Caputo derivatives integrate the operand's exact m-th
//! derivative, which the integrand must supply.

use std::cell::{Cell, RefCell};
use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gamma::{gamma, recip_gamma};
use crate::hypergeometric::UnitHyp;
use crate::operator::{MsmParams, OperatorKind, PowerWeight, SaigoParams, Side};
use crate::quad::{tanh_sinh_01, QuadOutcome};
use crate::wright::{series_coefficients, WrightParams};

/// Maximum tanh-sinh refinement level used by the oracle.
const MAX_LEVEL: u32 = 11;

/// Inner (kernel) quadrature runs this much tighter than the outer one.
const INNER_TOL_FACTOR: f64 = 0.03;

type DynFn = Arc<dyn Fn(f64) -> Result<Complex64> + Send + Sync>;

/// A test function the operators act on.
///
/// `PowerSum` is the family the closed-form images cover — finite sums
/// Σ c·t^e with complex exponents — and carries exact derivatives of every
/// order. `Custom` wraps an arbitrary function handle with an optional
/// exact-derivative handle (order, t) ↦ f^(order)(t).
#[derive(Clone)]
pub enum Integrand {
    PowerSum(Vec<(Complex64, Complex64)>),
    Custom {
        f: DynFn,
        derivative: Option<Arc<dyn Fn(u32, f64) -> Result<Complex64> + Send + Sync>>,
    },
}

impl Integrand {
    pub fn monomial(coefficient: Complex64, exponent: Complex64) -> Self {
        Integrand::PowerSum(vec![(coefficient, exponent)])
    }

    pub fn constant(value: Complex64) -> Self {
        Self::monomial(value, Complex64::new(0.0, 0.0))
    }

    pub fn eval(&self, t: f64) -> Result<Complex64> {
        match self {
            Integrand::PowerSum(terms) => {
                if !(t > 0.0) {
                    return Err(Error::Domain(format!(
                        "power-sum integrand needs t > 0, got {t}"
                    )));
                }
                let lt = t.ln();
                let mut acc = Complex64::new(0.0, 0.0);
                for &(c, e) in terms {
                    acc += c * (e * lt).exp();
                }
                Ok(acc)
            }
            Integrand::Custom { f, .. } => f(t),
        }
    }

    /// Exact m-th derivative, when the integrand declares one.
    pub fn exact_derivative(&self, m: u32) -> Option<Integrand> {
        match self {
            Integrand::PowerSum(terms) => {
                let out = terms
                    .iter()
                    .map(|&(c, e)| {
                        let mut coef = c;
                        for j in 0..m {
                            coef *= e - j as f64;
                        }
                        (coef, e - m as f64)
                    })
                    .collect();
                Some(Integrand::PowerSum(out))
            }
            Integrand::Custom { f, derivative } => derivative.as_ref().map(|d| {
                let d = d.clone();
                let _ = f;
                Integrand::Custom {
                    f: Arc::new(move |t| d(m, t)),
                    derivative: None,
                }
            }),
        }
    }
}

/// Outcome of one oracle run.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureReport {
    pub value: Complex64,
    pub est_error: f64,
    pub evaluations: usize,
    /// Upper integration limit actually used on right-side operators;
    /// infinity when the compactifying substitution handled the full range.
    pub truncation_t: f64,
}

// ---------------------------------------------------------------------------
// kernel
// ---------------------------------------------------------------------------

fn near_zero(z: Complex64) -> bool {
    z.norm() < 1e-14
}

// exp(z) − 1 without cancellation for small |z|.
fn expm1_c(z: Complex64) -> Complex64 {
    if z.norm() > 0.5 {
        return z.exp() - 1.0;
    }
    let mut term = z;
    let mut sum = z;
    for n in 2..30 {
        term *= z / n as f64;
        sum += term;
        if term.norm() < 1e-18 * sum.norm().max(1e-30) {
            break;
        }
    }
    sum
}

struct EulerRep {
    /// Beta-slot exponent v and partner exponent λ.
    nu: Complex64,
    lam: Complex64,
    /// Γ(γ)/(Γ(v)Γ(γ−v))
    norm: Complex64,
    /// γ − v − 1, the (1−s) exponent
    oms_exp: Complex64,
    uh0: UnitHyp,
    uh1: UnitHyp,
    uh2: UnitHyp,
    d1_coef: Complex64,
    d2_coef: Complex64,
    subtract: bool,
}

enum KernelVariant {
    /// both series directions collapse: K ≡ 1
    One,
    /// primed group vanishes: K = ₂F₁(α, β; γ; 1−u)
    SingleX(UnitHyp),
    /// unprimed group vanishes: K = u^(α′) ₂F₁(α′, γ−β′; γ; 1−u)
    SingleY { uh: UnitHyp, pf_exp: Complex64 },
    Euler(Box<EulerRep>),
}

pub(crate) struct F3Kernel {
    variant: KernelVariant,
    cache: RefCell<HashMap<u64, Complex64>>,
    inner_evals: Cell<usize>,
}

impl F3Kernel {
    pub(crate) fn new(
        alpha: Complex64,
        alpha_prime: Complex64,
        beta: Complex64,
        beta_prime: Complex64,
        gamma: Complex64,
    ) -> Result<Self> {
        let x_group_zero = near_zero(alpha) || near_zero(beta);
        let y_group_zero = near_zero(alpha_prime) || near_zero(beta_prime);
        let variant = if x_group_zero && y_group_zero {
            KernelVariant::One
        } else if y_group_zero {
            KernelVariant::SingleX(UnitHyp::new(alpha, beta, gamma)?)
        } else if x_group_zero {
            KernelVariant::SingleY {
                uh: UnitHyp::new(alpha_prime, gamma - beta_prime, gamma)?,
                pf_exp: alpha_prime,
            }
        } else {
            let rep = Self::build_euler(alpha, alpha_prime, beta, beta_prime, gamma)?;
            KernelVariant::Euler(Box::new(rep))
        };
        Ok(Self {
            variant,
            cache: RefCell::new(HashMap::new()),
            inner_evals: Cell::new(0),
        })
    }

    fn build_euler(
        alpha: Complex64,
        alpha_prime: Complex64,
        beta: Complex64,
        beta_prime: Complex64,
        gam: Complex64,
    ) -> Result<EulerRep> {
        // Slot feasibility: the Beta weight needs Re(γ−v) comfortably
        // positive and either Re(v) > 0.05 (plain) or Re(v) > −0.95 with v
        // away from 0 (one subtraction).
        let score = |v: Complex64| -> Option<(f64, bool)> {
            let rem = (gam - v).re;
            if rem < 0.05 {
                return None;
            }
            if v.re > 0.05 {
                Some((10.0 + v.re.min(rem), false))
            } else if v.re > -0.95 && v.norm() > 1e-4 {
                Some((v.norm().min(rem).min(v.re + 1.0), true))
            } else {
                None
            }
        };
        let mut best: Option<(f64, bool, Complex64, Complex64)> = None;
        for (v, lam) in [(beta_prime, alpha_prime), (alpha_prime, beta_prime)] {
            if let Some((s, sub)) = score(v) {
                if best.map_or(true, |(bs, ..)| s > bs) {
                    best = Some((s, sub, v, lam));
                }
            }
        }
        let Some((_, subtract, nu, lam)) = best else {
            return Err(Error::Domain(format!(
                "F3 kernel outside the served family: neither alpha' = {alpha_prime} nor \
                 beta' = {beta_prime} lies in the usable range (Re > -0.95, Re(gamma - v) > 0.05) \
                 for gamma = {gam}"
            )));
        };
        let c_in = gam - nu;
        let norm = gamma(gam)? * recip_gamma(nu) * recip_gamma(c_in);
        Ok(EulerRep {
            nu,
            lam,
            norm,
            oms_exp: c_in - 1.0,
            uh0: UnitHyp::new(alpha, beta, c_in)?,
            uh1: UnitHyp::new(alpha + 1.0, beta + 1.0, c_in + 1.0)?,
            uh2: UnitHyp::new(alpha + 2.0, beta + 2.0, c_in + 2.0)?,
            d1_coef: alpha * beta / c_in,
            d2_coef: alpha * (alpha + 1.0) * beta * (beta + 1.0) / (c_in * (c_in + 1.0)),
            subtract,
        })
    }

    pub(crate) fn inner_evaluations(&self) -> usize {
        self.inner_evals.get()
    }

    /// K(u) = F₃(α, α′, β, β′; γ; 1−u, 1−1/u), with 1−u passed exactly.
    pub(crate) fn eval(&self, u: f64, one_minus_u: f64, tol: f64) -> Result<Complex64> {
        if let Some(&v) = self.cache.borrow().get(&u.to_bits()) {
            return Ok(v);
        }
        let value = self.eval_uncached(u, one_minus_u, tol)?;
        self.cache.borrow_mut().insert(u.to_bits(), value);
        Ok(value)
    }

    fn eval_uncached(&self, u: f64, one_minus_u: f64, tol: f64) -> Result<Complex64> {
        let x = one_minus_u;
        match &self.variant {
            KernelVariant::One => Ok(Complex64::new(1.0, 0.0)),
            KernelVariant::SingleX(uh) => uh.eval(x, u, tol),
            KernelVariant::SingleY { uh, pf_exp } => {
                let pf = Complex64::new(u, 0.0).powc(*pf_exp);
                Ok(pf * uh.eval(x, u, tol)?)
            }
            KernelVariant::Euler(rep) => {
                let inner_tol = (tol * INNER_TOL_FACTOR).max(1e-14);
                // Per-u constants for the subtracted path.
                let c0 = rep.uh0.eval(x, u, inner_tol)?;
                let (c1, c2) = if rep.subtract {
                    (
                        rep.d1_coef * rep.uh1.eval(x, u, inner_tol)?,
                        rep.d2_coef * rep.uh2.eval(x, u, inner_tol)?,
                    )
                } else {
                    (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
                };
                let integrand = |s: f64, oms: f64| -> Result<Complex64> {
                    let w2 = x * oms;
                    let omw2 = u + s * x;
                    let s_pow = Complex64::new(s, 0.0).powc(rep.nu - 1.0);
                    let a_fac = Complex64::new(oms, 0.0).powc(rep.oms_exp);
                    if !rep.subtract {
                        let b_fac = Complex64::new(omw2 / u, 0.0).powc(-rep.lam);
                        let c_fac = rep.uh0.eval(w2, omw2, inner_tol)?;
                        return Ok(s_pow * a_fac * b_fac * c_fac);
                    }
                    // Subtracted form: s^(v−1) · g0 · [(1+dA)(1+dB)(1+dC) − 1]
                    // with every deviation computed cancellation-free.
                    let da = expm1_c(rep.oms_exp * (-s).ln_1p());
                    let db = expm1_c(-rep.lam * (s * x / u).ln_1p());
                    let dc = if s * x < 0.01 * u {
                        let d = Complex64::new(x * s, 0.0);
                        (-d * c1 + d * d * 0.5 * c2) / c0
                    } else {
                        (rep.uh0.eval(w2, omw2, inner_tol)? - c0) / c0
                    };
                    let p = da + db + da * db;
                    let q = p + dc + p * dc;
                    Ok(s_pow * c0 * q)
                };
                let out = tanh_sinh_01(integrand, inner_tol, MAX_LEVEL)?;
                self.inner_evals
                    .set(self.inner_evals.get() + out.evaluations);
                let total = if rep.subtract {
                    c0 / rep.nu + out.value
                } else {
                    out.value
                };
                Ok(rep.norm * total)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// integral oracles
// ---------------------------------------------------------------------------

fn report(out: QuadOutcome, prefactor: Complex64, extra_evals: usize, t_max: f64) -> QuadratureReport {
    QuadratureReport {
        value: prefactor * out.value,
        est_error: prefactor.norm() * out.est_error,
        evaluations: out.evaluations + extra_evals,
        truncation_t: t_max,
    }
}

fn check_integral_op(op: &MsmParams) -> Result<()> {
    if op.kind != OperatorKind::Integral {
        return Err(Error::Domain(
            "integral oracle called with a derivative-kind operator".into(),
        ));
    }
    if op.gamma.re <= 0.0 {
        return Err(Error::Precondition(format!(
            "integral operators require Re(gamma) > 0; got {}",
            op.gamma.re
        )));
    }
    Ok(())
}

/// Evaluate the MSM fractional integral by quadrature of the defining
/// kernel integral, compactified onto (0, 1).
pub fn msm_integral_numeric(
    op: &MsmParams,
    f: &Integrand,
    x: f64,
    tol: f64,
) -> Result<QuadratureReport> {
    check_integral_op(op)?;
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    let kernel = F3Kernel::new(op.alpha, op.alpha_prime, op.beta, op.beta_prime, op.gamma)?;
    let prefactor = Complex64::new(x, 0.0).powc(-op.alpha - op.alpha_prime + op.gamma)
        * recip_gamma(op.gamma);
    let u_exp = match op.side {
        Side::Left => -op.alpha_prime,
        Side::Right => op.alpha - op.gamma - 1.0,
    };
    let g_exp = op.gamma - 1.0;
    let out = tanh_sinh_01(
        |u, omu| {
            let t = match op.side {
                Side::Left => x * u,
                Side::Right => x / u,
            };
            let fac = Complex64::new(u, 0.0).powc(u_exp) * Complex64::new(omu, 0.0).powc(g_exp);
            Ok(fac * kernel.eval(u, omu, tol)? * f.eval(t)?)
        },
        tol,
        MAX_LEVEL,
    )?;
    Ok(report(out, prefactor, kernel.inner_evaluations(), f64::INFINITY))
}

/// The same integral without the compactifying substitution: the left side
/// integrates over (0, x) directly, the right side over (x, T) with T grown
/// in octaves until the tail is negligible. Cross-checks the substituted
/// path.
pub fn msm_integral_numeric_direct(
    op: &MsmParams,
    f: &Integrand,
    x: f64,
    tol: f64,
) -> Result<QuadratureReport> {
    check_integral_op(op)?;
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    let kernel = F3Kernel::new(op.alpha, op.alpha_prime, op.beta, op.beta_prime, op.gamma)?;
    match op.side {
        Side::Left => {
            let prefactor = Complex64::new(x, 0.0).powc(-op.alpha) * recip_gamma(op.gamma);
            let out = crate::quad::tanh_sinh_ab(
                |t, xmt| {
                    // u = t/x, 1−u = (x−t)/x
                    let u = t / x;
                    let omu = xmt / x;
                    let fac = Complex64::new(xmt, 0.0).powc(op.gamma - 1.0)
                        * Complex64::new(t, 0.0).powc(-op.alpha_prime);
                    Ok(fac * kernel.eval(u, omu, tol)? * f.eval(t)?)
                },
                0.0,
                x,
                tol,
                MAX_LEVEL,
            )?;
            Ok(report(out, prefactor, kernel.inner_evaluations(), f64::INFINITY))
        }
        Side::Right => {
            let prefactor = Complex64::new(x, 0.0).powc(-op.alpha_prime) * recip_gamma(op.gamma);
            let mut acc = Complex64::new(0.0, 0.0);
            let mut est = 0.0f64;
            let mut evals = 0usize;
            let mut lo = x;
            let mut hi = 8.0 * x;
            let mut small_panels = 0u32;
            loop {
                let out = crate::quad::tanh_sinh_ab(
                    |t, _| {
                        let u = x / t;
                        let omu = (t - x) / t;
                        let fac = Complex64::new(t - x, 0.0).powc(op.gamma - 1.0)
                            * Complex64::new(t, 0.0).powc(-op.alpha);
                        Ok(fac * kernel.eval(u, omu, tol)? * f.eval(t)?)
                    },
                    lo,
                    hi,
                    tol,
                    MAX_LEVEL,
                )?;
                acc += out.value;
                est += out.est_error;
                evals += out.evaluations;
                if out.value.norm() <= 0.1 * tol * acc.norm() {
                    small_panels += 1;
                    if small_panels >= 2 {
                        break;
                    }
                } else {
                    small_panels = 0;
                }
                lo = hi;
                hi *= 2.0;
                if hi > 1e12 * x {
                    return Err(Error::NonConvergence {
                        count: evals,
                        unit: "evaluations",
                        context: "right-side tail did not decay by T = 1e12 x".into(),
                    });
                }
            }
            Ok(QuadratureReport {
                value: prefactor * acc,
                est_error: prefactor.norm() * est,
                evaluations: evals + kernel.inner_evaluations(),
                truncation_t: hi,
            })
        }
    }
}

/// Saigo fractional integral by quadrature (₂F₁ kernel; no continuation is
/// needed because the kernel argument stays on [0, 1)).
pub fn saigo_integral_numeric(
    op: &SaigoParams,
    f: &Integrand,
    x: f64,
    tol: f64,
) -> Result<QuadratureReport> {
    if op.kind != OperatorKind::Integral {
        return Err(Error::Domain(
            "integral oracle called with a derivative-kind operator".into(),
        ));
    }
    if op.alpha.re <= 0.0 {
        return Err(Error::Precondition(format!(
            "Saigo integrals require Re(alpha) > 0; got {}",
            op.alpha.re
        )));
    }
    if !(x > 0.0) {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    let uh = UnitHyp::new(op.alpha + op.beta, -op.gamma, op.alpha)?;
    let prefactor = Complex64::new(x, 0.0).powc(-op.beta) * recip_gamma(op.alpha);
    let a_exp = op.alpha - 1.0;
    let u_exp = match op.side {
        Side::Left => Complex64::new(0.0, 0.0),
        Side::Right => op.beta - 1.0,
    };
    let out = tanh_sinh_01(
        |u, omu| {
            let t = match op.side {
                Side::Left => x * u,
                Side::Right => x / u,
            };
            let fac = Complex64::new(omu, 0.0).powc(a_exp) * Complex64::new(u, 0.0).powc(u_exp);
            // kernel argument 1 − t/x (left) and 1 − x/t (right) are both 1−u
            Ok(fac * uh.eval(omu, u, tol * 0.1)? * f.eval(t)?)
        },
        tol,
        MAX_LEVEL,
    )?;
    Ok(report(out, prefactor, 0, f64::INFINITY))
}

// ---------------------------------------------------------------------------
// derivative oracles
// ---------------------------------------------------------------------------

/// The inner integral operator of the derivative and Caputo constructions:
/// sides share the (−α′, −α, ·, ·, −γ+m) pattern with m on one unprimed
/// slot.
fn inner_integral_op(op: &MsmParams) -> MsmParams {
    let m = op.order_m() as f64;
    match op.side {
        Side::Left => MsmParams {
            alpha: -op.alpha_prime,
            alpha_prime: -op.alpha,
            beta: -op.beta_prime + m,
            beta_prime: -op.beta,
            gamma: -op.gamma + m,
            side: Side::Left,
            kind: OperatorKind::Integral,
        },
        Side::Right => MsmParams {
            alpha: -op.alpha_prime,
            alpha_prime: -op.alpha,
            beta: -op.beta_prime,
            beta_prime: -op.beta + m,
            gamma: -op.gamma + m,
            side: Side::Right,
            kind: OperatorKind::Integral,
        },
    }
}

/// MSM fractional derivative: m-th Richardson-extrapolated central
/// difference (in x) of the substituted inner integral, with the (−1)^m
/// sign on the right side.
pub fn msm_derivative_numeric(
    op: &MsmParams,
    f: &Integrand,
    x: f64,
    tol: f64,
) -> Result<QuadratureReport> {
    if op.kind != OperatorKind::Derivative {
        return Err(Error::Domain(
            "derivative oracle requires a derivative-kind operator".into(),
        ));
    }
    let m = op.order_m();
    if m < 0 {
        return Err(Error::Precondition(format!(
            "differentiation order m = {m} is negative"
        )));
    }
    let inner = inner_integral_op(op);
    let inner_tol = (tol * 1e-4).clamp(1e-13, 1e-9);
    let mut evals = 0usize;
    let mut inner_value = |xx: f64| -> Result<Complex64> {
        let rep = msm_integral_numeric(&inner, f, xx, inner_tol)?;
        evals += rep.evaluations;
        Ok(rep.value)
    };
    if m == 0 {
        let v = inner_value(x)?;
        return Ok(QuadratureReport {
            value: v,
            est_error: inner_tol * v.norm(),
            evaluations: evals,
            truncation_t: f64::INFINITY,
        });
    }
    let sign = if op.side == Side::Right && m % 2 == 1 {
        -1.0
    } else {
        1.0
    };
    let m = m as u32;
    // central m-th difference: Σ (−1)^j C(m,j) V(x + (m/2 − j) h) / h^m
    let mut binom = vec![1.0f64; (m + 1) as usize];
    for j in 1..=m as usize {
        binom[j] = binom[j - 1] * (m as usize - j + 1) as f64 / j as f64;
    }
    let stencil = |h: f64, inner_value: &mut dyn FnMut(f64) -> Result<Complex64>| -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..=m {
            let sgn = if j % 2 == 0 { 1.0 } else { -1.0 };
            let xx = x + (m as f64 / 2.0 - j as f64) * h;
            acc += sgn * binom[j as usize] * inner_value(xx)?;
        }
        Ok(acc / h.powi(m as i32))
    };
    let mut h = 0.01 * x;
    let floor = 1e-6 * x;
    let mut d_prev = stencil(h, &mut inner_value)?;
    let mut best: Option<(Complex64, f64)> = None;
    while h / 2.0 >= floor {
        h /= 2.0;
        let d = stencil(h, &mut inner_value)?;
        // one Richardson level on the O(h^2) stencil
        let r = (4.0 * d - d_prev) / 3.0;
        if let Some((r_prev, _)) = best {
            let err = (r - r_prev).norm();
            best = Some((r, err));
            if err <= tol * r.norm().max(f64::MIN_POSITIVE) {
                let (value, est) = best.unwrap();
                return Ok(QuadratureReport {
                    value: sign * value,
                    est_error: est,
                    evaluations: evals,
                    truncation_t: f64::INFINITY,
                });
            }
        } else {
            best = Some((r, f64::INFINITY));
        }
        d_prev = d;
    }
    let (_, est) = best.unwrap_or((Complex64::new(0.0, 0.0), f64::INFINITY));
    Err(Error::StepCollapse { h, est })
}

/// Caputo-type MSM fractional derivative: the inner integral applied to the
/// operand's exact m-th derivative, with the (−1)^m sign on the right side.
pub fn caputo_numeric(
    op: &MsmParams,
    f: &Integrand,
    x: f64,
    tol: f64,
) -> Result<QuadratureReport> {
    if op.kind != OperatorKind::CaputoDerivative {
        return Err(Error::Domain(
            "Caputo oracle requires a Caputo-kind operator".into(),
        ));
    }
    let m = op.order_m();
    if m < 0 {
        return Err(Error::Precondition(format!(
            "differentiation order m = {m} is negative"
        )));
    }
    let fm = f
        .exact_derivative(m as u32)
        .ok_or(Error::MissingDerivative)?;
    let inner = inner_integral_op(op);
    let mut rep = msm_integral_numeric(&inner, &fm, x, tol)?;
    if op.side == Side::Right && m % 2 == 1 {
        rep.value = -rep.value;
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// truncated-series operand
// ---------------------------------------------------------------------------

/// The power-weighted truncated K-Wright series as a single integrand:
/// t^(ρ/k−1) Σ_{n≤N} c_n (a t^(μ/k))^n on the left side (mirrored
/// exponents on the right).
pub fn truncated_series_integrand(
    side: Side,
    w: &PowerWeight,
    f: &WrightParams,
    n_trunc: usize,
) -> Result<Integrand> {
    let coeffs = series_coefficients(f, n_trunc + 1)?;
    let k = f.k;
    let mut terms = Vec::with_capacity(coeffs.len());
    let mut a_pow = Complex64::new(1.0, 0.0);
    for (n, c) in coeffs.into_iter().enumerate() {
        let nf = n as f64;
        if n > 0 {
            a_pow *= w.a;
        }
        let exponent = match side {
            Side::Left => (w.rho + nf * w.mu) / k - 1.0,
            Side::Right => -(w.rho + nf * w.mu) / k,
        };
        terms.push((c * a_pow, exponent));
    }
    Ok(Integrand::PowerSum(terms))
}

/// Apply the operator to the truncated series as one integrand — without
/// interchanging summation and integration — for comparison against the
/// closed-form image truncated at the same order.
pub fn series_lhs_numeric(
    op: &MsmParams,
    w: &PowerWeight,
    f: &WrightParams,
    x: f64,
    tol: f64,
    n_trunc: usize,
) -> Result<Complex64> {
    let integrand = truncated_series_integrand(op.side, w, f, n_trunc)?;
    let rep = match op.kind {
        OperatorKind::Integral => msm_integral_numeric(op, &integrand, x, tol)?,
        OperatorKind::Derivative => msm_derivative_numeric(op, &integrand, x, tol)?,
        OperatorKind::CaputoDerivative => caputo_numeric(op, &integrand, x, tol)?,
    };
    Ok(rep.value)
}

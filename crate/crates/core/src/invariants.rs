//! Closed-form invariants: dimensional constants, sphere volumes and
//! Yamabe constants, the product lower bound with its defect factor,
//! surgery constants, and the stable invariant.
//!
//! Naming follows the usual conventions: for a manifold dimension
//! `m ≥ 3`, the conformal exponent is `a_m = 4(m-1)/(m-2)` and the
//! critical Sobolev exponent is `p_m = 2m/(m-2)`. The unit round sphere
//! `S^m` has volume `ω_m = 2π^{(m+1)/2} / Γ((m+1)/2)` and Yamabe constant
//! `μ(S^m) = m(m-1)·ω_m^{2/m}`.

use crate::error::{Error, Result};
use crate::gamma;
use std::f64::consts::{E, PI};

/// A strictly positive real carried as its natural log.
///
/// `Σ(S^v)` grows like `(πe/2)^v` and overflows doubles near `v ≈ 470`,
/// so every `Σ`-flavored quantity lives here; conversion back to linear
/// scale is an explicit call.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogValue {
    ln: f64,
}

impl LogValue {
    pub fn from_ln(ln: f64) -> Self {
        Self { ln }
    }

    /// Wraps a strictly positive linear-scale value.
    pub fn from_linear(x: f64) -> Result<Self> {
        if x <= 0.0 || x.is_nan() {
            return Err(Error::NonpositiveInput { what: "log value", value: x });
        }
        Ok(Self { ln: x.ln() })
    }

    pub fn ln(self) -> f64 {
        self.ln
    }

    /// Explicit exponentiation back to linear scale; may overflow to
    /// infinity or underflow to zero when the magnitude is extreme.
    pub fn linear(self) -> f64 {
        self.ln.exp()
    }
}

impl std::ops::Mul for LogValue {
    type Output = LogValue;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Self) -> Self {
        Self { ln: self.ln + rhs.ln }
    }
}

impl std::ops::Div for LogValue {
    type Output = LogValue;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        Self { ln: self.ln - rhs.ln }
    }
}

fn require_dim(m: u32, min: u32) -> Result<()> {
    if m < min {
        Err(Error::DimensionTooSmall { m, min })
    } else {
        Ok(())
    }
}

fn require_nonneg(what: &'static str, x: f64) -> Result<()> {
    if x < 0.0 || x.is_nan() {
        Err(Error::NegativeInput { what, value: x })
    } else {
        Ok(())
    }
}

/// a_m = 4(m-1)/(m-2) for m ≥ 3.
pub fn conformal_exponent(m: u32) -> Result<f64> {
    require_dim(m, 3)?;
    Ok(4.0 * f64::from(m - 1) / f64::from(m - 2))
}

/// p_m = 2m/(m-2) for m ≥ 3.
pub fn critical_exponent(m: u32) -> Result<f64> {
    require_dim(m, 3)?;
    Ok(2.0 * f64::from(m) / f64::from(m - 2))
}

/// Volume ω_m of the unit round sphere S^m, m ≥ 1.
///
/// For arguments `(m+1)/2 ≤ 50` the Gamma factor is exact (factorial or
/// double factorial times `√π`) and the power of π is assembled by
/// integer exponentiation, so small dimensions carry full precision.
pub fn sphere_volume(m: u32) -> Result<f64> {
    require_dim(m, 1)?;
    if m < gamma::EXACT_LIMIT_TWICE {
        let g = gamma::gamma_half_integer(m + 1)?;
        let t = m.div_ceil(2) as i32;
        let pi_pow = if (m + 1).is_multiple_of(2) {
            PI.powi(t)
        } else {
            PI.powi(t) * PI.sqrt()
        };
        Ok(2.0 * pi_pow / g)
    } else {
        Ok(ln_sphere_volume(m)?.exp())
    }
}

/// ln ω_m, valid for every m ≥ 1 without overflow.
pub fn ln_sphere_volume(m: u32) -> Result<f64> {
    require_dim(m, 1)?;
    Ok(2.0f64.ln() + f64::from(m + 1) / 2.0 * PI.ln() - gamma::ln_gamma_half_integer(m + 1)?)
}

/// μ(S^m) = m(m-1)·ω_m^{2/m} for m ≥ 3.
pub fn sphere_yamabe(m: u32) -> Result<f64> {
    require_dim(m, 3)?;
    let ln_omega = ln_sphere_volume(m)?;
    Ok(f64::from(m) * f64::from(m - 1) * (2.0 / f64::from(m) * ln_omega).exp())
}

/// ν(μ, m) = (μ / (m a_m))^m for μ ≥ 0.
pub fn nu_invariant(mu: f64, m: u32) -> Result<f64> {
    require_nonneg("mu", mu)?;
    let a = conformal_exponent(m)?;
    Ok((mu / (f64::from(m) * a)).powi(m as i32))
}

/// Defect factor ε_{v,w} = a_{v+w} / (a_v^{v/m} a_w^{w/m}), m = v+w.
///
/// Always in (0,1) for v, w ≥ 3, symmetric, and approaching 1 as both
/// dimensions grow.
pub fn epsilon_defect(v: u32, w: u32) -> Result<f64> {
    let av = conformal_exponent(v)?;
    let aw = conformal_exponent(w)?;
    let m = f64::from(v + w);
    let am = conformal_exponent(v + w)?;
    Ok(am / (av.powf(f64::from(v) / m) * aw.powf(f64::from(w) / m)))
}

/// Product value a metric of the form g + λh would have if factor Yamabe
/// metrics combined naively:
/// `(μ_V / vol_V^{2/v} + μ_W / vol_W^{2/w}) (vol_V vol_W)^{2/(v+w)}`.
/// `vol_w` is the volume of the already-scaled second factor.
pub fn naive_product(
    mu_v: f64,
    vol_v: f64,
    mu_w: f64,
    vol_w: f64,
    v: u32,
    w: u32,
) -> Result<f64> {
    require_dim(v, 1)?;
    require_dim(w, 1)?;
    if vol_v <= 0.0 || vol_v.is_nan() {
        return Err(Error::NonpositiveInput { what: "vol_v", value: vol_v });
    }
    if vol_w <= 0.0 || vol_w.is_nan() {
        return Err(Error::NonpositiveInput { what: "vol_w", value: vol_w });
    }
    let m = f64::from(v + w);
    let sum = mu_v / vol_v.powf(2.0 / f64::from(v)) + mu_w / vol_w.powf(2.0 / f64::from(w));
    Ok(sum * (vol_v * vol_w).powf(2.0 / m))
}

/// Infimum over the scale λ of the naive product value:
/// `(v+w) (μ_V/v)^{v/(v+w)} (μ_W/w)^{w/(v+w)}`.
pub fn naive_infimum(mu_v: f64, mu_w: f64, v: u32, w: u32) -> Result<f64> {
    require_dim(v, 1)?;
    require_dim(w, 1)?;
    require_nonneg("mu_v", mu_v)?;
    require_nonneg("mu_w", mu_w)?;
    let m = f64::from(v + w);
    Ok(m * (mu_v / f64::from(v)).powf(f64::from(v) / m)
        * (mu_w / f64::from(w)).powf(f64::from(w) / m))
}

/// Lower bound for μ(V×W, g+h) in terms of the factor constants:
/// `m a_m / ((v a_v)^{v/m} (w a_w)^{w/m}) · μ_V^{v/m} μ_W^{w/m}`.
///
/// Equals `epsilon_defect(v,w) · naive_infimum(μ_V, μ_W, v, w)`, and in
/// ν-form says ν(V×W) ≥ ν(V)·ν(W).
pub fn product_lower_bound(mu_v: f64, mu_w: f64, v: u32, w: u32) -> Result<f64> {
    require_nonneg("mu_v", mu_v)?;
    require_nonneg("mu_w", mu_w)?;
    let av = conformal_exponent(v)?;
    let aw = conformal_exponent(w)?;
    let m = v + w;
    let am = conformal_exponent(m)?;
    let mf = f64::from(m);
    let ev = f64::from(v) / mf;
    let ew = f64::from(w) / mf;
    Ok(mf * am / ((f64::from(v) * av).powf(ev) * (f64::from(w) * aw).powf(ew))
        * mu_v.powf(ev)
        * mu_w.powf(ew))
}

/// Lower bound for the smooth Yamabe invariant of a product,
/// σ(V×W) ≥ bound(σ(V), σ(S^w)).
pub fn sigma_product_bound(sigma_v: f64, v: u32, w: u32) -> Result<f64> {
    require_nonneg("sigma_v", sigma_v)?;
    product_lower_bound(sigma_v, sphere_yamabe(w)?, v, w)
}

/// Surgery constant Λ_{m,k} for 2 ≤ k ≤ m-4; symmetric under
/// k ↔ m-k-2. The operand pair is canonically ordered so the symmetry
/// holds bit-exactly.
pub fn lambda_surgery(m: u32, k: u32) -> Result<f64> {
    if m < 6 || k < 2 || k > m - 4 {
        return Err(Error::SurgeryOutOfRange { m, k, max: m.saturating_sub(4) });
    }
    let (d1, d2) = (k + 1, m - k - 1);
    let (d1, d2) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
    product_lower_bound(sphere_yamabe(d1)?, sphere_yamabe(d2)?, d1, d2)
}

/// Λ_m = min over k ∈ {2, …, m-4} of Λ_{m,k}, for m ≥ 6.
///
/// The k = 0 surgery imposes no constraint (its constant is infinite) and
/// k = 1 is excluded, so m < 6 leaves no admissible k and is an error.
pub fn lambda_min(m: u32) -> Result<f64> {
    if m < 6 {
        return Err(Error::DimensionTooSmall { m, min: 6 });
    }
    let mut best = f64::INFINITY;
    for k in 2..=m - 4 {
        best = best.min(lambda_surgery(m, k)?);
    }
    Ok(best)
}

/// Σ(σ, m) = (σ / (m a_m))^m for σ ≥ 0; the metric-supremum analogue of
/// [`nu_invariant`].
pub fn big_sigma(sigma: f64, m: u32) -> Result<f64> {
    require_nonneg("sigma", sigma)?;
    nu_invariant(sigma, m)
}

/// ln Σ(S^v) = ln(4π) + v·ln(π(v-2)/4) - 2·ln Γ((v+1)/2), v ≥ 3.
pub fn sigma_sphere(v: u32) -> Result<LogValue> {
    require_dim(v, 3)?;
    let ln = (4.0 * PI).ln() + f64::from(v) * (PI * f64::from(v - 2) / 4.0).ln()
        - 2.0 * gamma::ln_gamma_half_integer(v + 1)?;
    Ok(LogValue::from_ln(ln))
}

/// lim_{i→∞} Σ(S^{v+bi}) / Σ(S^{bi}) = (πe/2)^v, v ≥ 1.
pub fn stable_ratio_limit(v: u32) -> Result<f64> {
    require_dim(v, 1)?;
    Ok((PI * E / 2.0).powi(v as i32))
}

/// Leading Stirling asymptote of Σ(S^v): `2e^{-2} (πe/2)^v`, in log space.
pub fn sigma_sphere_asymptote(v: u32) -> Result<LogValue> {
    require_dim(v, 3)?;
    Ok(LogValue::from_ln(
        2.0f64.ln() - 2.0 + f64::from(v) * (PI * E / 2.0).ln(),
    ))
}

/// Sandwich `Σ(V) ≤ Σ̄(V) ≤ (πe/2)^v` for the stable invariant: returns
/// `(Σ(V), (πe/2)^v)`.
pub fn stable_bounds(sigma_big_v: f64, v: u32) -> Result<(f64, f64)> {
    require_nonneg("Sigma(V)", sigma_big_v)?;
    Ok((sigma_big_v, stable_ratio_limit(v)?))
}

/// Maps stable-invariant bounds for V to bounds for V×B^i, B Ricci-flat of
/// dimension b: both ends scale by (πe/2)^{b·i}.
pub fn shift_stable_bounds(bounds: (f64, f64), b: u32, i: u32) -> Result<(f64, f64)> {
    require_dim(b, 1)?;
    let factor = (PI * E / 2.0).powi((b * i) as i32);
    Ok((bounds.0 * factor, bounds.1 * factor))
}

/// Normalized Einstein–Hilbert value of a constant-curvature metric:
/// `s · vol^{2/m}`.
pub fn einstein_hilbert_constant(s: f64, vol: f64, m: u32) -> Result<f64> {
    require_dim(m, 3)?;
    if vol <= 0.0 || vol.is_nan() {
        return Err(Error::NonpositiveInput { what: "vol", value: vol });
    }
    Ok(s * vol.powf(2.0 / f64::from(m)))
}

//! The Yamabe quotient, mixed norms, and executable inequality checkers.
//!
//! Every checker returns an [`InequalityReport`] for the claim
//! `lhs ≤ rhs`: `slack = rhs - lhs` and the verdict allows a relative
//! tolerance of 1e-10 with an absolute floor of 1e-12 for near-zero right
//! sides (double-precision accumulation over up to 10^6 terms).

use crate::discrete::DiscreteManifold;
use crate::error::{Error, Result};
use crate::invariants::{conformal_exponent, critical_exponent};

pub const INEQ_REL_TOL: f64 = 1e-10;
pub const INEQ_ABS_FLOOR: f64 = 1e-12;

/// Outcome of one inequality check, oriented as the claim `lhs ≤ rhs`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InequalityReport {
    pub lhs: f64,
    pub rhs: f64,
    /// rhs - lhs; nonnegative up to tolerance when the claim holds.
    pub slack: f64,
    pub holds: bool,
}

impl InequalityReport {
    pub fn compare(lhs: f64, rhs: f64) -> Self {
        let slack = rhs - lhs;
        let tol = (INEQ_REL_TOL * rhs.abs()).max(INEQ_ABS_FLOOR);
        Self { lhs, rhs, slack, holds: slack >= -tol }
    }

    /// Slack relative to the magnitude of the right side.
    pub fn relative_slack(&self) -> f64 {
        self.slack / self.rhs.abs().max(INEQ_ABS_FLOOR)
    }
}

fn require_nonzero(u: &[f64]) -> Result<()> {
    if u.iter().all(|&x| x == 0.0) {
        Err(Error::ZeroField)
    } else {
        Ok(())
    }
}

/// Numerator and denominator data of the quotient, shared by the
/// evaluation and gradient paths in `minimize`.
pub(crate) struct QuotientParts {
    pub a_m: f64,
    pub p_m: f64,
    /// a_m·D(u) + Σ s u² ρ
    pub numerator: f64,
    /// Σ |u|^{p_m} ρ
    pub p_mass: f64,
}

impl QuotientParts {
    pub fn denominator(&self) -> f64 {
        self.p_mass.powf(2.0 / self.p_m)
    }

    pub fn value(&self) -> f64 {
        self.numerator / self.denominator()
    }
}

pub(crate) fn quotient_parts(m: &DiscreteManifold, u: &[f64]) -> Result<QuotientParts> {
    let a_m = conformal_exponent(m.dim())?;
    let p_m = critical_exponent(m.dim())?;
    m.check_field(u)?;
    require_nonzero(u)?;
    let dirichlet = m.dirichlet_energy(u)?;
    let mut curvature_term = 0.0;
    let mut p_mass = 0.0;
    let masses = m.masses();
    let s = m.scalar_curvature();
    for i in 0..u.len() {
        curvature_term += s[i] * u[i] * u[i] * masses[i];
        p_mass += u[i].abs().powf(p_m) * masses[i];
    }
    Ok(QuotientParts { a_m, p_m, numerator: a_m * dirichlet + curvature_term, p_mass })
}

/// Yamabe quotient
/// `F(u) = (a_m ∫|du|² + ∫ s u²) / (∫|u|^{p_m})^{2/p_m}` on the
/// discretization; scale invariant in u and under metric homotheties.
pub fn yamabe_quotient(m: &DiscreteManifold, u: &[f64]) -> Result<f64> {
    Ok(quotient_parts(m, u)?.value())
}

/// (Σ |u_i|^p ρ_i)^{1/p} for p ≥ 1.
pub fn lp_norm(m: &DiscreteManifold, u: &[f64], p: f64) -> Result<f64> {
    if p < 1.0 || p.is_nan() {
        return Err(Error::ExponentTooSmall { p });
    }
    m.check_field(u)?;
    let mut acc = 0.0;
    for (x, rho) in u.iter().zip(m.masses()) {
        acc += x.abs().powf(p) * rho;
    }
    Ok(acc.powf(1.0 / p))
}

fn check_product_field(
    mv: &DiscreteManifold,
    mw: &DiscreteManifold,
    u: &[f64],
) -> Result<()> {
    let expected = mv.n_vertices() * mw.n_vertices();
    if u.len() != expected {
        return Err(Error::ShapeMismatch { expected, got: u.len() });
    }
    Ok(())
}

/// Mixed norm on a product field: inner L^q over the second factor, outer
/// L^p over the first,
/// `( Σ_i ρ_V(i) ( Σ_j |u(i,j)|^q ρ_W(j) )^{p/q} )^{1/p}`.
pub fn mixed_norm(
    mv: &DiscreteManifold,
    mw: &DiscreteManifold,
    u: &[f64],
    p: f64,
    q: f64,
) -> Result<f64> {
    if p < 1.0 || p.is_nan() {
        return Err(Error::ExponentTooSmall { p });
    }
    if q < 1.0 || q.is_nan() {
        return Err(Error::ExponentTooSmall { p: q });
    }
    check_product_field(mv, mw, u)?;
    Ok(mixed_power_sum(mv, mw, u, p, q)?.powf(1.0 / p))
}

/// Σ_i ρ_V(i) (Σ_j |u(i,j)|^q ρ_W(j))^{p/q} without the outer root; the
/// iterated-Hölder checker consumes these sums directly.
fn mixed_power_sum(
    mv: &DiscreteManifold,
    mw: &DiscreteManifold,
    u: &[f64],
    p: f64,
    q: f64,
) -> Result<f64> {
    check_product_field(mv, mw, u)?;
    let n_w = mw.n_vertices();
    let mut outer = 0.0;
    for (i, rho_v) in mv.masses().iter().enumerate() {
        let mut inner = 0.0;
        for (j, rho_w) in mw.masses().iter().enumerate() {
            inner += u[i * n_w + j].abs().powf(q) * rho_w;
        }
        outer += rho_v * inner.powf(p / q);
    }
    Ok(outer)
}

/// Partial L² norm over the second factor:
/// `γ(i) = (Σ_j u(i,j)² ρ_W(j))^{1/2}`, a field on the first factor.
pub fn partial_l2(mw: &DiscreteManifold, u: &[f64]) -> Result<Vec<f64>> {
    let n_w = mw.n_vertices();
    if n_w == 0 || !u.len().is_multiple_of(n_w) {
        return Err(Error::ShapeMismatch { expected: n_w, got: u.len() });
    }
    let n_v = u.len() / n_w;
    let mut gamma = Vec::with_capacity(n_v);
    for i in 0..n_v {
        let mut acc = 0.0;
        for (j, rho_w) in mw.masses().iter().enumerate() {
            let x = u[i * n_w + j];
            acc += x * x * rho_w;
        }
        gamma.push(acc.sqrt());
    }
    Ok(gamma)
}

/// Iterated Hölder inequality on the product (V × W):
/// `(∫|u|^{p_m})^{2/p_m} ≤ [∫_V (∫_W |u|^{p_w})^{2/p_w}]^{w/m} ·
/// [∫_V (∫_W u²)^{p_v/2}]^{(v-2)/m}`.
pub fn check_iterated_holder(
    mv: &DiscreteManifold,
    mw: &DiscreteManifold,
    u: &[f64],
) -> Result<InequalityReport> {
    let v = mv.dim();
    let w = mw.dim();
    let m = v + w;
    let p_m = critical_exponent(m)?;
    let p_v = critical_exponent(v)?;
    let p_w = critical_exponent(w)?;
    require_nonzero(u)?;
    check_product_field(mv, mw, u)?;

    let mf = f64::from(m);
    let n_w = mw.n_vertices();
    let mut lhs_sum = 0.0;
    for (i, rho_v) in mv.masses().iter().enumerate() {
        for (j, rho_w) in mw.masses().iter().enumerate() {
            lhs_sum += u[i * n_w + j].abs().powf(p_m) * rho_v * rho_w;
        }
    }
    let lhs = lhs_sum.powf(2.0 / p_m);

    let b = mixed_power_sum(mv, mw, u, 2.0, p_w)?;
    let a = mixed_power_sum(mv, mw, u, p_v, 2.0)?;
    let rhs = b.powf(f64::from(w) / mf) * a.powf(f64::from(v - 2) / mf);
    Ok(InequalityReport::compare(lhs, rhs))
}

/// Partial-gradient inequality: the Dirichlet energy of
/// `γ = partial_l2(W, u)` on V is dominated by the V-direction part of the
/// product Dirichlet energy of u. Discretely this is the triangle
/// inequality for the weighted L²(W) norm, edge by edge.
pub fn check_partial_gradient(
    mv: &DiscreteManifold,
    mw: &DiscreteManifold,
    u: &[f64],
) -> Result<InequalityReport> {
    require_nonzero(u)?;
    check_product_field(mv, mw, u)?;
    let gamma = partial_l2(mw, u)?;
    let lhs = mv.dirichlet_energy(&gamma)?;

    let n_w = mw.n_vertices();
    let mut rhs = 0.0;
    for e in mv.edges() {
        let mut acc = 0.0;
        for (j, rho_w) in mw.masses().iter().enumerate() {
            let d = u[e.a * n_w + j] - u[e.b * n_w + j];
            acc += rho_w * d * d;
        }
        rhs += e.weight * acc;
    }
    Ok(InequalityReport::compare(lhs, rhs))
}

/// Curvature-splitting hypothesis of the product bound, evaluated over all
/// pairs of factor curvature values:
/// `s_V/a_v + s_W/a_w ≤ (s_V + s_W)/a_m` pointwise.
///
/// Distinct curvature values are deduplicated first, so the cost is the
/// product of the value ranges rather than of the vertex counts. The
/// returned report carries the worst pair.
pub fn check_assumption(
    mv: &DiscreteManifold,
    mw: &DiscreteManifold,
) -> Result<InequalityReport> {
    let a_v = conformal_exponent(mv.dim())?;
    let a_w = conformal_exponent(mw.dim())?;
    let a_m = conformal_exponent(mv.dim() + mw.dim())?;

    let dedup = |values: &[f64]| {
        let mut v: Vec<f64> = values.to_vec();
        v.sort_by(|a, b| a.partial_cmp(b).expect("curvatures are finite"));
        v.dedup();
        v
    };
    let sv = dedup(mv.scalar_curvature());
    let sw = dedup(mw.scalar_curvature());

    let mut worst: Option<InequalityReport> = None;
    for &sg in &sv {
        for &sh in &sw {
            let report =
                InequalityReport::compare(sg / a_v + sh / a_w, (sg + sh) / a_m);
            let replace = match &worst {
                None => true,
                Some(w) => report.slack < w.slack,
            };
            if replace {
                worst = Some(report);
            }
        }
    }
    Ok(worst.expect("manifolds are non-empty"))
}

/// Young-inequality step of the product bound:
/// `c·d ≤ (v/m) c^{m/v} + (w/m) d^{m/w}` for c, d ≥ 0, with equality iff
/// `c^{m/v} = d^{m/w}`.
pub fn check_young(c: f64, d: f64, v: u32, w: u32) -> Result<InequalityReport> {
    if c < 0.0 || c.is_nan() {
        return Err(Error::NegativeInput { what: "c", value: c });
    }
    if d < 0.0 || d.is_nan() {
        return Err(Error::NegativeInput { what: "d", value: d });
    }
    if v < 1 || w < 1 {
        return Err(Error::DimensionTooSmall { m: v.min(w), min: 1 });
    }
    let m = f64::from(v + w);
    let rhs = f64::from(v) / m * c.powf(m / f64::from(v))
        + f64::from(w) / m * d.powf(m / f64::from(w));
    Ok(InequalityReport::compare(c * d, rhs))
}

/// Normalized Einstein–Hilbert value of the discretization,
/// `(Σ s ρ) / (Σ ρ)^{(m-2)/m}`; coincides with the Yamabe quotient of the
/// constant field.
pub fn einstein_hilbert(m: &DiscreteManifold) -> Result<f64> {
    if m.dim() < 3 {
        return Err(Error::DimensionTooSmall { m: m.dim(), min: 3 });
    }
    let total: f64 = m
        .scalar_curvature()
        .iter()
        .zip(m.masses())
        .map(|(s, rho)| s * rho)
        .sum();
    let vol = m.total_volume();
    Ok(total / vol.powf(f64::from(m.dim() - 2) / f64::from(m.dim())))
}

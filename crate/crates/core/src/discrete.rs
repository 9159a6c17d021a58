//! Weighted graph discretizations of compact Riemannian manifolds.
//!
//! A [`DiscreteManifold`] carries lumped vertex masses (the volume
//! element), a sparse symmetric positive-semidefinite Dirichlet form
//! stored as weighted edges, and a pointwise scalar curvature. Products
//! combine factors by the Kronecker-sum rule: factor edges are replicated
//! across the other factor's vertices with mass weights, so the product
//! Dirichlet energy splits exactly into its factor directions.

use crate::error::{Error, Result};
use crate::invariants;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Default cap on vertex counts produced by generators and products.
pub const DEFAULT_VERTEX_BUDGET: u64 = 1_000_000;

/// One off-diagonal entry of the Dirichlet form, contributing
/// `weight · (u_a - u_b)^2` to the energy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub weight: f64,
}

impl Edge {
    pub fn new(a: usize, b: usize, weight: f64) -> Self {
        Self { a, b, weight }
    }
}

/// Weighted discretization of a compact Riemannian manifold. Immutable
/// after construction.
#[derive(Clone, Debug)]
pub struct DiscreteManifold {
    dim: u32,
    masses: Vec<f64>,
    edges: Vec<Edge>,
    scalar_curvature: Vec<f64>,
    label: String,
}

impl DiscreteManifold {
    /// Validates and assembles a manifold. Masses and edge weights must be
    /// strictly positive and finite, edge endpoints distinct and in range,
    /// and the curvature vector as long as the mass vector.
    pub fn new(
        dim: u32,
        masses: Vec<f64>,
        edges: Vec<Edge>,
        scalar_curvature: Vec<f64>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidManifold("dim must be >= 1".into()));
        }
        if masses.is_empty() {
            return Err(Error::InvalidManifold("at least one vertex required".into()));
        }
        for (i, &m) in masses.iter().enumerate() {
            if m <= 0.0 || !m.is_finite() {
                return Err(Error::InvalidManifold(format!(
                    "masses[{i}] must be strictly positive and finite, got {m}"
                )));
            }
        }
        if scalar_curvature.len() != masses.len() {
            return Err(Error::InvalidManifold(format!(
                "scalar_curvature has length {}, expected {}",
                scalar_curvature.len(),
                masses.len()
            )));
        }
        for (i, &s) in scalar_curvature.iter().enumerate() {
            if !s.is_finite() {
                return Err(Error::InvalidManifold(format!(
                    "scalar_curvature[{i}] must be finite, got {s}"
                )));
            }
        }
        let n = masses.len();
        for (i, e) in edges.iter().enumerate() {
            if e.a >= n || e.b >= n {
                return Err(Error::InvalidManifold(format!(
                    "edges[{i}] endpoint out of range: ({}, {}) with {n} vertices",
                    e.a, e.b
                )));
            }
            if e.a == e.b {
                return Err(Error::InvalidManifold(format!(
                    "edges[{i}] is a self-loop at vertex {}",
                    e.a
                )));
            }
            if e.weight <= 0.0 || !e.weight.is_finite() {
                return Err(Error::InvalidManifold(format!(
                    "edges[{i}] weight must be strictly positive and finite, got {}",
                    e.weight
                )));
            }
        }
        Ok(Self { dim, masses, edges, scalar_curvature, label: label.into() })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn n_vertices(&self) -> usize {
        self.masses.len()
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn scalar_curvature(&self) -> &[f64] {
        &self.scalar_curvature
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn total_volume(&self) -> f64 {
        self.masses.iter().sum()
    }

    /// Dirichlet energy Σ_e w_e (u_a - u_b)^2; zero on constants by
    /// construction.
    pub fn dirichlet_energy(&self, u: &[f64]) -> Result<f64> {
        self.check_field(u)?;
        let mut acc = 0.0;
        for e in &self.edges {
            let d = u[e.a] - u[e.b];
            acc += e.weight * d * d;
        }
        Ok(acc)
    }

    /// Applies the Laplacian L of the Dirichlet form, (Lu)_i = Σ w (u_i - u_j),
    /// so that u·Lu equals the Dirichlet energy.
    pub fn laplacian_apply(&self, u: &[f64], out: &mut [f64]) {
        debug_assert_eq!(u.len(), self.n_vertices());
        debug_assert_eq!(out.len(), self.n_vertices());
        out.fill(0.0);
        for e in &self.edges {
            let d = e.weight * (u[e.a] - u[e.b]);
            out[e.a] += d;
            out[e.b] -= d;
        }
    }

    pub(crate) fn check_field(&self, u: &[f64]) -> Result<()> {
        if u.len() != self.n_vertices() {
            return Err(Error::ShapeMismatch { expected: self.n_vertices(), got: u.len() });
        }
        Ok(())
    }

    pub fn to_spec(&self) -> ManifoldSpec {
        ManifoldSpec {
            dim: self.dim,
            label: self.label.clone(),
            masses: self.masses.clone(),
            edges: self.edges.iter().map(|e| (e.a, e.b, e.weight)).collect(),
            scalar_curvature: self.scalar_curvature.clone(),
        }
    }
}

/// Flattened index of the product vertex (i, j) when the second factor has
/// `n_w` vertices. Fields on products are stored row-major in the first
/// factor.
pub fn product_index(i: usize, j: usize, n_w: usize) -> usize {
    i * n_w + j
}

/// Riemannian product under the default vertex budget.
pub fn product(mv: &DiscreteManifold, mw: &DiscreteManifold) -> Result<DiscreteManifold> {
    product_with_budget(mv, mw, DEFAULT_VERTEX_BUDGET)
}

/// Riemannian product of two discretizations.
///
/// Vertices are pairs with mass `ρ_V(i)·ρ_W(j)` and curvature
/// `s_V(i) + s_W(j)`; the Dirichlet form is the Kronecker sum, each factor
/// edge weighted by the other factor's vertex mass.
pub fn product_with_budget(
    mv: &DiscreteManifold,
    mw: &DiscreteManifold,
    budget: u64,
) -> Result<DiscreteManifold> {
    let nv = mv.n_vertices() as u128;
    let nw = mw.n_vertices() as u128;
    let total = nv * nw;
    if total > u128::from(budget) {
        return Err(Error::BudgetExceeded { requested: total, budget });
    }
    let n_w = mw.n_vertices();
    let mut masses = Vec::with_capacity((nv * nw) as usize);
    let mut curv = Vec::with_capacity((nv * nw) as usize);
    for i in 0..mv.n_vertices() {
        for j in 0..n_w {
            masses.push(mv.masses[i] * mw.masses[j]);
            curv.push(mv.scalar_curvature[i] + mw.scalar_curvature[j]);
        }
    }
    let mut edges =
        Vec::with_capacity(mv.edges.len() * n_w + mw.edges.len() * mv.n_vertices());
    for e in &mv.edges {
        for j in 0..n_w {
            edges.push(Edge::new(
                product_index(e.a, j, n_w),
                product_index(e.b, j, n_w),
                e.weight * mw.masses[j],
            ));
        }
    }
    for e in &mw.edges {
        for i in 0..mv.n_vertices() {
            edges.push(Edge::new(
                product_index(i, e.a, n_w),
                product_index(i, e.b, n_w),
                e.weight * mv.masses[i],
            ));
        }
    }
    DiscreteManifold::new(
        mv.dim + mw.dim,
        masses,
        edges,
        curv,
        format!("({}) x ({})", mv.label, mw.label),
    )
}

/// Latitude-symmetric discretization of the round sphere S^m with metric
/// `scale·ρ^m`, reduced to fields depending on the polar angle only.
///
/// Cell i sits at θ_i = (i+½)π/n with mass
/// `ω_{m-1} sin^{m-1}(θ_i) Δθ scale^{m/2}`; consecutive cells are joined
/// through the face at θ = (i+1)π/n with weight
/// `ω_{m-1} sin^{m-1}(θ_face) scale^{m/2-1} / Δθ`. Scalar curvature is the
/// round value `m(m-1)/scale`. Pole cells need no special handling: the
/// sine weight vanishing there shrinks the end weights naturally.
pub fn sphere_latitude(m: u32, n_cells: u32, scale: f64) -> Result<DiscreteManifold> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "sphere_latitude needs m >= 2, got {m}"
        )));
    }
    if n_cells < 8 {
        return Err(Error::InvalidParameter(format!(
            "sphere_latitude needs n_cells >= 8, got {n_cells}"
        )));
    }
    if scale <= 0.0 || !scale.is_finite() {
        return Err(Error::NonpositiveInput { what: "scale", value: scale });
    }
    if u64::from(n_cells) > DEFAULT_VERTEX_BUDGET {
        return Err(Error::BudgetExceeded {
            requested: u128::from(n_cells),
            budget: DEFAULT_VERTEX_BUDGET,
        });
    }
    let n = n_cells as usize;
    let omega_eq = invariants::sphere_volume(m - 1)?;
    let dtheta = PI / f64::from(n_cells);
    let mf = f64::from(m);
    let mass_scale = scale.powf(mf / 2.0);
    let weight_scale = scale.powf(mf / 2.0 - 1.0);

    let mut masses = Vec::with_capacity(n);
    for i in 0..n {
        let theta = (i as f64 + 0.5) * dtheta;
        masses.push(omega_eq * theta.sin().powi(m as i32 - 1) * dtheta * mass_scale);
    }
    let mut edges = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let theta_face = (i as f64 + 1.0) * dtheta;
        edges.push(Edge::new(
            i,
            i + 1,
            omega_eq * theta_face.sin().powi(m as i32 - 1) * weight_scale / dtheta,
        ));
    }
    let curv = vec![mf * (mf - 1.0) / scale; n];
    DiscreteManifold::new(
        m,
        masses,
        edges,
        curv,
        format!("sphere(m={m}, n={n_cells}, scale={scale})"),
    )
}

/// Flat torus of dimension m as a periodic grid with n cells per axis,
/// unit total volume and vanishing scalar curvature.
pub fn flat_torus(m: u32, n_per_axis: u32) -> Result<DiscreteManifold> {
    if m < 1 {
        return Err(Error::InvalidParameter("flat_torus needs m >= 1".into()));
    }
    if n_per_axis < 2 {
        return Err(Error::InvalidParameter(format!(
            "flat_torus needs n_per_axis >= 2, got {n_per_axis}"
        )));
    }
    // n^m against the budget, compared in logs to avoid overflow
    let ln_total = f64::from(m) * f64::from(n_per_axis).ln();
    if ln_total > (DEFAULT_VERTEX_BUDGET as f64).ln() + 1e-9 {
        return Err(Error::BudgetExceeded {
            requested: (n_per_axis as u128).saturating_pow(m),
            budget: DEFAULT_VERTEX_BUDGET,
        });
    }
    let n = n_per_axis as usize;
    let total = n.pow(m);
    let h = 1.0 / f64::from(n_per_axis);
    let mass = h.powi(m as i32);
    let weight = h.powi(m as i32 - 2);

    let masses = vec![mass; total];
    let curv = vec![0.0; total];
    let mut edges = Vec::with_capacity(total * m as usize);
    // vertex index = Σ_d coord_d · n^{m-1-d}
    let mut strides = vec![1usize; m as usize];
    for d in (0..m as usize - 1).rev() {
        strides[d] = strides[d + 1] * n;
    }
    for v in 0..total {
        for &stride in &strides {
            let coord = v / stride % n;
            let neighbor = if coord + 1 == n { v - coord * stride } else { v + stride };
            edges.push(Edge::new(v, neighbor, weight));
        }
    }
    DiscreteManifold::new(m, masses, edges, curv, format!("torus(m={m}, n={n_per_axis})"))
}

/// Homothety G ↦ λG: masses scale by λ^{m/2}, edge weights by λ^{m/2-1},
/// scalar curvature by 1/λ. The Yamabe quotient of every field is
/// unchanged.
pub fn scale_metric(m: &DiscreteManifold, lambda: f64) -> Result<DiscreteManifold> {
    if lambda <= 0.0 || !lambda.is_finite() {
        return Err(Error::NonpositiveInput { what: "lambda", value: lambda });
    }
    let mf = f64::from(m.dim);
    let mass_scale = lambda.powf(mf / 2.0);
    let weight_scale = lambda.powf(mf / 2.0 - 1.0);
    let masses = m.masses.iter().map(|&x| x * mass_scale).collect();
    let edges = m
        .edges
        .iter()
        .map(|e| Edge::new(e.a, e.b, e.weight * weight_scale))
        .collect();
    let curv = m.scalar_curvature.iter().map(|&s| s / lambda).collect();
    DiscreteManifold::new(
        m.dim,
        masses,
        edges,
        curv,
        format!("scale({lambda}) {}", m.label),
    )
}

/// JSON document describing a [`DiscreteManifold`].
///
/// Schema: `{"dim": int, "label": str, "masses": [float],
/// "edges": [[a, b, weight]], "scalar_curvature": [float]}`, arrays
/// ordered by vertex index. Serialization uses shortest round-trip float
/// formatting, so a save/load cycle is bit-identical.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ManifoldSpec {
    pub dim: u32,
    pub label: String,
    pub masses: Vec<f64>,
    pub edges: Vec<(usize, usize, f64)>,
    pub scalar_curvature: Vec<f64>,
}

impl ManifoldSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialization cannot fail")
    }

    /// Validates the document into a manifold; violations name the
    /// offending field and index.
    pub fn into_manifold(self) -> Result<DiscreteManifold> {
        let edges = self
            .edges
            .into_iter()
            .map(|(a, b, w)| Edge::new(a, b, w))
            .collect();
        DiscreteManifold::new(self.dim, self.masses, edges, self.scalar_curvature, self.label)
            .map_err(|e| match e {
                Error::InvalidManifold(msg) => Error::Document(msg),
                other => other,
            })
    }
}

/// Parses a JSON manifold document.
pub fn load_spec(text: &str) -> Result<DiscreteManifold> {
    ManifoldSpec::from_json(text)?.into_manifold()
}

/// Serializes a manifold to its JSON document.
pub fn save_spec(m: &DiscreteManifold) -> String {
    m.to_spec().to_json()
}

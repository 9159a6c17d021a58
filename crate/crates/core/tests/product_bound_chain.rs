//! End-to-end check of the inequality chain behind the product lower
//! bound, evaluated on discretized sphere products where the factor
//! constants are known in closed form.
//!
//! For a normalized nonnegative field u on V × W the chain reads
//!
//!   F(u) ≥ (a_m/a_v) μ_V A^{(v-2)/v} + (a_m/a_w) μ_W B
//!        ≥ r · A^{(v-2)/m} B^{w/m}
//!        ≥ r = product_lower_bound(μ_V, μ_W, v, w),
//!
//! with A = ∫_V (∫_W u²)^{p_v/2}, B = ∫_V (∫_W u^{p_w})^{2/p_w}; the
//! three steps are the partial-gradient/definition step, the Young step,
//! and iterated Hölder with the normalization.

use yamabe_core::discrete::{product, sphere_latitude, DiscreteManifold};
use yamabe_core::functional::{lp_norm, mixed_norm, yamabe_quotient};
use yamabe_core::invariants::{
    conformal_exponent, critical_exponent, product_lower_bound, sphere_yamabe,
};

fn normalized_constant(prod: &DiscreteManifold) -> Vec<f64> {
    let p = critical_exponent(prod.dim()).unwrap();
    let c = prod.total_volume().powf(-1.0 / p);
    vec![c; prod.n_vertices()]
}

fn chain_on_product(mv: &DiscreteManifold, mw: &DiscreteManifold, mu_v: f64, mu_w: f64) {
    let (v, w) = (mv.dim(), mw.dim());
    let m = v + w;
    let (a_v, a_w, a_m) = (
        conformal_exponent(v).unwrap(),
        conformal_exponent(w).unwrap(),
        conformal_exponent(m).unwrap(),
    );
    let (p_v, p_w, p_m) = (
        critical_exponent(v).unwrap(),
        critical_exponent(w).unwrap(),
        critical_exponent(m).unwrap(),
    );
    let prod = product(mv, mw).unwrap();
    let u = normalized_constant(&prod);
    assert!((lp_norm(&prod, &u, p_m).unwrap() - 1.0).abs() < 1e-12);

    let f = yamabe_quotient(&prod, &u).unwrap();
    let a = mixed_norm(mv, mw, &u, p_v, 2.0).unwrap().powf(p_v);
    let b = mixed_norm(mv, mw, &u, 2.0, p_w).unwrap().powi(2);

    let mf = f64::from(m);
    let split = a_m / a_v * mu_v * a.powf(f64::from(v - 2) / f64::from(v))
        + a_m / a_w * mu_w * b;
    let r = product_lower_bound(mu_v, mu_w, v, w).unwrap();
    let young = r * a.powf(f64::from(v - 2) / mf) * b.powf(f64::from(w) / mf);

    let tol = 1e-10;
    assert!(
        f >= split * (1.0 - tol),
        "quotient {f} below split bound {split}"
    );
    assert!(
        split >= young * (1.0 - tol),
        "split bound {split} below Young combination {young}"
    );
    assert!(
        young >= r * (1.0 - tol),
        "Young combination {young} below closed-form bound {r}"
    );
}

#[test]
fn chain_holds_on_s3_x_s3() {
    let factor = sphere_latitude(3, 48, 1.0).unwrap();
    let mu3 = sphere_yamabe(3).unwrap();
    chain_on_product(&factor, &factor, mu3, mu3);
}

#[test]
fn chain_holds_on_s3_x_s4() {
    let a = sphere_latitude(3, 40, 1.0).unwrap();
    let b = sphere_latitude(4, 40, 1.0).unwrap();
    chain_on_product(&a, &b, sphere_yamabe(3).unwrap(), sphere_yamabe(4).unwrap());
}

#[test]
fn chain_holds_on_scaled_product() {
    let a = sphere_latitude(3, 40, 1.0).unwrap();
    let b = sphere_latitude(3, 40, 2.5).unwrap();
    // the factor constants are scale invariant
    let mu3 = sphere_yamabe(3).unwrap();
    chain_on_product(&a, &b, mu3, mu3);
}

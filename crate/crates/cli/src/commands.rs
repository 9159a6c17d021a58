//! The six subcommands: table generation, estimation, verification
//! suites, and the stable-limit convergence table.

use crate::descriptor::{self, Descriptor};
use crate::output::{Cell, Format, Metadata, TableDoc};
use crate::CliError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::Path;
use yamabe_core::discrete::{product, DiscreteManifold, Edge};
use yamabe_core::functional::{
    check_assumption, check_iterated_holder, check_partial_gradient, check_young,
    einstein_hilbert, InequalityReport,
};
use yamabe_core::invariants::{
    conformal_exponent, critical_exponent, epsilon_defect, lambda_min, lambda_surgery,
    sigma_sphere, sigma_sphere_asymptote, sphere_volume, sphere_yamabe, stable_ratio_limit,
};
use yamabe_core::minimize::{assemble_sandwich, estimate_mu, gradient_check, MinimizeConfig};
use yamabe_core::Error;

fn emit(doc: &TableDoc, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    crate::output::emit(doc, format, out)
        .map_err(|e| CliError::usage(format!("cannot write output: {e}")))
}

/// Largest |ln Σ| still representable on the linear scale.
const LINEAR_LIMIT: f64 = 700.0;

pub fn constants(
    m_list: &[u32],
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let mut doc = TableDoc::new(
        vec!["m", "a_m", "p_m", "omega_m", "mu_sphere", "ln_sigma_sphere", "sigma_sphere"],
        Metadata::new(None),
    );
    for &m in m_list {
        let a = conformal_exponent(m).map_err(CliError::from_core)?;
        let p = critical_exponent(m).map_err(CliError::from_core)?;
        let omega = sphere_volume(m).map_err(CliError::from_core)?;
        let mu = sphere_yamabe(m).map_err(CliError::from_core)?;
        let ln_sigma = sigma_sphere(m).map_err(CliError::from_core)?.ln();
        let sigma = if ln_sigma.abs() < LINEAR_LIMIT {
            Cell::Num(ln_sigma.exp())
        } else {
            Cell::Null
        };
        doc.push(vec![
            Cell::Int(i64::from(m)),
            Cell::Num(a),
            Cell::Num(p),
            Cell::Num(omega),
            Cell::Num(mu),
            Cell::Num(ln_sigma),
            sigma,
        ]);
    }
    emit(&doc, format, out)
}

pub fn epsilon_table(
    v_max: u32,
    w_max: u32,
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    if v_max < 3 || w_max < 3 {
        return Err(CliError::usage("epsilon-table bounds must be >= 3"));
    }
    let mut doc = TableDoc::new(
        vec!["v", "w", "epsilon_4dp", "epsilon"],
        Metadata::new(None),
    );
    for v in 3..=v_max {
        for w in 3..=w_max {
            let eps = epsilon_defect(v, w).map_err(CliError::from_core)?;
            doc.push(vec![
                Cell::Int(i64::from(v)),
                Cell::Int(i64::from(w)),
                Cell::Text(format!("{eps:.4}")),
                Cell::Num(eps),
            ]);
        }
    }
    emit(&doc, format, out)
}

pub fn lambda_table(
    m_list: &[u32],
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let mut doc = TableDoc::new(
        vec!["m", "k", "lambda_m_k", "lambda_m_partner_k", "lambda_min", "argmin_k"],
        Metadata::new(None),
    );
    for &m in m_list {
        if m < 6 {
            return Err(CliError::usage(format!(
                "lambda-table needs m >= 6, got {m}"
            )));
        }
        let min = lambda_min(m).map_err(CliError::from_core)?;
        let mut argmin = 2;
        let mut best = f64::INFINITY;
        for k in 2..=m - 4 {
            let val = lambda_surgery(m, k).map_err(CliError::from_core)?;
            if val < best {
                best = val;
                argmin = k;
            }
        }
        for k in 2..=m - 4 {
            let val = lambda_surgery(m, k).map_err(CliError::from_core)?;
            let partner = lambda_surgery(m, m - k - 2).map_err(CliError::from_core)?;
            doc.push(vec![
                Cell::Int(i64::from(m)),
                Cell::Int(i64::from(k)),
                Cell::Num(val),
                Cell::Num(partner),
                Cell::Num(min),
                Cell::Int(i64::from(argmin)),
            ]);
        }
    }
    emit(&doc, format, out)
}

pub struct EstimateFlags {
    pub cfg: MinimizeConfig,
    pub strict: bool,
    pub history: bool,
}

pub fn estimate(
    descriptor_text: &str,
    flags: &EstimateFlags,
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let desc = descriptor::parse(descriptor_text).map_err(CliError::from_core)?;
    let mut doc = TableDoc::new(vec!["key", "value"], Metadata::new(Some(flags.cfg.rng_seed)));

    // top-level products get the curvature hypothesis checked and, when
    // both factor constants are known, a full bound sandwich
    let (manifold, sandwich_parts) = match &desc {
        Descriptor::Product(a, b) => {
            let left = descriptor::realize(a).map_err(CliError::from_core)?;
            let right = descriptor::realize(b).map_err(CliError::from_core)?;
            let assumption = check_assumption(&left.manifold, &right.manifold)
                .map_err(CliError::from_core)?;
            if !assumption.holds {
                return Err(CliError::assumption(format!(
                    "curvature split fails: worst pair has {} > {}",
                    assumption.lhs, assumption.rhs
                )));
            }
            let prod = product(&left.manifold, &right.manifold).map_err(CliError::from_core)?;
            let refs = match (left.mu_reference, right.mu_reference) {
                (Some(mu_v), Some(mu_w))
                    if left.manifold.dim() >= 3 && right.manifold.dim() >= 3 =>
                {
                    Some((mu_v, mu_w, left.manifold.dim(), right.manifold.dim()))
                }
                _ => None,
            };
            (prod, refs)
        }
        _ => {
            let geom = descriptor::realize(&desc).map_err(CliError::from_core)?;
            (geom.manifold, None)
        }
    };

    let result = estimate_mu(&manifold, &flags.cfg).map_err(CliError::from_core)?;

    doc.push(vec![Cell::Text("label".into()), Cell::Text(manifold.label().into())]);
    doc.push(vec![Cell::Text("dim".into()), Cell::Int(i64::from(manifold.dim()))]);
    doc.push(vec![Cell::Text("vertices".into()), Cell::Int(manifold.n_vertices() as i64)]);
    doc.push(vec![Cell::Text("value".into()), Cell::Num(result.value)]);
    doc.push(vec![Cell::Text("iterations".into()), Cell::Int(i64::from(result.iterations))]);
    doc.push(vec![Cell::Text("converged".into()), Cell::Bool(result.converged)]);

    if let Some((mu_v, mu_w, v, w)) = sandwich_parts {
        let reference = einstein_hilbert(&manifold).map_err(CliError::from_core)?;
        let sw = assemble_sandwich(result.value, mu_v, mu_w, v, w, Some(reference))
            .map_err(CliError::from_core)?;
        doc.push(vec![Cell::Text("lower".into()), Cell::Num(sw.lower)]);
        doc.push(vec![Cell::Text("estimate".into()), Cell::Num(sw.estimate)]);
        doc.push(vec![Cell::Text("upper_sphere".into()), Cell::Num(sw.upper_sphere)]);
        doc.push(vec![
            Cell::Text("upper_reference".into()),
            sw.upper_reference.map_or(Cell::Null, Cell::Num),
        ]);
        doc.push(vec![Cell::Text("verdict_lower".into()), Cell::Bool(sw.verdict_lower)]);
        doc.push(vec![Cell::Text("verdict_upper".into()), Cell::Bool(sw.verdict_upper)]);
    }

    if flags.history {
        for (i, f) in result.history.iter().enumerate() {
            doc.push(vec![Cell::Text(format!("history[{i}]")), Cell::Num(*f)]);
        }
    }

    emit(&doc, format, out)?;
    if flags.strict && !result.converged {
        return Err(CliError::strict_nonconvergence(format!(
            "did not converge within {} iterations",
            flags.cfg.max_iters
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Holder,
    Gradient,
    Young,
    Assumption,
    All,
}

fn random_chain(rng: &mut ChaCha8Rng, dim: u32) -> DiscreteManifold {
    let n = rng.gen_range(2..7usize);
    let masses: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..2.0)).collect();
    let mut edges: Vec<Edge> = (0..n - 1)
        .map(|i| Edge::new(i, i + 1, rng.gen_range(0.1..2.0)))
        .collect();
    if n >= 3 && rng.gen_bool(0.5) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            edges.push(Edge::new(a, b, rng.gen_range(0.1..2.0)));
        }
    }
    let s: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
    DiscreteManifold::new(dim, masses, edges, s, "verify").unwrap()
}

struct SuiteOutcome {
    name: &'static str,
    cases: u32,
    passes: u32,
    worst: f64,
}

impl SuiteOutcome {
    fn ok(&self) -> bool {
        self.passes == self.cases
    }

    fn row(&self) -> Vec<Cell> {
        vec![
            Cell::Text(self.name.into()),
            Cell::Int(i64::from(self.cases)),
            Cell::Int(i64::from(self.passes)),
            Cell::Int(i64::from(self.cases - self.passes)),
            Cell::Num(self.worst),
            Cell::Bool(self.ok()),
        ]
    }
}

fn run_inequality_suite(
    name: &'static str,
    cases: u32,
    seed: u64,
    mut check: impl FnMut(&mut ChaCha8Rng) -> InequalityReport,
) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passes = 0;
    let mut worst = f64::INFINITY;
    for _ in 0..cases {
        let rep = check(&mut rng);
        if rep.holds {
            passes += 1;
        }
        worst = worst.min(rep.relative_slack());
    }
    SuiteOutcome { name, cases, passes, worst }
}

pub fn verify(
    suite: Suite,
    cases: u32,
    seed: u64,
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    if cases < 1 {
        return Err(CliError::usage("verify needs at least one case"));
    }
    let mut outcomes = Vec::new();

    if matches!(suite, Suite::Holder | Suite::All) {
        outcomes.push(run_inequality_suite("holder", cases, seed, |rng| {
            let dim_a = rng.gen_range(3..7u32);
            let dim_b = rng.gen_range(3..7u32);
            let a = random_chain(rng, dim_a);
            let b = random_chain(rng, dim_b);
            let u: Vec<f64> = (0..a.n_vertices() * b.n_vertices())
                .map(|_| rng.gen_range(-1.0..1.0))
                .collect();
            check_iterated_holder(&a, &b, &u).expect("valid fuzz instance")
        }));
        outcomes.push(run_inequality_suite("partial_gradient", cases, seed, |rng| {
            let dim_a = rng.gen_range(3..7u32);
            let dim_b = rng.gen_range(3..7u32);
            let a = random_chain(rng, dim_a);
            let b = random_chain(rng, dim_b);
            let u: Vec<f64> = (0..a.n_vertices() * b.n_vertices())
                .map(|_| rng.gen_range(-1.0..1.0))
                .collect();
            check_partial_gradient(&a, &b, &u).expect("valid fuzz instance")
        }));
    }

    if matches!(suite, Suite::Young | Suite::All) {
        outcomes.push(run_inequality_suite("young", cases, seed, |rng| {
            let c = rng.gen_range(0.0..10.0);
            let d = rng.gen_range(0.0..10.0);
            let v = rng.gen_range(3..9u32);
            let w = rng.gen_range(3..9u32);
            check_young(c, d, v, w).expect("valid fuzz instance")
        }));
    }

    if matches!(suite, Suite::Gradient | Suite::All) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut passes = 0;
        let mut worst = 0.0f64;
        for _ in 0..cases {
            let dim = rng.gen_range(3..7u32);
            let m = random_chain(&mut rng, dim);
            let u: Vec<f64> =
                (0..m.n_vertices()).map(|_| rng.gen_range(0.5..1.5)).collect();
            let d = gradient_check(&m, &u).expect("positive fuzz field");
            if d < 1e-5 {
                passes += 1;
            }
            worst = worst.max(d);
        }
        outcomes.push(SuiteOutcome { name: "gradient", cases, passes, worst });
    }

    if matches!(suite, Suite::Assumption | Suite::All) {
        // fixtures with a known expected verdict
        let pair = |dim: u32, s: f64| {
            DiscreteManifold::new(
                dim,
                vec![1.0, 1.0],
                vec![Edge::new(0, 1, 1.0)],
                vec![s, s],
                "fixture",
            )
            .unwrap()
        };
        let positive = check_assumption(&pair(3, 6.0), &pair(3, 6.0)).unwrap();
        let negative = check_assumption(&pair(3, -6.0), &pair(3, 0.0)).unwrap();
        let passes = u32::from(positive.holds) + u32::from(!negative.holds);
        outcomes.push(SuiteOutcome {
            name: "assumption_fixtures",
            cases: 2,
            passes,
            worst: positive.relative_slack(),
        });
    }

    let mut doc = TableDoc::new(
        vec!["suite", "cases", "passes", "failures", "worst", "ok"],
        Metadata::new(Some(seed)),
    );
    let all_ok = outcomes.iter().all(SuiteOutcome::ok);
    for outcome in &outcomes {
        doc.push(outcome.row());
    }
    emit(&doc, format, out)?;
    if all_ok {
        Ok(())
    } else {
        Err(CliError::verification("at least one suite failed"))
    }
}

pub fn stable_limit(
    v: u32,
    b: u32,
    i_max: u32,
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    if v < 1 || b < 1 || i_max < 1 {
        return Err(CliError::usage("stable-limit needs v >= 1, b >= 1, i_max >= 1"));
    }
    let target = stable_ratio_limit(v).map_err(CliError::from_core)?;
    let mut doc = TableDoc::new(
        vec!["i", "dim", "ratio", "target", "rel_error", "sigma_over_asymptote"],
        Metadata::new(None),
    );
    // rows start at the first i with b·i >= 3, where Σ(S^{bi}) is defined
    let i_min = 3u32.div_ceil(b);
    for i in i_min..=i_max {
        let hi = v + b * i;
        let ratio = (sigma_sphere(hi).map_err(CliError::from_core)?.ln()
            - sigma_sphere(b * i).map_err(CliError::from_core)?.ln())
        .exp();
        let asym = (sigma_sphere(hi).map_err(CliError::from_core)?.ln()
            - sigma_sphere_asymptote(hi).map_err(CliError::from_core)?.ln())
        .exp();
        doc.push(vec![
            Cell::Int(i64::from(i)),
            Cell::Int(i64::from(hi)),
            Cell::Num(ratio),
            Cell::Num(target),
            Cell::Num((ratio - target).abs() / target),
            Cell::Num(asym),
        ]);
    }
    emit(&doc, format, out)
}

impl CliError {
    fn from_core(e: Error) -> Self {
        match e {
            Error::AssumptionViolated { lhs, rhs } => {
                CliError::assumption(format!("curvature split fails: {lhs} > {rhs}"))
            }
            other => CliError::usage(other.to_string()),
        }
    }
}

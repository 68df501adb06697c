//! The Maurer-Cartan vector γ and the γ-dressed operators
//! Γ, O_l, O_c, O_r, O₀, with the identities they satisfy.

use crate::algebra::ChAlgebra;
use crate::error::Result;
use crate::evaluator::{evaluate_rooted, Marking, OperatorSet};
use crate::graphs::enumerate_graphs;
use crate::linalg::{SuperOperator, SuperVector};
use crate::report::{combine, Report};
use crate::scalar::{self, Scalar};

/// `γ = E + ½ G₋G₊(γ·γ)`, solved by fixed-point iteration to degree `d`.
pub fn compute_gamma(alg: &ChAlgebra, d: usize) -> SuperVector {
    let e = alg.e_vector().truncate(d);
    let k = alg.propagator();
    let half = scalar::frac(1, 2);
    let mut gamma = e.clone();
    for _ in 1..d {
        let sq = alg.mul(&gamma, &gamma, d);
        gamma = e.add(&alg.apply(&k, &sq, d).scale(&half));
    }
    gamma
}

/// γ as an explicit sum over rooted trivalent trees with `E` on the leaves,
/// `G₋G₊` on every edge including the root, weighted by `1/|Aut|`.
pub fn gamma_from_trees(alg: &ChAlgebra, d: usize) -> Result<SuperVector> {
    let e = alg.e_vector();
    let mut gamma = e.truncate(d);
    let ops = OperatorSet::simplest(alg);
    let k = alg.propagator();
    for m in 2..=d {
        let mut labels = vec!["E"; m];
        labels.insert(0, "R");
        for class in enumerate_graphs(&labels, 0, m + 1)? {
            let g = &class.graph;
            let root = g.leaves.iter().position(|(_, l)| l == "R").expect("root leaf");
            let values: Vec<SuperVector> = g.leaves.iter().map(|_| e.clone()).collect();
            let markings = vec![Marking::black(); g.edges.len()];
            let v = evaluate_rooted(alg, g, &markings, &values, root, &ops, m)?;
            let w = Scalar::new(1.into(), class.aut_order.into());
            gamma = gamma.add(&alg.apply(&k, &v, m).part(m).scale(&w));
        }
    }
    Ok(gamma)
}

/// `G₋γ = 0` and `Qγ + ½G₋(γ²) = 0` up to degree `d`.
pub fn check_maurer_cartan(alg: &ChAlgebra, d: usize) -> Report {
    let gamma = compute_gamma(alg, d);
    let vars = &*alg.vars;
    let first = alg.apply(&alg.gm, &gamma, d);
    let sq = alg.mul(&gamma, &gamma, d);
    let second = alg.apply(&alg.q, &gamma, d).add(&alg.apply(&alg.gm, &sq, d).scale(&scalar::frac(1, 2)));
    combine(
        "Maurer-Cartan equations for gamma",
        vec![
            Report::from_vector("G-(gamma) = 0", vars, &first, "G-(gamma)"),
            Report::from_vector("Q(gamma) + 1/2 G-(gamma^2) = 0", vars, &second, "Q(gamma) + 1/2 G-(gamma^2)"),
        ],
    )
    .with_degree(d)
}

/// The γ-dressed operators, truncated at `degree`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub degree: usize,
    pub gamma: SuperVector,
    /// `Γ(h) = G₋G₊(γ·h)`.
    pub big_gamma: SuperOperator,
    /// `O_l = Σ_i Γ^i`.
    pub ol: SuperOperator,
    /// `O_c = O_l G₋G₊`.
    pub oc: SuperOperator,
    /// `O_r(h) = h + γ·O_c(h)`.
    pub or: SuperOperator,
    /// `O₀ = O_l Π₀ O_r`.
    pub o0: SuperOperator,
}

pub fn compute_operators(alg: &ChAlgebra, d: usize) -> Homotopy {
    let gamma = compute_gamma(alg, d);
    let v = &*alg.vars;
    let n = alg.dim();
    let k = alg.propagator();
    let lg = alg.left_mul_op(&gamma, d);
    let big_gamma = k.compose(v, &lg, d);
    let id = SuperOperator::identity(n);
    let mut ol = id.clone();
    let mut power = id.clone();
    for _ in 0..d {
        power = power.compose(v, &big_gamma, d);
        if power.is_zero() {
            break;
        }
        ol = ol.add(&power);
    }
    let oc = ol.compose(v, &k, d);
    let or = id.add(&lg.compose(v, &oc, d));
    let o0 = ol.compose(v, &alg.pi0, d).compose(v, &or, d);
    Homotopy { degree: d, gamma, big_gamma, ol, oc, or, o0 }
}

fn operator_report(check: &str, alg: &ChAlgebra, residual: &SuperOperator) -> Report {
    match residual.first_nonzero() {
        None => Report::pass(check),
        Some((i, j, s)) => Report::fail(check, format!("entry ({}, {})", alg.label(i), alg.label(j))).with_residual(&alg.vars, &s),
    }
}

/// Result of testing one candidate reading of the `[Q, O_c]` formula.
#[derive(Clone, Debug)]
pub struct ReadingOutcome {
    pub name: &'static str,
    pub holds: bool,
}

/// Candidate readings of `[Q, O_c](h) = −G₋(γ·O_c h) − (middle term) − G₋h`.
pub fn qoc_readings(alg: &ChAlgebra, h: &Homotopy) -> Vec<(ReadingOutcome, SuperOperator)> {
    let d = h.degree;
    let v = &*alg.vars;
    let n = alg.dim();
    let lhs = alg.q.commutator(v, &h.oc, d);
    let lg = alg.left_mul_op(&h.gamma, d);
    let common = alg.gm.compose(v, &lg, d).compose(v, &h.oc, d).neg().sub(&alg.gm);

    // −O_c(γ·G₋(h)), applied column by column.
    let cols: Vec<SuperVector> = (0..n)
        .map(|j| {
            let gh = alg.apply(&alg.gm, &SuperVector::basis(n, j), d);
            alg.apply(&h.oc, &alg.mul(&h.gamma, &gh, d), d)
        })
        .collect();
    let pointwise = SuperOperator::from_columns(alg.gm.parity, &cols);
    // −O_c∘(γ·)∘G₋ as a composite operator.
    let composite = h.oc.compose(v, &lg, d).compose(v, &alg.gm, d);
    // The literal parse −O_c(h) − γ·G₋(h).
    let literal = h.oc.add(&lg.compose(v, &alg.gm, d));

    [("-O_c(gamma . G-(h))", pointwise), ("-O_c o (gamma .) o G-", composite), ("-O_c(h) - gamma . G-(h)", literal)]
        .into_iter()
        .map(|(name, middle)| {
            let residual = lhs.sub(&common.sub(&middle)).truncate(d);
            (ReadingOutcome { name, holds: residual.is_zero() }, residual)
        })
        .collect()
}

/// The operator identities behind the all-degree arguments.
pub fn check_operator_identities(alg: &ChAlgebra, d: usize) -> Vec<Report> {
    let h = compute_operators(alg, d);
    let v = &*alg.vars;
    let n = alg.dim();
    let id = SuperOperator::identity(n);
    let lg = alg.left_mul_op(&h.gamma, d);
    let k = alg.propagator();
    let mut out = Vec::new();

    let mut parts = Vec::new();
    for &i in &alg.h0 {
        let a = SuperVector::basis(n, i);
        let ola = alg.apply(&h.ol, &a, d);
        let lhs = alg.apply(&alg.q, &ola, d);
        let rhs = alg.apply(&alg.gm, &alg.mul(&h.gamma, &ola, d), d).neg();
        parts.push(Report::from_vector("", v, &lhs.sub(&rhs), &format!("a = {}", alg.label(i))));
    }
    out.push(combine("Q O_l(a) = -G-(gamma . O_l(a)) for a in H0", parts).with_degree(d));

    let x = h.ol.compose(v, &alg.gp, d).compose(v, &h.or, d);
    let rhs =
        h.ol.add(&h.or)
            .sub(&id)
            .sub(&alg.q.commutator(v, &x, d))
            .add(&x.compose(v, &lg, d).compose(v, &alg.gm, d))
            .sub(&alg.gm.compose(v, &lg, d).compose(v, &x, d));
    out.push(
        operator_report("O_0 = O_l + O_r - Id - [Q, X] + X gamma G- - G- gamma X, X = O_l G+ O_r", alg, &h.o0.sub(&rhs).truncate(d))
            .with_degree(d),
    );

    let readings = qoc_readings(alg, &h);
    let holding: Vec<&str> = readings.iter().filter(|(r, _)| r.holds).map(|(r, _)| r.name).collect();
    let mut detail =
        readings.iter().map(|(r, _)| format!("{}: {}", r.name, if r.holds { "holds" } else { "fails" })).collect::<Vec<_>>().join("; ");
    let same = readings[0].1 == readings[1].1;
    detail.push_str(if same { "; the first two coincide as operators" } else { "; the first two differ" });
    let qoc = if holding.is_empty() {
        let (_, res) = &readings[0];
        operator_report("[Q, O_c] = -G-(gamma . O_c) - O_c(gamma . G-) - G-", alg, res)
    } else {
        Report::pass("[Q, O_c] = -G-(gamma . O_c) - O_c(gamma . G-) - G-")
    };
    out.push(qoc.with_degree(d).with_detail(detail));

    out.push(operator_report("O_r G- = G-", alg, &h.or.compose(v, &alg.gm, d).sub(&alg.gm)).with_degree(d));
    let lhs = h.ol.compose(v, &k, d).compose(v, &lg, d);
    out.push(operator_report("O_l G-G+ (gamma .) = O_l - Id", alg, &lhs.sub(&h.ol.sub(&id))).with_degree(d));
    let deg0 = h.o0.part(0).sub(&id.sub(&alg.q.commutator(v, &alg.gp, 0)));
    out.push(operator_report("degree-0 slice: O_0 = Id - [Q, G+]", alg, &deg0));
    out
}

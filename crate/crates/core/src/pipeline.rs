//! Groups of checks run by the command line, in a fixed order.

use crate::algebra::{satisfies_one_twelfth, validate_algebra, ChAlgebra};
use crate::bcov::{bcov_verify, check_random_actions};
use crate::error::{Error, Result};
use crate::evaluator::{check_f1_trace_form, check_j_edge_independence};
use crate::homotopy::{check_maurer_cartan, check_operator_identities, compute_gamma, gamma_from_trees};
use crate::relations::{check_getzler, check_wdvv_graph_all, check_wdvv_pde, compare_delta_routes, decompose_in_p_basis, Route};
use crate::report::{Report, Status};

pub const MAX_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub degree: usize,
    pub require_one_twelfth: bool,
    /// Seed for the random cubic actions.
    pub seed: u64,
}

impl Config {
    pub fn new(degree: usize, require_one_twelfth: bool, seed: u64) -> Result<Config> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::Input(format!("degree must be between 1 and {MAX_DEGREE}, got {degree}")));
        }
        Ok(Config { degree, require_one_twelfth, seed })
    }
}

/// Turns an `Unsupported` error into a skipped line.
fn or_skip(check: &str, r: Result<Report>) -> Result<Report> {
    match r {
        Err(Error::Unsupported(why)) => Ok(Report::skipped(check, why)),
        other => other,
    }
}

pub fn validate(alg: &ChAlgebra, cfg: &Config) -> Vec<Report> {
    validate_algebra(alg, cfg.require_one_twelfth)
}

pub fn wdvv(alg: &ChAlgebra, d: usize) -> Result<Vec<Report>> {
    Ok(vec![check_wdvv_graph_all(alg, d)?, or_skip("WDVV, derivative form", check_wdvv_pde(alg, d))?])
}

/// Without the 1/12 axiom the relation is not expected, so its lines are
/// reported as skipped with the outcome kept in the detail.
pub fn getzler(alg: &ChAlgebra, d: usize) -> Result<Vec<Report>> {
    let twelfth = satisfies_one_twelfth(alg);
    let mut out =
        vec![check_getzler(alg, d, Route::Graph)?, or_skip("Getzler relation, derivative form", check_getzler(alg, d, Route::Pde))?];
    if !twelfth {
        for r in out.iter_mut() {
            if r.status != Status::Skipped {
                let outcome = if r.passed() { "residual vanishes anyway" } else { "residual is nonzero" };
                r.status = Status::Skipped;
                r.detail = Some(format!("the 1/12 axiom fails on this algebra; {outcome}"));
            }
        }
    }
    out.push(or_skip("cycles: derivative form = graph form", compare_delta_routes(alg, d))?);
    out.push(decompose_in_p_basis(alg, d)?.1);
    Ok(out)
}

pub fn identities(alg: &ChAlgebra, d: usize) -> Result<Vec<Report>> {
    let mut out = vec![check_maurer_cartan(alg, d)];
    let trees = gamma_from_trees(alg, d)?;
    out.push(
        Report::from_vector("gamma fixed point = rooted tree sum", &alg.vars, &trees.sub(&compute_gamma(alg, d)), "trees - fixed point")
            .with_degree(d),
    );
    out.extend(check_operator_identities(alg, d));
    out.push(check_f1_trace_form(alg, d)?);
    out.push(check_j_edge_independence(alg, d)?);
    Ok(out)
}

pub const RANDOM_ACTIONS: usize = 6;

pub fn bcov(alg: &ChAlgebra, d: usize, seed: u64) -> Result<Vec<Report>> {
    Ok(vec![bcov_verify(alg, d)?, check_random_actions(seed, RANDOM_ACTIONS, d)?])
}

/// Every group at the configured degree. The groups run on separate threads;
/// the output order is fixed.
pub fn all(alg: &ChAlgebra, cfg: &Config) -> Result<Vec<Report>> {
    let d = cfg.degree;
    let (w, g, i, b) = std::thread::scope(|s| {
        let w = s.spawn(|| wdvv(alg, d));
        let g = s.spawn(|| getzler(alg, d));
        let i = s.spawn(|| identities(alg, d));
        let b = s.spawn(|| bcov(alg, d, cfg.seed));
        (w.join(), g.join(), i.join(), b.join())
    });
    let join = |r: std::thread::Result<Result<Vec<Report>>>| r.unwrap_or_else(|p| std::panic::resume_unwind(p));
    let mut out = validate(alg, cfg);
    out.extend(join(w)?);
    out.extend(join(g)?);
    out.extend(join(i)?);
    out.extend(join(b)?);
    Ok(out)
}

mod common;

use std::collections::BTreeMap;

use chgraph::bcov::{
    bcov_critical_point, bcov_verify, check_random_actions, generic_critical_point, generic_critical_value, random_action, rooted_tree_sum,
    unrooted_tree_sum, BcovData, CubicAction,
};
use chgraph::evaluator::compute_potential;
use chgraph::homotopy::compute_gamma;
use chgraph::linalg::{trace, SuperOperator};
use chgraph::scalar::{self, Scalar};
use chgraph::series::{self, Series};
use chgraph::Status;
use common::{fixture, FIXTURES};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const D: usize = 4;

/// Labelled trees on `n` vertices from their Prüfer sequences, as adjacency lists.
fn labelled_trees(n: usize) -> Vec<Vec<Vec<usize>>> {
    match n {
        1 => return vec![vec![vec![]]],
        2 => return vec![vec![vec![1], vec![0]]],
        _ => {}
    }
    let mut out = Vec::new();
    let total = n.pow(n as u32 - 2);
    for code in 0..total {
        let mut seq = Vec::with_capacity(n - 2);
        let mut c = code;
        for _ in 0..n - 2 {
            seq.push(c % n);
            c /= n;
        }
        let mut degree = vec![1usize; n];
        for &x in &seq {
            degree[x] += 1;
        }
        if degree.iter().any(|&k| k > 3) {
            continue;
        }
        let mut adj = vec![Vec::new(); n];
        let mut left = degree.clone();
        for &x in &seq {
            let leaf = (0..n).find(|&v| left[v] == 1).unwrap();
            adj[leaf].push(x);
            adj[x].push(leaf);
            left[leaf] -= 1;
            left[x] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| left[v] == 1).collect();
        adj[rest[0]].push(rest[1]);
        adj[rest[1]].push(rest[0]);
        out.push(adj);
    }
    out
}

fn factorial(n: usize) -> Scalar {
    scalar::int((1..=n as i64).product())
}

/// Contracts the forms at vertex `i`-slot with the incoming vectors.
fn source(a: &CubicAction, ins: &[Vec<Series>], d: usize) -> Vec<Series> {
    let m = a.dim();
    let mul = |x: &Series, y: &Series| series::mul(&a.vars, x, y, d);
    (0..m)
        .map(|i| match ins {
            [] => a.k1[i].clone(),
            [w] => (0..m).fold(Series::zero(), |acc, j| acc.add(&mul(&a.k2[i][j], &w[j]))),
            [w, x] => {
                let mut acc = Series::zero();
                for j in 0..m {
                    for k in 0..m {
                        acc.add_assign(&mul(&a.k3[i][j][k], &mul(&w[j], &x[k])));
                    }
                }
                acc
            }
            _ => unreachable!(),
        })
        .collect()
}

fn raise(a: &CubicAction, s: &[Series]) -> Vec<Series> {
    let m = a.dim();
    (0..m).map(|j| (0..m).fold(Series::zero(), |acc, i| acc.add(&s[i].scale(&a.b2[j][i])))).collect()
}

fn outgoing(a: &CubicAction, adj: &[Vec<usize>], u: usize, parent: Option<usize>, d: usize) -> Vec<Series> {
    let ins: Vec<Vec<Series>> = adj[u].iter().filter(|&&w| Some(w) != parent).map(|&w| outgoing(a, adj, w, Some(u), d)).collect();
    raise(a, &source(a, &ins, d))
}

fn closed(a: &CubicAction, adj: &[Vec<usize>], d: usize) -> Series {
    let ins: Vec<Vec<Series>> = adj[0].iter().map(|&w| outgoing(a, adj, w, Some(0), d)).collect();
    let (first, rest) = ins.split_first().unwrap();
    let s = source(a, rest, d);
    (0..a.dim()).fold(Series::zero(), |acc, i| acc.add(&series::mul(&a.vars, &s[i], &first[i], d)))
}

/// Cheap vertices (valence ≤ 2 counting the root leg) each cost one degree.
fn affordable(adj: &[Vec<usize>], root: Option<usize>, d: usize) -> bool {
    let cheap = (0..adj.len()).filter(|&v| adj[v].len() + usize::from(root == Some(v)) <= 2).count();
    cheap <= d
}

/// Nested-parenthesis code of the tree hanging from `u`; equal codes give
/// equal values.
fn shape(adj: &[Vec<usize>], u: usize, parent: Option<usize>) -> String {
    let mut kids: Vec<String> = adj[u].iter().filter(|&&w| Some(w) != parent).map(|&w| shape(adj, w, Some(u))).collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Labelled trees grouped by shape seen from `root`, with their counts.
fn tally(
    n: usize,
    roots: impl Fn(&[Vec<usize>]) -> Vec<usize>,
    root_leg: bool,
    d: usize,
) -> BTreeMap<String, (u64, Vec<Vec<usize>>, usize)> {
    let mut out: BTreeMap<String, (u64, Vec<Vec<usize>>, usize)> = BTreeMap::new();
    for adj in labelled_trees(n) {
        for r in roots(&adj) {
            if !affordable(&adj, root_leg.then_some(r), d) {
                continue;
            }
            let entry = out.entry(shape(&adj, r, None)).or_insert((0, adj.clone(), r));
            entry.0 += 1;
        }
    }
    out
}

fn rooted_oracle(a: &CubicAction, d: usize) -> Vec<Series> {
    let mut total = vec![Series::zero(); a.dim()];
    for n in 1..=2 * d - 1 {
        let classes = tally(n, |adj| (0..adj.len()).filter(|&r| adj[r].len() <= 2).collect(), true, d);
        for (count, adj, r) in classes.values() {
            let w = scalar::int(*count as i64) / factorial(n);
            let v = outgoing(a, adj, *r, None, d);
            for (t, x) in total.iter_mut().zip(&v) {
                t.add_assign(&x.scale(&w));
            }
        }
    }
    total
}

fn unrooted_oracle(a: &CubicAction, d: usize) -> Series {
    let mut total = Series::zero();
    for n in 2..=2 * d - 2 {
        for (count, adj, _) in tally(n, |_| vec![0], false, d).values() {
            let w = scalar::int(*count as i64) / factorial(n);
            total.add_assign(&closed(a, adj, d).scale(&w));
        }
    }
    total
}

/// `K₁ + K₂v + ½K₃vv − B₂v`.
fn gradient_oracle(a: &CubicAction, v: &[Series], d: usize) -> Vec<Series> {
    let m = a.dim();
    let mul = |x: &Series, y: &Series| series::mul(&a.vars, x, y, d);
    (0..m)
        .map(|i| {
            let mut g = a.k1[i].clone();
            for j in 0..m {
                g.add_assign(&mul(&a.k2[i][j], &v[j]));
                g.sub_assign(&v[j].scale(&a.b2_form[i][j]));
                for k in 0..m {
                    g.add_assign(&mul(&a.k3[i][j][k], &mul(&v[j], &v[k])).scale(&scalar::frac(1, 2)));
                }
            }
            g
        })
        .collect()
}

#[test]
fn prufer_counts() {
    let counts: Vec<usize> = (3..=6).map(|n| labelled_trees(n).len()).collect();
    // Labelled trees with every degree at most 3.
    assert_eq!(counts, vec![3, 16, 120, 1170]);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn random_actions_match_tree_oracles(seed in any::<u64>(), m in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_action(&mut rng, m, 2).unwrap();
        let (v, rep) = generic_critical_point(&a, D).unwrap();
        prop_assert_eq!(rep.status, Status::Pass);
        prop_assert!(gradient_oracle(&a, &v, D).iter().all(|g| g.is_zero()));
        let rooted = rooted_tree_sum(&a, D);
        prop_assert_eq!(&rooted, &v);
        prop_assert_eq!(&rooted_oracle(&a, D), &v);
        let (value, rep) = generic_critical_value(&a, &v, D).unwrap();
        prop_assert_eq!(rep.status, Status::Pass);
        prop_assert_eq!(&unrooted_tree_sum(&a, D).unwrap(), &value);
        prop_assert_eq!(&unrooted_oracle(&a, D), &value);
    }
}

#[test]
fn seeded_random_action_report_passes() {
    for seed in [0, 1, 7] {
        let r = check_random_actions(seed, 6, D).unwrap();
        assert_eq!(r.status, Status::Pass, "seed {seed}: {r:?}");
    }
}

#[test]
fn bcov_critical_point_and_value() {
    for name in FIXTURES {
        let alg = fixture(name);
        let r = bcov_verify(&alg, D).unwrap();
        assert_eq!(r.status, Status::Pass, "{name}: {r:?}");
        let data = BcovData::new(&alg).unwrap();
        let (v, rep) = bcov_critical_point(&alg, &data, D).unwrap();
        assert!(rep.passed());
        let lifted = alg.e_vector().add(&alg.apply(&alg.gm, &v, D));
        assert_eq!(lifted, compute_gamma(&alg, D), "{name}");
        assert_eq!(chgraph::bcov::bcov_action(&alg, &v, D), compute_potential(&alg, 0, D).unwrap(), "{name}");
    }
}

/// Pairs `(G₋⊗G₋)b₂` with `ω_M(x, y) = ∫x·M(y)` for every matrix unit `M`
/// and compares with `tr(G₋G₊∘M)`.
#[test]
fn lifted_b2_pairs_like_the_propagator() {
    for name in FIXTURES {
        let alg = fixture(name);
        let n = alg.dim();
        let data = BcovData::new(&alg).unwrap();
        let lifted = data.b2_bivector(n).apply_both(&alg.vars, &alg.gm, &alg.gm, 0);
        let k = alg.propagator();
        for p in 0..n {
            for q in 0..n {
                let parity = alg.parity(p).add(alg.parity(q));
                let unit = SuperOperator::from_constants(n, parity, &[(p, q, scalar::one())]);
                let omega: Vec<Vec<Series>> = (0..n)
                    .map(|x| {
                        (0..n)
                            .map(|y| {
                                let my = alg.apply(&unit, &chgraph::linalg::SuperVector::basis(n, y), 0);
                                alg.integrate(&alg.mul(&chgraph::linalg::SuperVector::basis(n, x), &my, 0))
                            })
                            .collect()
                    })
                    .collect();
                let want = trace(&k.compose(&alg.vars, &unit, 0));
                assert_eq!(lifted.contract(&alg.vars, &omega, 0), want, "{name}: unit ({p}, {q})");
            }
        }
    }
}

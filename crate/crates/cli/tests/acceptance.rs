//! One line per acceptance criterion, each with its tolerance. Every
//! comparison is exact rational equality.

use std::collections::BTreeSet;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;

use chgraph::algebra::{satisfies_one_twelfth, validate_algebra, AlgebraSpec};
use chgraph::bcov::{bcov_verify, check_random_actions, BcovData};
use chgraph::evaluator::{check_f1_trace_form, check_j_edge_independence, compute_potential, evaluate_graph, Marking, OperatorSet};
use chgraph::graphs::{enumerate_graphs, Graph, IsoClass};
use chgraph::homotopy::{check_maurer_cartan, check_operator_identities, compute_gamma, compute_operators, qoc_readings};
use chgraph::linalg::{operator_to_bivector, SuperOperator, SuperVector};
use chgraph::relations::{
    check_getzler, check_wdvv_graph_all, check_wdvv_pde, quadruples, wdvv_graph_values, DecompositionTable, Mode, Route,
    GETZLER_COEFFICIENTS,
};
use chgraph::scalar::{self, Scalar};
use chgraph::{ChAlgebra, Series, Status};

const FIXTURES: [&str; 5] = ["frobenius2", "block8", "odd8", "broken12", "broken_twelfth"];
const CERTIFIED: [&str; 3] = ["frobenius2", "block8", "odd8"];

fn path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"))
}

fn spec(name: &str) -> AlgebraSpec {
    AlgebraSpec::from_json(&std::fs::read_to_string(path(name)).unwrap()).unwrap()
}

fn fixture(name: &str) -> ChAlgebra {
    ChAlgebra::load(&path(name)).unwrap()
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

type Outcome = Result<(), String>;

// 1

fn mul(s: &mut AlgebraSpec, i: usize, j: usize, k: usize, c: &str) {
    s.multiplication.push((i, j, k, c.to_string()));
}

fn sym(s: &mut AlgebraSpec, i: usize, j: usize, k: usize) {
    mul(s, i, j, k, "1");
    mul(s, j, i, k, "1");
}

fn mutations() -> Vec<(&'static str, &'static str, Box<dyn Fn(&mut AlgebraSpec)>, &'static str)> {
    vec![
        ("odd8", "supercommutativity", Box::new(|s| mul(s, 2, 2, 3, "1")), "(z, z)"),
        ("block8", "associativity", Box::new(|s| sym(s, 0, 1, 3)), "(1, 1, x)"),
        ("block8", "Q^2 = 0", Box::new(|s| s.q.push((4, 5, "1".into()))), "(e, e)"),
        ("block8", "G-^2 = 0", Box::new(|s| s.gminus.push((4, 6, "1".into()))), "(e, e)"),
        ("block8", "QG- + G-Q = 0", Box::new(|s| s.gminus[1].2 = "1".into()), "(QGe, e)"),
        ("odd8", "Hodge decomposition", Box::new(|s| s.q.push((3, 2, "1".into()))), "Q(z) = w"),
        ("odd8", "Q derivation", Box::new(|s| sym(s, 1, 5, 1)), "(t, e)"),
        ("block8", "7-term relation", Box::new(|s| sym(s, 1, 6, 2)), "(x, e, x)"),
        ("block8", "integral Q-invariance", Box::new(|s| s.integral[5] = "1".into()), "(1, e)"),
        ("block8", "integral G- invariance", Box::new(|s| mul(s, 6, 6, 3, "1")), "(e, Ge)"),
        ("odd8", "integral G+ invariance", Box::new(|s| sym(s, 2, 4, 3)), "(z, Qe)"),
        ("frobenius2", "nondegeneracy", Box::new(|s| s.integral = vec!["1".into(), "0".into()]), "det"),
        ("block8", "derived operators", Box::new(|s| s.integral[2] = "1".into()), "(x, Ge)"),
        ("block8", "1/12 axiom", Box::new(|s| sym(s, 0, 6, 0)), "(e) residual -1/12"),
        (
            "block8",
            "1/12 kernel relation",
            Box::new(|s| {
                mul(s, 6, 7, 4, "1");
                mul(s, 7, 6, 4, "-1");
            }),
            "h =",
        ),
    ]
}

fn axiom_suite() -> Outcome {
    for name in FIXTURES {
        let r = validate_algebra(&fixture(name), false);
        ensure(r.iter().all(|r| r.status != Status::Fail), format!("{name} fails validation"))?;
    }
    for name in CERTIFIED {
        ensure(validate_algebra(&fixture(name), true).iter().all(|r| r.passed()), format!("{name} not 1/12-certified"))?;
    }
    let muts = mutations();
    ensure(muts.len() >= 10, "fewer than 10 mutations")?;
    for (name, check, edit, fragment) in muts {
        let mut s = spec(name);
        edit(&mut s);
        let alg = ChAlgebra::from_spec(&s).map_err(|e| format!("{check}: {e}"))?;
        let reports = validate_algebra(&alg, true);
        let r = reports.iter().find(|r| r.check == check).ok_or(format!("no check {check}"))?;
        let w = r.witness.clone().unwrap_or_default();
        ensure(r.failed() && w.contains(fragment), format!("{check}: witness {w:?}"))?;
    }
    Ok(())
}

// 2

/// Trees grown by inserting leaf `k` on every edge, recorded by their splits.
fn insertion_oracle(n: usize) -> BTreeSet<BTreeSet<BTreeSet<usize>>> {
    let mut trees: Vec<(usize, Vec<(usize, usize)>)> = vec![(1, vec![(0, 100), (0, 101), (0, 102)])];
    for k in 3..n {
        let mut next = Vec::new();
        for (nv, edges) in &trees {
            for i in 0..edges.len() {
                let mut e = edges.clone();
                let (u, v) = e.remove(i);
                e.extend([(u, *nv), (*nv, v), (*nv, 100 + k)]);
                next.push((nv + 1, e));
            }
        }
        trees = next;
    }
    trees.iter().map(|(_, e)| splits(e, n)).collect()
}

fn splits(edges: &[(usize, usize)], n: usize) -> BTreeSet<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for skip in 0..edges.len() {
        let (a, b) = edges[skip];
        if a >= 100 || b >= 100 {
            continue;
        }
        let mut seen = BTreeSet::from([a]);
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for (i, &(u, v)) in edges.iter().enumerate() {
                let y = if i == skip {
                    continue;
                } else if u == x {
                    v
                } else if v == x {
                    u
                } else {
                    continue;
                };
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        let side: BTreeSet<usize> = seen.iter().filter(|&&x| x >= 100).map(|x| x - 100).collect();
        out.insert(if side.contains(&0) { (0..n).filter(|x| !side.contains(x)).collect() } else { side });
    }
    out
}

fn graph_counts() -> Outcome {
    for (n, want) in (3..=7).zip([1usize, 3, 15, 105, 945]) {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        let classes = enumerate_graphs(&refs, 0, n).map_err(|e| e.to_string())?;
        let ours: BTreeSet<_> = classes
            .iter()
            .map(|c| {
                let mut e: Vec<(usize, usize)> = c.graph.edges.iter().map(|e| (e.u, e.v)).collect();
                e.extend(c.graph.leaves.iter().map(|(v, l)| (*v, 100 + l.parse::<usize>().unwrap())));
                splits(&e, n)
            })
            .collect();
        ensure(classes.len() == want && ours == insertion_oracle(n), format!("n = {n}: {} trees", classes.len()))?;
    }
    let tadpole = Graph::new(1, &[(0, 0)], &[(0, "a")]);
    let caterpillar = Graph::new(3, &[(0, 1), (1, 2)], &[(0, "a"), (0, "b"), (1, "c"), (2, "a"), (2, "b")]);
    ensure(tadpole.automorphism_order() == 2, "tadpole |Aut|")?;
    ensure(caterpillar.automorphism_order() == 2, "caterpillar |Aut|")
}

// 3

fn potential_weights() -> Outcome {
    let weights = |n: usize, g: usize| -> Vec<Scalar> {
        let mut w: Vec<Scalar> =
            enumerate_graphs(&vec!["E"; n], g, n + 2 * g + 2).unwrap().iter().map(|c| Scalar::new(1.into(), c.aut_order.into())).collect();
        w.sort();
        w
    };
    let f = |p, q| scalar::frac(p, q);
    ensure(weights(3, 0) == vec![f(1, 6)] && weights(4, 0) == vec![f(1, 8)] && weights(5, 0) == vec![f(1, 8)], "F0 weights")?;
    ensure(weights(1, 1) == vec![f(1, 2)] && weights(2, 1) == vec![f(1, 4), f(1, 4)], "F1 weights")?;
    for name in FIXTURES {
        let alg = fixture(name);
        let e = alg.e_vector();
        let k = alg.propagator();
        let d = 5;
        let e2 = alg.mul(&e, &e, d);
        let ke2 = alg.apply(&k, &e2, d);
        let want = alg
            .integrate(&alg.mul(&e2, &e, d))
            .scale(&f(1, 6))
            .add(&alg.integrate(&alg.mul(&e2, &ke2, d)).scale(&f(1, 8)))
            .add(&alg.integrate(&alg.mul(&alg.mul(&e, &ke2, d), &ke2, d)).scale(&f(1, 8)));
        ensure(compute_potential(&alg, 0, d).unwrap() == want, format!("{name}: F0 to degree 5"))?;
    }
    Ok(())
}

// 4

fn tadpole() -> Outcome {
    let g = Graph::new(1, &[(0, 0)], &[(0, "a")]);
    let class = IsoClass { aut_order: g.automorphism_order(), graph: g };
    for name in FIXTURES {
        let alg = fixture(name);
        let ops = OperatorSet::simplest(&alg);
        for i in 0..alg.dim() {
            let a = SuperVector::basis(alg.dim(), i);
            let got = evaluate_graph(&alg, &class, &[Marking::j_black()], std::slice::from_ref(&a), &ops, 0).map_err(|e| e.to_string())?;
            let k = alg.propagator().compose(&alg.vars, &alg.left_mul_op(&a, 0), 0);
            let jk = SuperOperator::parity_operator(&alg.space).compose(&alg.vars, &k, 0).with_parity(k.parity);
            let str_k: Series = (0..alg.dim()).fold(Series::zero(), |acc, r| acc.add(jk.get(r, r)));
            ensure(got == str_k.scale(&scalar::frac(1, 2)), format!("{name}, a = {}", alg.label(i)))?;
        }
    }
    Ok(())
}

// 5

fn pi0_form(alg: &ChAlgebra, idx: [usize; 4], [p, q, r, s]: [usize; 4]) -> Series {
    let ps: Vec<_> = idx.iter().map(|&a| alg.parity(alg.h0[a])).collect();
    let (ext, u) = alg.with_extra_vars(&ps, "u").unwrap();
    let n = alg.dim();
    let x: Vec<SuperVector> = idx.iter().enumerate().map(|(k, &a)| SuperVector::basis_times(n, alg.h0[a], Series::var(u[k]))).collect();
    let left = ext.mul(&x[p], &x[q], 4);
    let right = ext.apply(&ext.pi0, &ext.mul(&x[r], &x[s], 4), 4);
    ext.integrate(&ext.mul(&left, &right, 4)).multilinear_coefficient(&u)
}

fn wdvv() -> Outcome {
    for name in FIXTURES {
        let alg = fixture(name);
        ensure(check_wdvv_graph_all(&alg, 5).unwrap().status == Status::Pass, format!("{name}: graph route"))?;
        if !alg.has_odd_zero_modes() {
            ensure(check_wdvv_pde(&alg, 5).unwrap().status == Status::Pass, format!("{name}: derivative route"))?;
        }
        for idx in quadruples(alg.h0.len()) {
            let forms: Vec<Series> = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]].iter().map(|o| pi0_form(&alg, idx, *o)).collect();
            let (channels, _) = wdvv_graph_values(&alg, idx, 0, Mode::Simplest, None).unwrap();
            ensure(forms[0] == forms[1] && forms[0] == forms[2] && channels == forms, format!("{name} {idx:?}: degree 0"))?;
        }
    }
    Ok(())
}

// 6

fn decomposition_table() -> Outcome {
    let rows: [[&str; 9]; 7] = [
        ["1/16", "0", "-1/8", "1/16", "0", "0", "0", "0", "1/192"],
        ["1/4", "-1/4", "0", "0", "1/4", "0", "0", "0", "0"],
        ["-1/8", "1/4", "0", "0", "0", "0", "-1/48", "0", "0"],
        ["0", "-1/12", "1/4", "0", "0", "-1/48", "1/144", "0", "0"],
        ["0", "0", "0", "0", "0", "1/4", "-1/12", "-1/4", "0"],
        ["0", "0", "0", "0", "0", "-1/8", "0", "1/4", "1/16"],
        ["0", "0", "0", "3/8", "-1/2", "0", "0", "0", "1/16"],
    ];
    let want: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|s| scalar::parse(s).unwrap()).collect()).collect();
    let t = DecompositionTable::standard();
    ensure(t.rows == want && want.iter().flatten().count() == 63, "table entries")?;
    ensure(GETZLER_COEFFICIENTS == [12, -4, -2, 6, 1, 1, -2], "coefficients")?;
    let zero = vec![scalar::zero(); 9];
    ensure(t.getzler_combination() == zero, "combination of rows")?;
    let p1 = scalar::int(12) * scalar::frac(1, 16) - scalar::int(4) * scalar::frac(1, 4) + scalar::int(2) * scalar::frac(1, 8);
    ensure(p1 == scalar::zero(), "P1 column")
}

// 7

fn getzler() -> Outcome {
    for name in CERTIFIED {
        let alg = fixture(name);
        ensure(check_getzler(&alg, 3, Route::Graph).unwrap().status == Status::Pass, format!("{name}: graph route"))?;
        if !alg.has_odd_zero_modes() {
            ensure(check_getzler(&alg, 3, Route::Pde).unwrap().status == Status::Pass, format!("{name}: derivative route"))?;
        }
    }
    let r = check_getzler(&fixture("block8"), 3, Route::Graph).unwrap();
    ensure(r.detail.unwrap_or_default().contains("some cycles are nonzero"), "block8 cancellation is trivial")?;
    let broken = fixture("broken_twelfth");
    ensure(!satisfies_one_twelfth(&broken), "broken_twelfth satisfies 1/12")?;
    for route in [Route::Graph, Route::Pde] {
        ensure(check_getzler(&broken, 3, route).unwrap().status == Status::Fail, format!("broken_twelfth {route:?} residual is zero"))?;
    }
    Ok(())
}

// 8

fn maurer_cartan() -> Outcome {
    for name in FIXTURES {
        let alg = fixture(name);
        ensure(check_maurer_cartan(&alg, 5).status == Status::Pass, format!("{name}: MC"))?;
        let d = 4;
        let e = alg.e_vector();
        let kk = |v: &SuperVector| alg.apply(&alg.propagator(), v, d);
        let ke2 = kk(&alg.mul(&e, &e, d));
        let ke_ke2 = kk(&alg.mul(&e, &ke2, d));
        let trees = [
            (e.clone(), scalar::int(1)),
            (ke2.clone(), scalar::frac(1, 2)),
            (ke_ke2.clone(), scalar::frac(1, 2)),
            (kk(&alg.mul(&ke2, &ke2, d)), scalar::frac(1, 8)),
            (kk(&alg.mul(&e, &ke_ke2, d)), scalar::frac(1, 2)),
        ];
        let want = trees.iter().fold(SuperVector::zero(alg.dim()), |acc, (v, c)| acc.add(&v.scale(c))).truncate(d);
        ensure(compute_gamma(&alg, d) == want, format!("{name}: tree coefficients"))?;
    }
    Ok(())
}

// 9

fn operator_identities() -> Outcome {
    for name in FIXTURES {
        let alg = fixture(name);
        for r in check_operator_identities(&alg, 3) {
            ensure(r.status == Status::Pass, format!("{name}: {}", r.check))?;
        }
        let h = compute_operators(&alg, 3);
        let readings = qoc_readings(&alg, &h);
        let coincide = readings[0].1 == readings[1].1;
        let distinct_holding = if coincide {
            usize::from(readings[0].0.holds) + usize::from(readings[2].0.holds)
        } else {
            readings.iter().filter(|(r, _)| r.holds).count()
        };
        if !alg.gm.is_zero() {
            ensure(coincide && distinct_holding == 1 && readings[0].0.holds, format!("{name}: readings"))?;
        }
    }
    Ok(())
}

// 10

fn bcov() -> Outcome {
    let r = check_random_actions(0, 12, 4).unwrap();
    ensure(r.status == Status::Pass, format!("random actions: {:?}", r.witness))?;
    for name in FIXTURES {
        let alg = fixture(name);
        let r = bcov_verify(&alg, 4).unwrap();
        ensure(r.status == Status::Pass, format!("{name}: {:?}", r.witness))?;
        let data = BcovData::new(&alg).unwrap();
        let lifted = data.b2_bivector(alg.dim()).apply_both(&alg.vars, &alg.gm, &alg.gm, 0);
        let target = operator_to_bivector(&alg.propagator(), alg.eta_inverse().unwrap());
        ensure(lifted == target, format!("{name}: (G- x G-) b2"))?;
    }
    Ok(())
}

// 11

fn cross_pipeline() -> Outcome {
    for name in FIXTURES {
        let alg = fixture(name);
        ensure(check_f1_trace_form(&alg, 4).unwrap().passed(), format!("{name}: trace form"))?;
        ensure(check_j_edge_independence(&alg, 4).unwrap().passed(), format!("{name}: J edge"))?;
    }
    Ok(())
}

// 12

fn determinism() -> Outcome {
    for name in ["block8", "odd8"] {
        let run = || {
            let out = Command::new(env!("CARGO_BIN_EXE_chgraph"))
                .args(["all", path(name).to_str().unwrap(), "--format", "json", "--degree", "3", "--seed", "5"])
                .output()
                .unwrap();
            (out.status.code(), out.stdout)
        };
        let (a, b) = (run(), run());
        ensure(a.0 == Some(0) && !a.1.is_empty() && a == b, format!("{name}: runs differ"))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, &str, fn() -> Outcome)> = vec![
        ("axiom suite and single-mutation witnesses", "exact", axiom_suite),
        ("trivalent tree counts, tadpole and caterpillar symmetry", "exact", graph_counts),
        ("first potential weights 1/6 1/8 1/8 and 1/2 1/4 1/4", "exact rational", potential_weights),
        ("tadpole is half the supertrace of G-G+ o a", "exact", tadpole),
        ("WDVV to degree 5, both routes, degree-0 slice", "zero residual", wdvv),
        ("7x9 decomposition table and its zero combination", "exact rational", decomposition_table),
        ("Getzler relation to degree 3, nonzero without 1/12", "zero residual", getzler),
        ("Maurer-Cartan to degree 5 and gamma tree coefficients", "exact", maurer_cartan),
        ("operator identities to degree 3, one [Q, O_c] reading", "exact", operator_identities),
        ("BCOV critical point, value and b2 to degree 4", "exact", bcov),
        ("genus one trace form and J-edge independence to degree 4", "exact", cross_pipeline),
        ("two runs of all give byte-identical JSON", "byte-identical", determinism),
    ];
    let mut failed = Vec::new();
    for (k, (what, tol, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let line = match &outcome {
            Ok(()) => format!("criterion {:>2}: PASS  {what}  (tolerance: {tol})\n", k + 1),
            Err(why) => {
                failed.push(k + 1);
                format!("criterion {:>2}: FAIL  {what}  (tolerance: {tol})  {why}\n", k + 1)
            }
        };
        let _ = std::io::stdout().lock().write_all(line.as_bytes());
    }
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}

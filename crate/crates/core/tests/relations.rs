mod common;

use chgraph::linalg::SuperVector;
use chgraph::relations::{
    check_getzler, check_wdvv_graph_all, check_wdvv_pde, compare_delta_routes, decompose_in_p_basis, evaluate_delta_cycles,
    getzler_combination, quadruples, wdvv_graph_values, DecompositionTable, Mode, Route, GETZLER_COEFFICIENTS,
};
use chgraph::scalar::{self, Scalar};
use chgraph::{ChAlgebra, Error, Series, Status};
use common::{fixture, CERTIFIED, FIXTURES};

const D_WDVV: usize = 5;
const D_GETZLER: usize = 3;

#[test]
fn wdvv_graph_form_holds_on_every_fixture() {
    for name in FIXTURES {
        let r = check_wdvv_graph_all(&fixture(name), D_WDVV).unwrap();
        assert_eq!(r.status, Status::Pass, "{name}: {r:?}");
    }
}

#[test]
fn wdvv_derivative_form_holds_where_zero_modes_are_even() {
    for name in FIXTURES {
        let alg = fixture(name);
        match check_wdvv_pde(&alg, D_WDVV) {
            Ok(r) => {
                assert!(!alg.has_odd_zero_modes());
                assert_eq!(r.status, Status::Pass, "{name}: {r:?}");
            }
            Err(Error::Unsupported(_)) => assert!(alg.has_odd_zero_modes(), "{name}"),
            Err(e) => panic!("{name}: {e}"),
        }
    }
    assert!(fixture("odd8").has_odd_zero_modes());
}

/// `∫xy·Π₀(zw)` at `u₁u₂u₃u₄` with `x_k = e_{i_k}u_k`, straight from the
/// product, the integral and `Π₀`.
fn pi0_four_point(alg: &ChAlgebra, idx: [usize; 4], order: [usize; 4]) -> Series {
    let parities: Vec<_> = idx.iter().map(|&a| alg.parity(alg.h0[a])).collect();
    let (ext, u) = alg.with_extra_vars(&parities, "u").unwrap();
    let n = alg.dim();
    let x: Vec<SuperVector> = idx.iter().enumerate().map(|(k, &a)| SuperVector::basis_times(n, alg.h0[a], Series::var(u[k]))).collect();
    let d = 4;
    let [p, q, r, s] = order;
    let left = ext.mul(&x[p], &x[q], d);
    let right = ext.apply(&ext.pi0, &ext.mul(&x[r], &x[s], d), d);
    ext.integrate(&ext.mul(&left, &right, d)).multilinear_coefficient(&u)
}

#[test]
fn degree_zero_slice_is_symmetric_pi0_form() {
    for name in FIXTURES {
        let alg = fixture(name);
        for idx in quadruples(alg.h0.len()) {
            let tu = pi0_four_point(&alg, idx, [0, 1, 2, 3]);
            let tv = pi0_four_point(&alg, idx, [0, 2, 1, 3]);
            let tw = pi0_four_point(&alg, idx, [0, 3, 1, 2]);
            assert_eq!(tu, tv, "{name} {idx:?}");
            assert_eq!(tu, tw, "{name} {idx:?}");
            let (channels, _) = wdvv_graph_values(&alg, idx, 0, Mode::Simplest, None).unwrap();
            assert_eq!(channels, vec![tu.clone(), tv, tw], "{name} {idx:?}");
        }
    }
}

#[test]
fn degree_zero_slice_is_not_trivial() {
    let alg = fixture("block8");
    let any = quadruples(alg.h0.len()).into_iter().any(|idx| !pi0_four_point(&alg, idx, [0, 1, 2, 3]).is_zero());
    assert!(any);
}

fn literal_table() -> Vec<Vec<Scalar>> {
    let rows: [[&str; 9]; 7] = [
        ["1/16", "0", "-1/8", "1/16", "0", "0", "0", "0", "1/192"],
        ["1/4", "-1/4", "0", "0", "1/4", "0", "0", "0", "0"],
        ["-1/8", "1/4", "0", "0", "0", "0", "-1/48", "0", "0"],
        ["0", "-1/12", "1/4", "0", "0", "-1/48", "1/144", "0", "0"],
        ["0", "0", "0", "0", "0", "1/4", "-1/12", "-1/4", "0"],
        ["0", "0", "0", "0", "0", "-1/8", "0", "1/4", "1/16"],
        ["0", "0", "0", "3/8", "-1/2", "0", "0", "0", "1/16"],
    ];
    rows.iter().map(|r| r.iter().map(|s| scalar::parse(s).unwrap()).collect()).collect()
}

#[test]
fn decomposition_table_constants() {
    let t = DecompositionTable::standard();
    assert_eq!(t.rows.len(), 7);
    assert!(t.rows.iter().all(|r| r.len() == 9));
    assert_eq!(t.rows, literal_table());
    assert_eq!(GETZLER_COEFFICIENTS, [12, -4, -2, 6, 1, 1, -2]);
    let zero = vec![scalar::int(0); 9];
    assert_eq!(t.getzler_combination(), zero);
    let mut by_hand = zero.clone();
    for (row, c) in literal_table().iter().zip(GETZLER_COEFFICIENTS) {
        for (o, x) in by_hand.iter_mut().zip(row) {
            *o += x * scalar::int(c);
        }
    }
    assert_eq!(by_hand, zero);
}

#[test]
fn decomposition_holds_on_certified_fixtures() {
    for name in CERTIFIED {
        let (_, r) = decompose_in_p_basis(&fixture(name), D_GETZLER).unwrap();
        assert_eq!(r.status, Status::Pass, "{name}: {r:?}");
    }
    let (_, r) = decompose_in_p_basis(&fixture("broken_twelfth"), D_GETZLER).unwrap();
    assert_eq!(r.status, Status::Skipped);
}

#[test]
fn getzler_relation_holds_on_certified_fixtures() {
    for name in CERTIFIED {
        let alg = fixture(name);
        let g = check_getzler(&alg, D_GETZLER, Route::Graph).unwrap();
        assert_eq!(g.status, Status::Pass, "{name}: {g:?}");
        if !alg.has_odd_zero_modes() {
            let p = check_getzler(&alg, D_GETZLER, Route::Pde).unwrap();
            assert_eq!(p.status, Status::Pass, "{name}: {p:?}");
        }
    }
}

#[test]
fn getzler_cancellation_is_nontrivial_on_block_fixture() {
    let alg = fixture("block8");
    let some = quadruples(alg.h0.len())
        .into_iter()
        .any(|idx| evaluate_delta_cycles(&alg, idx, D_GETZLER, Mode::General).unwrap().iter().any(|x| !x.is_zero()));
    assert!(some);
    let r = check_getzler(&alg, D_GETZLER, Route::Graph).unwrap();
    assert!(r.detail.unwrap_or_default().contains("some cycles are nonzero"));
}

#[test]
fn getzler_relation_fails_without_one_twelfth() {
    let alg = fixture("broken_twelfth");
    for route in [Route::Graph, Route::Pde] {
        let r = check_getzler(&alg, D_GETZLER, route).unwrap();
        assert_eq!(r.status, Status::Fail, "{route:?}");
    }
    let total: Vec<Series> = quadruples(alg.h0.len())
        .into_iter()
        .map(|idx| getzler_combination(&evaluate_delta_cycles(&alg, idx, D_GETZLER, Mode::General).unwrap()))
        .collect();
    assert!(total.iter().any(|s| !s.is_zero()));
}

#[test]
fn both_routes_give_the_same_cycles() {
    for name in FIXTURES {
        let alg = fixture(name);
        if alg.has_odd_zero_modes() {
            assert!(compare_delta_routes(&alg, D_GETZLER).is_err());
            continue;
        }
        let r = compare_delta_routes(&alg, D_GETZLER).unwrap();
        assert_eq!(r.status, Status::Pass, "{name}: {r:?}");
    }
}

mod common;

use chgraph::homotopy::{check_maurer_cartan, check_operator_identities, compute_gamma, compute_operators, gamma_from_trees, qoc_readings};
use chgraph::linalg::{SuperOperator, SuperVector};
use chgraph::scalar;
use chgraph::{ChAlgebra, Status};
use common::{fixture, FIXTURES};

const D_MC: usize = 5;
const D_OPS: usize = 3;

/// `E + ½K(E²) + ½K(E·K(E²)) + ½K(E·K(E·K(E²))) + ⅛K(K(E²)·K(E²))`.
fn gamma_oracle(alg: &ChAlgebra, d: usize) -> SuperVector {
    let e = alg.e_vector();
    let k = alg.propagator();
    let kk = |v: &SuperVector| alg.apply(&k, v, d);
    let ke2 = kk(&alg.mul(&e, &e, d));
    let ke_ke2 = kk(&alg.mul(&e, &ke2, d));
    let terms = [
        (e.clone(), scalar::int(1)),
        (ke2.clone(), scalar::frac(1, 2)),
        (ke_ke2.clone(), scalar::frac(1, 2)),
        (kk(&alg.mul(&e, &ke_ke2, d)), scalar::frac(1, 2)),
        (kk(&alg.mul(&ke2, &ke2, d)), scalar::frac(1, 8)),
    ];
    terms.iter().fold(SuperVector::zero(alg.dim()), |acc, (v, c)| acc.add(&v.scale(c))).truncate(d)
}

#[test]
fn gamma_matches_its_first_trees() {
    for name in FIXTURES {
        let alg = fixture(name);
        assert_eq!(compute_gamma(&alg, 4), gamma_oracle(&alg, 4), "{name}");
    }
}

#[test]
fn gamma_solves_its_fixed_point_equation() {
    for name in FIXTURES {
        let alg = fixture(name);
        let g = compute_gamma(&alg, D_MC);
        let sq = alg.mul(&g, &g, D_MC);
        let rhs = alg.e_vector().add(&alg.apply(&alg.propagator(), &sq, D_MC).scale(&scalar::frac(1, 2)));
        assert_eq!(g, rhs.truncate(D_MC), "{name}");
    }
}

#[test]
fn gamma_tree_sum_agrees_with_iteration() {
    for name in FIXTURES {
        let alg = fixture(name);
        assert_eq!(gamma_from_trees(&alg, D_MC).unwrap(), compute_gamma(&alg, D_MC), "{name}");
    }
}

#[test]
fn maurer_cartan_holds() {
    for name in FIXTURES {
        let r = check_maurer_cartan(&fixture(name), D_MC);
        assert_eq!(r.status, Status::Pass, "{name}: {r:?}");
    }
}

#[test]
fn gamma_is_nontrivial_on_block_fixture() {
    let alg = fixture("block8");
    let g = compute_gamma(&alg, 3);
    assert!(!g.part(2).is_zero());
}

#[test]
fn dressed_operators_satisfy_their_identities() {
    for name in FIXTURES {
        let alg = fixture(name);
        for r in check_operator_identities(&alg, D_OPS) {
            assert_eq!(r.status, Status::Pass, "{name}: {r:?}");
        }
    }
}

#[test]
fn left_operator_inverts_id_minus_gamma() {
    for name in FIXTURES {
        let alg = fixture(name);
        let h = compute_operators(&alg, D_OPS);
        let id = SuperOperator::identity(alg.dim());
        let lhs = id.sub(&h.big_gamma).compose(&alg.vars, &h.ol, D_OPS);
        assert_eq!(lhs.truncate(D_OPS), id, "{name}");
    }
}

#[test]
fn exactly_one_distinct_qoc_reading_holds() {
    for name in FIXTURES {
        let alg = fixture(name);
        let h = compute_operators(&alg, D_OPS);
        let r = qoc_readings(&alg, &h);
        assert_eq!(r.len(), 3);
        assert!(r[0].0.holds && r[1].0.holds, "{name}");
        assert_eq!(r[0].1, r[1].1, "{name}");
        if alg.gm.is_zero() {
            assert!(r[2].0.holds, "{name}");
        } else {
            assert!(!r[2].0.holds, "{name}: literal parse should fail");
        }
    }
    assert!(fixture("frobenius2").gm.is_zero());
    assert!(!fixture("block8").gm.is_zero());
}

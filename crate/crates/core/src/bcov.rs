//! Critical points of cubic actions as sums over trees, and the BCOV action
//! whose critical point and value reproduce γ and `F₀`.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::ChAlgebra;
use crate::error::{Error, Result};
use crate::evaluator::compute_potential;
use crate::graphs::Graph;
use crate::homotopy::compute_gamma;
use crate::linalg::{invert, operator_to_bivector, Bivector, SuperVector};
use crate::report::{combine, Report};
use crate::scalar::{self, Scalar};
use crate::series::{self, Mono, Parity, Series, Vars, VarsRef};

/// `A(v) = K₁(v) + ½K₂(v,v) + ⅙K₃(v,v,v) − ½B₂(v,v)` on an even space `V`
/// with coordinates `v_i`, coefficients in series over `vars`.
#[derive(Clone, Debug)]
pub struct CubicAction {
    pub vars: VarsRef,
    pub k1: Vec<Series>,
    pub k2: Vec<Vec<Series>>,
    pub k3: Vec<Vec<Vec<Series>>>,
    pub b2_form: Vec<Vec<Scalar>>,
    /// Inverse of `b2_form`.
    pub b2: Vec<Vec<Scalar>>,
}

impl CubicAction {
    pub fn new(
        vars: VarsRef,
        k1: Vec<Series>,
        k2: Vec<Vec<Series>>,
        k3: Vec<Vec<Vec<Series>>>,
        b2_form: Vec<Vec<Scalar>>,
    ) -> Result<CubicAction> {
        let m = k1.len();
        if !vars.all_even() {
            return Err(Error::Input("cubic actions need even coefficient variables".into()));
        }
        let square = |n: usize| n == m;
        if !square(k2.len())
            || !k2.iter().all(|r| square(r.len()))
            || !square(k3.len())
            || !k3.iter().all(|r| square(r.len()) && r.iter().all(|c| square(c.len())))
            || !square(b2_form.len())
            || !b2_form.iter().all(|r| square(r.len()))
        {
            return Err(Error::Shape(format!("forms must all live on a {m}-dimensional space")));
        }
        for i in 0..m {
            for j in 0..m {
                if k2[i][j] != k2[j][i] || b2_form[i][j] != b2_form[j][i] {
                    return Err(Error::Input("K2 and B2 must be symmetric".into()));
                }
                for k in 0..m {
                    let x = &k3[i][j][k];
                    if *x != k3[j][i][k] || *x != k3[i][k][j] {
                        return Err(Error::Input("K3 must be symmetric".into()));
                    }
                }
            }
        }
        if k1.iter().chain(k2.iter().flatten()).any(|s| !s.part(0).is_zero()) {
            return Err(Error::Input("K1 and K2 must vanish in degree 0 for the tree sums to be formal".into()));
        }
        for s in k1.iter().chain(k2.iter().flatten()).chain(k3.iter().flatten().flatten()) {
            vars.check(s)?;
        }
        let b2 = invert(&b2_form).ok_or_else(|| Error::Input("B2 is degenerate".into()))?;
        Ok(CubicAction { vars, k1, k2, k3, b2_form, b2 })
    }

    pub fn dim(&self) -> usize {
        self.k1.len()
    }

    fn value_in(&self, vars: &Vars, v: &[Series], d: usize) -> Series {
        let m = self.dim();
        let mul = |a: &Series, b: &Series| series::mul(vars, a, b, d);
        let mut acc = Series::zero();
        for i in 0..m {
            acc.add_assign(&mul(&self.k1[i], &v[i]));
            for j in 0..m {
                let vij = mul(&v[i], &v[j]);
                acc.add_assign(&mul(&self.k2[i][j], &vij).scale(&scalar::frac(1, 2)));
                acc.sub_assign(&vij.scale(&self.b2_form[i][j]).scale(&scalar::frac(1, 2)));
                for k in 0..m {
                    if self.k3[i][j][k].is_zero() {
                        continue;
                    }
                    acc.add_assign(&mul(&self.k3[i][j][k], &mul(&vij, &v[k])).scale(&scalar::frac(1, 6)));
                }
            }
        }
        acc
    }

    pub fn value(&self, v: &[Series], d: usize) -> Series {
        self.value_in(&self.vars, v, d)
    }

    /// `∂A/∂v_i` at `v`, read off as the `ε`-coefficient of `A(v + ε e_i)`.
    pub fn gradient(&self, v: &[Series], d: usize) -> Result<Vec<Series>> {
        let n = self.vars.len();
        let mut ps = self.vars.parities().to_vec();
        ps.push(Parity::Even);
        let mut names: Vec<String> = (0..n).map(|i| self.vars.name(i).to_string()).collect();
        names.push("eps".into());
        let ext = Vars::new(ps, names)?;
        Ok((0..self.dim())
            .map(|i| {
                let mut w = v.to_vec();
                w[i] = w[i].add(&Series::var(n));
                self.value_in(&ext, &w, d + 1).multilinear_coefficient(&[n]).truncate(d)
            })
            .collect())
    }

    /// The covector `K₁ + K₂(v,·) + ½K₃(v,v,·)`.
    fn source(&self, v: &[Series], d: usize) -> Vec<Series> {
        let m = self.dim();
        let vars = &*self.vars;
        (0..m)
            .map(|i| {
                let mut w = self.k1[i].truncate(d);
                for j in 0..m {
                    w.add_assign(&series::mul(vars, &self.k2[i][j], &v[j], d));
                    for k in 0..m {
                        if self.k3[i][j][k].is_zero() {
                            continue;
                        }
                        let vjk = series::mul(vars, &v[j], &v[k], d);
                        w.add_assign(&series::mul(vars, &self.k3[i][j][k], &vjk, d).scale(&scalar::frac(1, 2)));
                    }
                }
                w
            })
            .collect()
    }

    fn raise(&self, w: &[Series]) -> Vec<Series> {
        raise_with(&self.b2, w)
    }

    /// `v ↦ b₂(K₁ + K₂(v,·) + ½K₃(v,v,·))` contracted along the root edge of a
    /// vertex of valence `children.len() + 1`.
    fn vertex_vector(&self, children: &[&[Series]], d: usize) -> Vec<Series> {
        let m = self.dim();
        let vars = &*self.vars;
        let cov: Vec<Series> = (0..m)
            .map(|i| match children {
                [] => self.k1[i].truncate(d),
                [a] => {
                    let mut s = Series::zero();
                    for j in 0..m {
                        s.add_assign(&series::mul(vars, &self.k2[i][j], &a[j], d));
                    }
                    s
                }
                [a, b] => {
                    let mut s = Series::zero();
                    for j in 0..m {
                        for k in 0..m {
                            let ab = series::mul(vars, &a[j], &b[k], d);
                            s.add_assign(&series::mul(vars, &self.k3[i][j][k], &ab, d));
                        }
                    }
                    s
                }
                _ => unreachable!("vertices have valence at most 3"),
            })
            .collect();
        self.raise(&cov)
    }

    /// Full contraction of `K_k` with `k` vectors.
    fn vertex_scalar(&self, slots: &[&[Series]], d: usize) -> Series {
        let m = self.dim();
        let vars = &*self.vars;
        let mul = |a: &Series, b: &Series| series::mul(vars, a, b, d);
        let mut s = Series::zero();
        match slots {
            [a] => (0..m).for_each(|i| s.add_assign(&mul(&self.k1[i], &a[i]))),
            [a, b] => {
                for i in 0..m {
                    for j in 0..m {
                        s.add_assign(&mul(&self.k2[i][j], &mul(&a[i], &b[j])));
                    }
                }
            }
            [a, b, c] => {
                for i in 0..m {
                    for j in 0..m {
                        let ab = mul(&a[i], &b[j]);
                        for k in 0..m {
                            s.add_assign(&mul(&self.k3[i][j][k], &mul(&ab, &c[k])));
                        }
                    }
                }
            }
            _ => unreachable!("vertices have valence 1 to 3"),
        }
        s
    }
}

fn raise_with(b2: &[Vec<Scalar>], w: &[Series]) -> Vec<Series> {
    b2.iter()
        .map(|row| {
            let mut s = Series::zero();
            for (bij, wj) in row.iter().zip(w) {
                if !bij.is_zero() {
                    s.add_assign(&wj.scale(bij));
                }
            }
            s
        })
        .collect()
}

/// The critical point by iterating `v ← b₂(K₁ + K₂(v,·) + ½K₃(v,v,·))` to a
/// fixed point, with a report certifying that every partial of `A` vanishes.
pub fn generic_critical_point(action: &CubicAction, d: usize) -> Result<(Vec<Series>, Report)> {
    let mut v = vec![Series::zero(); action.dim()];
    for _ in 0..=d + 1 {
        let next = action.raise(&action.source(&v, d));
        if next == v {
            break;
        }
        v = next;
    }
    let grad = action.gradient(&v, d)?;
    let report = match grad.iter().position(|g| !g.is_zero()) {
        None => Report::pass("stationarity of the critical point"),
        Some(i) => Report::fail("stationarity of the critical point", format!("partial along coordinate {i}"))
            .with_residual(&action.vars, &grad[i]),
    };
    Ok((v, report.with_degree(d)))
}

/// `A(v_cr)` computed directly, with a report comparing it to the sum over
/// unrooted trees.
pub fn generic_critical_value(action: &CubicAction, v_cr: &[Series], d: usize) -> Result<(Series, Report)> {
    let direct = action.value(v_cr, d);
    let trees = unrooted_tree_sum(action, d)?;
    let report =
        Report::from_residual("critical value equals the unrooted tree sum", &action.vars, &direct.sub(&trees), "A(v_cr) - tree sum");
    Ok((direct, report.with_degree(d)))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum RootedTree {
    Leaf,
    Chain(usize),
    Fork(usize, usize),
}

/// Sum over rooted trees whose vertices carry `K₁`, `K₂`, `K₃`, with `b₂` on
/// every edge including the root, weighted by `1/|Aut|`.
pub fn rooted_tree_sum(action: &CubicAction, d: usize) -> Vec<Series> {
    let m = action.dim();
    // Trees by index; `cost` counts K₁ and K₂ vertices, each of degree ≥ 1.
    let mut trees: Vec<(RootedTree, usize, u64, Vec<Series>)> = Vec::new();
    let mut total = vec![Series::zero(); m];
    for cost in 1..=d {
        let mut fresh = Vec::new();
        if cost == 1 {
            fresh.push((RootedTree::Leaf, 1u64, action.vertex_vector(&[], d)));
        }
        for (i, (_, c, aut, val)) in trees.iter().enumerate() {
            if c + 1 == cost {
                fresh.push((RootedTree::Chain(i), *aut, action.vertex_vector(&[val], d)));
            }
        }
        for (i, (_, ci, ai, vi)) in trees.iter().enumerate() {
            for (j, (_, cj, aj, vj)) in trees.iter().enumerate().skip(i) {
                if ci + cj == cost {
                    let aut = ai * aj * if i == j { 2 } else { 1 };
                    fresh.push((RootedTree::Fork(i, j), aut, action.vertex_vector(&[vi, vj], d)));
                }
            }
        }
        for (t, aut, val) in fresh {
            let w = Scalar::new(1.into(), aut.into());
            for (acc, x) in total.iter_mut().zip(&val) {
                acc.add_assign(&x.scale(&w));
            }
            trees.push((t, cost, aut, val));
        }
    }
    total
}

/// Sum over unrooted trees with vertices of valence 1, 2, 3 carrying `K₁`,
/// `K₂`, `K₃`, with `b₂` on every edge, weighted by `1/|Aut|`.
pub fn unrooted_tree_sum(action: &CubicAction, d: usize) -> Result<Series> {
    let mut total = Series::zero();
    let mut layer: BTreeSet<Graph> = BTreeSet::new();
    layer.insert(Graph::new(2, &[(0, 1)], &[]));
    // Every unrooted tree has n₁ = n₃ + 2, so n₁ + n₂ ≤ d bounds n by 2d − 2.
    let max_n = (2 * d).saturating_sub(2).max(2);
    for n in 2..=max_n {
        let mut keep = Vec::new();
        for g in &layer {
            let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
            let cheap = degrees.iter().filter(|&&k| k <= 2).count();
            if cheap > d {
                continue;
            }
            keep.push(g);
            let w = Scalar::new(1.into(), g.automorphism_order().into());
            total.add_assign(&tree_value(action, g, d).scale(&w));
        }
        let mut next = BTreeSet::new();
        for g in keep {
            for v in 0..n {
                if g.degree(v) < 3 {
                    let mut edges: Vec<(usize, usize)> = g.edges.iter().map(|e| (e.u, e.v)).collect();
                    edges.push((v, n));
                    next.insert(Graph::new(n + 1, &edges, &[]).canonical());
                }
            }
        }
        layer = next;
    }
    Ok(total)
}

fn tree_value(action: &CubicAction, g: &Graph, d: usize) -> Series {
    let n = g.n_vertices;
    let mut adj = vec![Vec::new(); n];
    for e in &g.edges {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    fn down(a: &CubicAction, adj: &[Vec<usize>], u: usize, parent: usize, d: usize) -> Vec<Series> {
        let kids: Vec<Vec<Series>> = adj[u].iter().filter(|&&w| w != parent).map(|&w| down(a, adj, w, u, d)).collect();
        let refs: Vec<&[Series]> = kids.iter().map(|k| k.as_slice()).collect();
        a.vertex_vector(&refs, d)
    }
    let kids: Vec<Vec<Series>> = adj[0].iter().map(|&w| down(action, &adj, w, 0, d)).collect();
    let refs: Vec<&[Series]> = kids.iter().map(|k| k.as_slice()).collect();
    action.vertex_scalar(&refs, d)
}

/// A random action on an `m`-dimensional space over `n_vars` even variables:
/// `K₁` and `K₂` of degree 1 and 2, constant `K₃`, small integer entries and
/// a nondegenerate symmetric `B₂`.
pub fn random_action(rng: &mut impl Rng, m: usize, n_vars: usize) -> Result<CubicAction> {
    let vars = Vars::even(n_vars);
    let small = |rng: &mut dyn RngCore| scalar::int(rng.gen_range(-2..=2));
    let poly = |rng: &mut dyn RngCore| {
        let mut s = Series::zero();
        for i in 0..n_vars {
            s.add_term(Mono::var(i), small(rng));
            for j in i..n_vars {
                let mut e = vec![0u8; n_vars];
                e[i] += 1;
                e[j] += 1;
                s.add_term(Mono::from_exps(&e), small(rng));
            }
        }
        s
    };
    let k1: Vec<Series> = (0..m).map(|_| poly(rng)).collect();
    let mut k2 = vec![vec![Series::zero(); m]; m];
    for i in 0..m {
        for j in i..m {
            let x = poly(rng);
            k2[i][j] = x.clone();
            k2[j][i] = x;
        }
    }
    let mut k3 = vec![vec![vec![Series::zero(); m]; m]; m];
    for i in 0..m {
        for j in i..m {
            for k in j..m {
                let x = Series::constant(small(rng));
                for [a, b, c] in [[i, j, k], [i, k, j], [j, i, k], [j, k, i], [k, i, j], [k, j, i]] {
                    k3[a][b][c] = x.clone();
                }
            }
        }
    }
    let b2_form = loop {
        let mut b = vec![vec![scalar::zero(); m]; m];
        for i in 0..m {
            for j in i..m {
                let x = small(rng);
                b[i][j] = x.clone();
                b[j][i] = x;
            }
        }
        if invert(&b).is_some() {
            break b;
        }
    };
    CubicAction::new(vars, k1, k2, k3, b2_form)
}

/// Fixed point against the rooted tree sum and critical value against the
/// unrooted tree sum on `count` random actions of dimension 2 to 4.
pub fn check_random_actions(seed: u64, count: usize, d: usize) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = Vec::new();
    for k in 0..count {
        let m = 2 + k % 3;
        let a = random_action(&mut rng, m, 2)?;
        let (v, stationary) = generic_critical_point(&a, d)?;
        let trees = rooted_tree_sum(&a, d);
        let (_, value) = generic_critical_value(&a, &v, d)?;
        let at = |r: Report| Report { witness: r.witness.map(|w| format!("action {k} (dim {m}): {w}")), ..r };
        parts.push(at(stationary));
        let diff: Vec<Series> = v.iter().zip(&trees).map(|(x, y)| x.sub(y)).collect();
        parts.push(at(Report::from_vector("", &a.vars, &SuperVector(diff), "fixed point - rooted tree sum")));
        parts.push(at(value));
    }
    Ok(combine("random cubic actions: critical point and value as tree sums", parts)
        .with_degree(d)
        .with_detail(format!("seed {seed}, {count} actions")))
}

/// The BCOV action `A(v) = ⅙∫(E + G₋v)³ − ½∫Qv·G₋v` on `V = ⊕⟨e_α⟩`.
#[derive(Clone, Debug)]
pub struct BcovData {
    /// Basis indices of the block generators `e_α`.
    pub basis: Vec<usize>,
    /// `B₂` in the coordinates `c_α` of `v = Σ e_α c_α`.
    pub b2_form: Vec<Vec<Scalar>>,
    pub b2_inv: Vec<Vec<Scalar>>,
}

impl BcovData {
    pub fn new(alg: &ChAlgebra) -> Result<BcovData> {
        let basis: Vec<usize> = alg.blocks.iter().map(|b| b[0]).collect();
        let m = basis.len();
        let mut ps: Vec<Parity> = basis.iter().map(|&i| coefficient_parity(alg, i)).collect();
        ps.push(Parity::Even);
        ps.push(Parity::Odd);
        let (ext, extra) = alg.with_extra_vars(&ps, "s")?;
        let (s, eps) = (&extra[..m], &extra[m..]);
        let n = alg.dim();
        let mut v = SuperVector::zero(n);
        for (a, &i) in basis.iter().enumerate() {
            v.0[i] = Series::var(s[a]);
        }
        let mut b2_form = vec![vec![scalar::zero(); m]; m];
        for (a, &i) in basis.iter().enumerate() {
            let e = eps[coefficient_parity(alg, i).bit() as usize];
            let w = v.add(&SuperVector::basis_times(n, i, Series::var(e)));
            let half = quadratic_part(&ext, &w, 2).scale(&scalar::frac(1, 2));
            for b in 0..m {
                b2_form[a][b] = half.multilinear_coefficient(&[s[b], e]).constant_term();
            }
        }
        let b2_inv = invert(&b2_form).ok_or_else(|| Error::InvalidAlgebra("B2 is degenerate on the block generators".into()))?;
        Ok(BcovData { basis, b2_form, b2_inv })
    }

    pub fn field(&self, alg: &ChAlgebra, c: &[Series]) -> SuperVector {
        let mut v = SuperVector::zero(alg.dim());
        for (&i, ci) in self.basis.iter().zip(c) {
            v.0[i] = ci.clone();
        }
        v
    }

    /// The bivector `b₂ = Σ e_α ⊗ e_β b^{αβ}`, `b^{αβ} = (B₂⁻¹)_{βα}`.
    pub fn b2_bivector(&self, n: usize) -> Bivector {
        let mut b = Bivector::zero(n);
        for (a, &i) in self.basis.iter().enumerate() {
            for (c, &j) in self.basis.iter().enumerate() {
                b.set(i, j, Series::constant(self.b2_inv[c][a].clone()));
            }
        }
        b
    }
}

fn coefficient_parity(alg: &ChAlgebra, i: usize) -> Parity {
    alg.parity(i).add(Parity::Odd)
}

/// `∫Qv·G₋v`.
fn quadratic_part(alg: &ChAlgebra, v: &SuperVector, d: usize) -> Series {
    let qv = alg.apply(&alg.q, v, d);
    let gv = alg.apply(&alg.gm, v, d);
    alg.integrate(&alg.mul(&qv, &gv, d))
}

/// `⅙∫(E + G₋v)³`.
fn cubic_part(alg: &ChAlgebra, v: &SuperVector, d: usize) -> Series {
    let x = alg.e_vector().add(&alg.apply(&alg.gm, v, d));
    alg.vertex(&[&x, &x, &x], d).scale(&scalar::frac(1, 6))
}

pub fn bcov_action(alg: &ChAlgebra, v: &SuperVector, d: usize) -> Series {
    cubic_part(alg, v, d).sub(&quadratic_part(alg, v, d).scale(&scalar::frac(1, 2)))
}

/// `K₁(v) = ½∫E²·G₋v`.
pub fn bcov_k1(alg: &ChAlgebra, v: &SuperVector, d: usize) -> Series {
    let e = alg.e_vector();
    let gv = alg.apply(&alg.gm, v, d);
    alg.vertex(&[&e, &e, &gv], d).scale(&scalar::frac(1, 2))
}

/// The `ε`-coefficients of `f(v + e_α ε)` for every block generator.
fn partials(
    alg: &ChAlgebra,
    data: &BcovData,
    v: &SuperVector,
    d: usize,
    f: fn(&ChAlgebra, &SuperVector, usize) -> Series,
) -> Result<Vec<Series>> {
    let (ext, eps) = alg.with_extra_vars(&[Parity::Even, Parity::Odd], "eps")?;
    let n = alg.dim();
    Ok(data
        .basis
        .iter()
        .map(|&i| {
            let e = eps[coefficient_parity(alg, i).bit() as usize];
            let w = v.add(&SuperVector::basis_times(n, i, Series::var(e)));
            f(&ext, &w, d + 1).multilinear_coefficient(&[e]).truncate(d)
        })
        .collect())
}

/// Critical point of the BCOV action on `⊕⟨e_α⟩` by the fixed-point
/// iteration `B₂ c = ∂(⅙∫(E + G₋v)³)`, with a stationarity report.
pub fn bcov_critical_point(alg: &ChAlgebra, data: &BcovData, d: usize) -> Result<(SuperVector, Report)> {
    let m = data.basis.len();
    let mut c = vec![Series::zero(); m];
    for _ in 0..=d + 1 {
        let src = partials(alg, data, &data.field(alg, &c), d, cubic_part)?;
        let next = raise_with(&data.b2_inv, &src);
        if next == c {
            break;
        }
        c = next;
    }
    let v = data.field(alg, &c);
    let grad = partials(alg, data, &v, d, bcov_action)?;
    let report = match grad.iter().position(|g| !g.is_zero()) {
        None => Report::pass("BCOV stationarity"),
        Some(a) => {
            Report::fail("BCOV stationarity", format!("partial along {}", alg.label(data.basis[a]))).with_residual(&alg.vars, &grad[a])
        }
    };
    Ok((v, report.with_degree(d)))
}

/// Critical point, critical value and the `b₂` relation checked against γ,
/// `F₀` and `[G₋G₊]`.
pub fn bcov_verify(alg: &ChAlgebra, d: usize) -> Result<Report> {
    let data = BcovData::new(alg)?;
    let vars = &*alg.vars;
    let (v, stationary) = bcov_critical_point(alg, &data, d)?;

    let gamma = alg.e_vector().add(&alg.apply(&alg.gm, &v, d));
    let gamma_report = Report::from_vector("E + G-(v_cr) = gamma", vars, &gamma.sub(&compute_gamma(alg, d)), "E + G-(v_cr) - gamma");

    let value = bcov_action(alg, &v, d);
    let f0 = compute_potential(alg, 0, d)?;
    let value_report = Report::from_residual("A(v_cr) = F0", vars, &value.sub(&f0), "A(v_cr) - F0");

    let n = alg.dim();
    let lifted = data.b2_bivector(n).apply_both(vars, &alg.gm, &alg.gm, 0);
    let target = operator_to_bivector(&alg.propagator(), alg.eta_inverse()?);
    let diff = lifted.add(&target.scale(&scalar::int(-1)));
    let bivector = match (0..n).flat_map(|k| (0..n).map(move |l| (k, l))).find(|&(k, l)| !diff.get(k, l).is_zero()) {
        None => Report::pass("(G- x G-) b2 = [G-G+]"),
        Some((k, l)) => Report::fail("(G- x G-) b2 = [G-G+]", format!("entry ({}, {})", alg.label(k), alg.label(l))),
    };

    let zero = SuperVector::zero(n);
    let at_zero = partials(alg, &data, &zero, d, cubic_part)?;
    let mut dict = Vec::new();
    for (a, &i) in data.basis.iter().enumerate() {
        let k1 = bcov_k1(alg, &SuperVector::basis(n, i), d);
        dict.push(Report::from_residual("", vars, &at_zero[a].sub(&k1), alg.label(i)));
    }
    let dictionary = combine("degree-1 vertex is 1/2 int E^2 G-(v)", dict);

    Ok(combine("BCOV critical point and value", vec![stationary, gamma_report, value_report, bivector, dictionary])
        .with_degree(d)
        .with_detail("b2 = sum e_a (x) e_b (B2^-1)_ba, B2(e_a c_a, e_b c_b) read as the c_a c_b coefficient of int Qv.G-v"))
}

//! Contraction of marked trivalent graphs over an algebra and the genus-0
//! and genus-1 potentials.
//!
//! Trees are contracted bottom-up from the lowest vertex: a subtree hands its
//! product up through the operator of the connecting edge, and the root
//! closes with `∫`. In genus 1 the cycle is cut at the J-marked edge and
//! closed with a supertrace: the cycle vertices contribute `L_x` (left
//! multiplication by the product of their other inputs), the cycle edges their
//! operators, and `str(A_J ∘ L_x ∘ ⋯ ∘ A ∘ L_x)` is taken starting from the
//! J-marked edge. Inputs at a vertex are multiplied in the order leaves first,
//! then edges by index.

use crate::algebra::ChAlgebra;
use crate::error::{Error, Result};
use crate::graphs::{enumerate_graphs, select_j_edge, select_j_edges_all, Graph, IsoClass};
use crate::homotopy::{compute_gamma, Homotopy};
use crate::linalg::{supertrace, SuperOperator, SuperVector};
use crate::report::{combine, Report};
use crate::scalar::{self, Scalar};
use crate::series::Series;

/// Operator carried by an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    /// `G₋G₊`, or `O_c` in general mode.
    Black,
    /// `Π₀`, or `O₀` in general mode.
    White,
    GMinus,
    Identity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marking {
    pub kind: EdgeKind,
    /// Whether the edge carries the parity operator `J` (closes a loop with a supertrace).
    pub j: bool,
}

impl Marking {
    pub fn black() -> Marking {
        Marking { kind: EdgeKind::Black, j: false }
    }
    pub fn j_black() -> Marking {
        Marking { kind: EdgeKind::Black, j: true }
    }
    pub fn white() -> Marking {
        Marking { kind: EdgeKind::White, j: false }
    }
    pub fn j_white() -> Marking {
        Marking { kind: EdgeKind::White, j: true }
    }
    pub fn gminus() -> Marking {
        Marking { kind: EdgeKind::GMinus, j: false }
    }
    pub fn j_gminus() -> Marking {
        Marking { kind: EdgeKind::GMinus, j: true }
    }
    pub fn identity() -> Marking {
        Marking { kind: EdgeKind::Identity, j: false }
    }
    pub fn j_identity() -> Marking {
        Marking { kind: EdgeKind::Identity, j: true }
    }

    /// Inverse of [`Marking::tag`].
    pub fn from_tag(tag: u8) -> Option<Marking> {
        let kind = match tag & 7 {
            1 => EdgeKind::Black,
            2 => EdgeKind::White,
            3 => EdgeKind::GMinus,
            4 => EdgeKind::Identity,
            _ => return None,
        };
        Some(Marking { kind, j: tag & 8 != 0 })
    }

    /// Small integer used as an edge tag when marked graphs are canonicalized.
    pub fn tag(self) -> u8 {
        let k = match self.kind {
            EdgeKind::Black => 1,
            EdgeKind::White => 2,
            EdgeKind::GMinus => 3,
            EdgeKind::Identity => 4,
        };
        if self.j {
            k + 8
        } else {
            k
        }
    }
}

/// The operators substituted for each edge kind.
#[derive(Clone, Debug)]
pub struct OperatorSet {
    pub black: SuperOperator,
    pub white: SuperOperator,
    pub gminus: SuperOperator,
    pub identity: SuperOperator,
}

impl OperatorSet {
    /// `G₋G₊` and `Π₀`.
    pub fn simplest(alg: &ChAlgebra) -> OperatorSet {
        OperatorSet {
            black: alg.propagator(),
            white: alg.pi0.clone(),
            gminus: alg.gm.clone(),
            identity: SuperOperator::identity(alg.dim()),
        }
    }

    /// `O_c` and `O₀`.
    pub fn general(alg: &ChAlgebra, h: &Homotopy) -> OperatorSet {
        OperatorSet { black: h.oc.clone(), white: h.o0.clone(), gminus: alg.gm.clone(), identity: SuperOperator::identity(alg.dim()) }
    }

    pub fn get(&self, kind: EdgeKind) -> &SuperOperator {
        match kind {
            EdgeKind::Black => &self.black,
            EdgeKind::White => &self.white,
            EdgeKind::GMinus => &self.gminus,
            EdgeKind::Identity => &self.identity,
        }
    }
}

struct Contraction<'a> {
    alg: &'a ChAlgebra,
    g: &'a Graph,
    markings: &'a [Marking],
    values: &'a [SuperVector],
    ops: &'a OperatorSet,
    d: usize,
    blocked: Vec<bool>,
}

impl Contraction<'_> {
    fn op(&self, e: usize) -> &SuperOperator {
        self.ops.get(self.markings[e].kind)
    }

    /// Inputs arriving at `v`, excluding the edge `from`, blocked edges and the leaf `skip_leaf`.
    fn inputs(&self, v: usize, from: Option<usize>, skip_leaf: Option<usize>) -> Vec<SuperVector> {
        let mut out = Vec::new();
        for (i, (w, _)) in self.g.leaves.iter().enumerate() {
            if *w == v && Some(i) != skip_leaf {
                out.push(self.values[i].clone());
            }
        }
        for (i, e) in self.g.edges.iter().enumerate() {
            if Some(i) == from || self.blocked[i] || (e.u != v && e.v != v) {
                continue;
            }
            let child = if e.u == v { e.v } else { e.u };
            let x = self.subtree(child, i);
            out.push(self.alg.apply(self.op(i), &x, self.d));
        }
        out
    }

    fn subtree(&self, v: usize, from: usize) -> SuperVector {
        let ins = self.inputs(v, Some(from), None);
        self.product(&ins)
    }

    fn product(&self, ins: &[SuperVector]) -> SuperVector {
        let refs: Vec<&SuperVector> = ins.iter().collect();
        self.alg.product(&refs, self.d)
    }
}

fn check_shapes(g: &Graph, markings: &[Marking], values: &[SuperVector], n: usize) -> Result<()> {
    if markings.len() != g.edges.len() {
        return Err(Error::Input(format!("{} markings for {} edges", markings.len(), g.edges.len())));
    }
    if values.len() != g.leaves.len() {
        return Err(Error::Input(format!("{} leaf values for {} leaves", values.len(), g.leaves.len())));
    }
    if values.iter().any(|v| v.dim() != n) {
        return Err(Error::Input("leaf value of wrong dimension".into()));
    }
    if !g.is_connected() {
        return Err(Error::Input("graph is not connected".into()));
    }
    Ok(())
}

/// Full contraction of a marked graph, without the automorphism weight.
pub fn contract(alg: &ChAlgebra, g: &Graph, markings: &[Marking], values: &[SuperVector], ops: &OperatorSet, d: usize) -> Result<Series> {
    check_shapes(g, markings, values, alg.dim())?;
    let mut c = Contraction { alg, g, markings, values, ops, d, blocked: vec![false; g.edges.len()] };
    match g.genus() {
        0 => {
            let ins = c.inputs(0, None, None);
            Ok(alg.integrate(&c.product(&ins)))
        }
        1 => {
            let cycle = g.cycle_edges();
            let js: Vec<usize> = (0..g.edges.len()).filter(|&i| markings[i].j).collect();
            if js.len() != 1 || !cycle.contains(&js[0]) {
                return Err(Error::Input("a genus-1 graph needs exactly one J-marked edge on its cycle".into()));
            }
            let jedge = js[0];
            for &i in &cycle {
                c.blocked[i] = true;
            }
            // Walk the cycle from the far end of the J edge back to its near end.
            let (a, b) = (g.edges[jedge].u, g.edges[jedge].v);
            let mut verts = vec![b];
            let mut walk = vec![];
            if a != b {
                let mut at = b;
                let mut came = jedge;
                while at != a {
                    let next = cycle
                        .iter()
                        .copied()
                        .find(|&i| i != came && i != jedge && (g.edges[i].u == at || g.edges[i].v == at))
                        .ok_or_else(|| Error::Input("broken cycle".into()))?;
                    let e = &g.edges[next];
                    at = if e.u == at { e.v } else { e.u };
                    walk.push(next);
                    verts.push(at);
                    came = next;
                }
            }
            let n = alg.dim();
            let mut chain = SuperOperator::identity(n);
            for (k, &v) in verts.iter().enumerate() {
                let ins = c.inputs(v, None, None);
                let x = c.product(&ins);
                let lx = alg.left_mul_op(&x, d);
                chain = lx.compose(&alg.vars, &chain, d);
                let e = if k < walk.len() { walk[k] } else { jedge };
                chain = c.op(e).compose(&alg.vars, &chain, d);
            }
            Ok(supertrace(&alg.space, &chain))
        }
        g => Err(Error::Unsupported(format!("graphs of genus {g} are not evaluated"))),
    }
}

/// `(1/|Aut|) ×` the contraction of an isomorphism class.
pub fn evaluate_graph(
    alg: &ChAlgebra,
    class: &IsoClass,
    markings: &[Marking],
    values: &[SuperVector],
    ops: &OperatorSet,
    d: usize,
) -> Result<Series> {
    let v = contract(alg, &class.graph, markings, values, ops, d)?;
    Ok(v.scale(&Scalar::new(1.into(), class.aut_order.into())))
}

/// Value of a tree cut open at one leaf: the product of the other inputs at
/// that leaf's vertex, each subtree passed through its edge operator.
pub fn evaluate_rooted(
    alg: &ChAlgebra,
    g: &Graph,
    markings: &[Marking],
    values: &[SuperVector],
    open_leaf: usize,
    ops: &OperatorSet,
    d: usize,
) -> Result<SuperVector> {
    check_shapes(g, markings, values, alg.dim())?;
    if g.genus() != 0 {
        return Err(Error::Input("rooted evaluation needs a tree".into()));
    }
    let c = Contraction { alg, g, markings, values, ops, d, blocked: vec![false; g.edges.len()] };
    let root = g.leaves[open_leaf].0;
    let ins = c.inputs(root, None, Some(open_leaf));
    Ok(c.product(&ins))
}

/// Potential-type markings: `G₋G₊` everywhere, J on the canonical cycle edge.
pub fn potential_markings(g: &Graph) -> Result<Vec<Marking>> {
    let mut m = vec![Marking::black(); g.edges.len()];
    if g.genus() == 1 {
        m[select_j_edge(g)?] = Marking::j_black();
    }
    Ok(m)
}

/// Genus-0 or genus-1 potential: the weighted sum over all classes with `E`
/// on every leaf, up to degree `d`.
pub fn compute_potential(alg: &ChAlgebra, genus: usize, d: usize) -> Result<Series> {
    if genus > 1 {
        return Err(Error::Input(format!("genus must be 0 or 1, got {genus}")));
    }
    let e = alg.e_vector();
    let ops = OperatorSet::simplest(alg);
    let mut total = Series::zero();
    let start = if genus == 0 { 3 } else { 1 };
    for m in start..=d {
        let labels = vec!["E"; m];
        for class in enumerate_graphs(&labels, genus, m + 2)? {
            let markings = potential_markings(&class.graph)?;
            let values = vec![e.clone(); m];
            total.add_assign(&evaluate_graph(alg, &class, &markings, &values, &ops, m)?);
        }
    }
    Ok(total)
}

/// `F₁ = ½ Σ_{i≥1} (1/i) str((G₋G₊ ∘ γ·)^i)` up to degree `d`.
pub fn f1_trace_form(alg: &ChAlgebra, d: usize) -> Series {
    let gamma = compute_gamma(alg, d);
    let v = &*alg.vars;
    let big_gamma = alg.propagator().compose(v, &alg.left_mul_op(&gamma, d), d);
    let mut power = SuperOperator::identity(alg.dim());
    let mut total = Series::zero();
    for i in 1..=d {
        power = power.compose(v, &big_gamma, d);
        if power.is_zero() {
            break;
        }
        let w = Scalar::new(1.into(), (2 * i as i64).into());
        total.add_assign(&supertrace(&alg.space, &power).scale(&w));
    }
    total
}

/// `(1/2) str(G₋G₊ ∘ a·)`, the closed form of the tadpole.
pub fn tadpole_closed_form(alg: &ChAlgebra, a: &SuperVector, d: usize) -> Series {
    let k = alg.propagator();
    let op = k.compose(&alg.vars, &alg.left_mul_op(a, d), d);
    supertrace(&alg.space, &op).scale(&scalar::frac(1, 2))
}

/// Every genus-1 class with `E` on its leaves takes the same value whichever
/// cycle edge carries `J`, up to degree `d`.
pub fn check_j_edge_independence(alg: &ChAlgebra, d: usize) -> Result<Report> {
    let e = alg.e_vector();
    let ops = OperatorSet::simplest(alg);
    let mut parts = Vec::new();
    for m in 1..=d {
        let labels = vec!["E"; m];
        for class in enumerate_graphs(&labels, 1, m + 2)? {
            let g = &class.graph;
            let values = vec![e.clone(); m];
            let mut first: Option<Series> = None;
            for j in select_j_edges_all(g)? {
                let mut markings = vec![Marking::black(); g.edges.len()];
                markings[j] = Marking::j_black();
                let v = contract(alg, g, &markings, &values, &ops, m)?;
                match &first {
                    None => first = Some(v),
                    Some(f) => parts.push(Report::from_residual(
                        "",
                        &alg.vars,
                        &v.sub(f),
                        &format!("{} leaves, edges {:?}, J on edge {j}", m, g.edges.iter().map(|e| (e.u, e.v)).collect::<Vec<_>>()),
                    )),
                }
            }
        }
    }
    Ok(combine("genus-1 values independent of the J edge", parts).with_degree(d))
}

/// The graph sum for `F₁` against its closed trace form.
pub fn check_f1_trace_form(alg: &ChAlgebra, d: usize) -> Result<Report> {
    let graphs = compute_potential(alg, 1, d)?;
    let trace = f1_trace_form(alg, d);
    Ok(Report::from_residual("F1 graph sum = trace form", &alg.vars, &graphs.sub(&trace), "F1 graphs - trace form").with_degree(d))
}

//! WDVV and Getzler relations, checked two ways: derivative forms built from
//! the potentials, and graph forms evaluated with marked four-leaf graphs.
//!
//! Four inputs `x_k = e_{i_k} u_k` are made even by auxiliary variables
//! `u_1..u_4` of matching parity; a graph with `e = x_1 + ⋯ + x_4` on every
//! leaf is then read off as the coefficient of `u_1u_2u_3u_4`, which is the sum
//! over all ways of distributing the four inputs among the leaves.

use std::cell::RefCell;
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{satisfies_one_twelfth, ChAlgebra};
use crate::error::{Error, Result};
use crate::evaluator::{compute_potential, contract, Marking, OperatorSet};
use crate::graphs::Graph;
use crate::homotopy::{compute_operators, Homotopy};
use crate::linalg::SuperVector;
use crate::report::{combine, Report};
use crate::scalar::{self, Scalar};
use crate::series::{self, Series, Vars};

pub const CYCLE_NAMES: [&str; 7] = ["Delta_22", "Delta_23", "Delta_24", "Delta_34", "Delta_03", "Delta_04", "Delta_b"];

/// Coefficients of `12Δ₂₂ − 4Δ₂₃ − 2Δ₂₄ + 6Δ₃₄ + Δ₀₃ + Δ₀₄ − 2Δ_b`.
pub const GETZLER_COEFFICIENTS: [i64; 7] = [12, -4, -2, 6, 1, 1, -2];

/// All `i ≤ j ≤ k ≤ l` below `n`.
pub fn quadruples(n: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                for l in k..n {
                    out.push([i, j, k, l]);
                }
            }
        }
    }
    out
}

fn input_label(alg: &ChAlgebra, idx: &[usize; 4]) -> String {
    let names: Vec<&str> = idx.iter().map(|&a| alg.label(alg.h0[a])).collect();
    format!("inputs ({})", names.join(", "))
}

// ---------------------------------------------------------------------------
// Marked graphs

/// A graph whose edges carry markings, with leaves labelled `a`..`d` or `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedGraph {
    pub graph: Graph,
    pub markings: Vec<Marking>,
}

impl MarkedGraph {
    pub fn new(n_vertices: usize, edges: &[(usize, usize, Marking)], leaves: &[(usize, &str)]) -> MarkedGraph {
        let tagged: Vec<(usize, usize, u8)> = edges.iter().map(|&(u, v, m)| (u, v, m.tag())).collect();
        let graph = Graph::tagged(n_vertices, &tagged, leaves);
        let markings = graph.edges.iter().map(|e| Marking::from_tag(e.tag).expect("valid tag")).collect();
        MarkedGraph { graph, markings }
    }

    /// Four `e` leaves at the listed vertices.
    fn with_e(n_vertices: usize, edges: &[(usize, usize, Marking)], leaf_vertices: &[usize]) -> MarkedGraph {
        let leaves: Vec<(usize, &str)> = leaf_vertices.iter().map(|&v| (v, "e")).collect();
        MarkedGraph::new(n_vertices, edges, &leaves)
    }

    /// Automorphisms preserving edge kinds; the J mark is ignored since it
    /// only says where a loop is cut.
    pub fn automorphism_order(&self) -> u64 {
        let mut g = self.graph.clone();
        for e in g.edges.iter_mut() {
            e.tag &= 7;
        }
        g.automorphism_order()
    }

    /// The same graph with the J mark moved to edge `i`.
    pub fn with_j_on(&self, i: usize) -> MarkedGraph {
        let mut out = self.clone();
        for (k, m) in out.markings.iter_mut().enumerate() {
            m.j = k == i;
        }
        out
    }
}

/// A weighted graph contributing to one of the seven codimension-2 cycles.
#[derive(Clone, Debug)]
pub struct CycleTemplate {
    /// Index into [`CYCLE_NAMES`].
    pub cycle: usize,
    pub weight: Scalar,
    pub graph: MarkedGraph,
}

/// The fourteen graphs of the seven cycles with their weights; `Π₀` on white
/// edges, `G₋G₊` on black ones, `e` on the leaves.
pub fn cycle_templates() -> Vec<CycleTemplate> {
    let b = Marking::black();
    let jb = Marking::j_black();
    let w = Marking::white();
    let jw = Marking::j_white();
    let t = |cycle: usize, p: i64, q: i64, graph: MarkedGraph| CycleTemplate { cycle, weight: scalar::frac(p, q), graph };
    vec![
        t(0, 1, 16, MarkedGraph::with_e(4, &[(0, 0, jb), (0, 1, b), (1, 2, w), (1, 3, w)], &[2, 2, 3, 3])),
        t(0, 1, 16, MarkedGraph::with_e(4, &[(0, 1, jb), (0, 1, b), (0, 2, w), (1, 3, w)], &[2, 2, 3, 3])),
        t(1, 1, 4, MarkedGraph::with_e(4, &[(0, 0, jb), (0, 1, b), (1, 2, w), (2, 3, w)], &[1, 2, 3, 3])),
        t(1, 1, 4, MarkedGraph::with_e(4, &[(0, 1, jb), (0, 1, b), (1, 2, w), (2, 3, w)], &[0, 2, 3, 3])),
        t(2, 1, 8, MarkedGraph::with_e(4, &[(0, 0, jb), (0, 1, w), (1, 2, w), (1, 3, b)], &[2, 2, 3, 3])),
        t(2, 1, 4, MarkedGraph::with_e(4, &[(0, 0, jb), (0, 1, w), (1, 2, b), (2, 3, w)], &[1, 2, 3, 3])),
        t(3, 1, 4, MarkedGraph::with_e(4, &[(0, 0, jb), (0, 1, w), (1, 2, w), (2, 3, b)], &[1, 2, 3, 3])),
        t(4, 1, 4, MarkedGraph::with_e(4, &[(0, 0, jw), (0, 1, b), (1, 2, w), (2, 3, b)], &[1, 2, 3, 3])),
        t(4, 1, 2, MarkedGraph::with_e(4, &[(0, 1, jw), (0, 1, b), (1, 2, w), (2, 3, b)], &[0, 2, 3, 3])),
        t(5, 1, 16, MarkedGraph::with_e(4, &[(0, 0, jw), (0, 1, w), (1, 2, b), (1, 3, b)], &[2, 2, 3, 3])),
        t(5, 1, 4, MarkedGraph::with_e(4, &[(0, 0, jw), (0, 1, w), (1, 2, b), (2, 3, b)], &[1, 2, 3, 3])),
        t(6, 1, 4, MarkedGraph::with_e(4, &[(0, 1, jw), (1, 2, b), (2, 0, w), (0, 3, b)], &[1, 2, 3, 3])),
        t(6, 1, 4, MarkedGraph::with_e(4, &[(0, 1, jw), (1, 2, b), (2, 3, w), (3, 0, b)], &[0, 1, 2, 3])),
        t(6, 1, 16, MarkedGraph::with_e(4, &[(0, 1, jw), (0, 1, w), (0, 2, b), (1, 3, b)], &[2, 2, 3, 3])),
    ]
}

/// The nine graphs `P₁..P₉` the cycles decompose into: black edges `G₋G₊`,
/// loops closed either by `G₋G₊` or by the identity.
pub fn p_graphs() -> Vec<MarkedGraph> {
    let b = Marking::black();
    let jb = Marking::j_black();
    let ji = Marking::j_identity();
    vec![
        MarkedGraph::with_e(2, &[(0, 0, jb), (0, 1, b)], &[1, 1, 1, 1]),
        MarkedGraph::with_e(2, &[(0, 0, jb), (0, 1, b)], &[0, 1, 1, 1]),
        MarkedGraph::with_e(2, &[(0, 0, jb), (0, 1, b)], &[0, 0, 1, 1]),
        MarkedGraph::with_e(2, &[(0, 1, jb), (0, 1, b)], &[0, 0, 1, 1]),
        MarkedGraph::with_e(2, &[(0, 1, jb), (0, 1, b)], &[0, 1, 1, 1]),
        MarkedGraph::with_e(3, &[(0, 0, ji), (0, 1, b), (1, 2, b)], &[1, 1, 2, 2]),
        MarkedGraph::with_e(3, &[(0, 0, ji), (0, 1, b), (1, 2, b)], &[1, 2, 2, 2]),
        MarkedGraph::with_e(4, &[(0, 0, ji), (0, 1, b), (1, 2, b), (2, 3, b)], &[1, 2, 3, 3]),
        MarkedGraph::with_e(4, &[(0, 0, ji), (0, 1, b), (1, 2, b), (1, 3, b)], &[2, 2, 3, 3]),
    ]
}

/// Rows `Δ₂₂..Δ_b`, columns `P₁..P₉`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTable {
    pub rows: Vec<Vec<Scalar>>,
}

impl DecompositionTable {
    pub fn standard() -> DecompositionTable {
        let r = |v: [(i64, i64); 9]| v.iter().map(|&(p, q)| scalar::frac(p, q)).collect::<Vec<_>>();
        let z = (0, 1);
        DecompositionTable {
            rows: vec![
                r([(1, 16), z, (-1, 8), (1, 16), z, z, z, z, (1, 192)]),
                r([(1, 4), (-1, 4), z, z, (1, 4), z, z, z, z]),
                r([(-1, 8), (1, 4), z, z, z, z, (-1, 48), z, z]),
                r([z, (-1, 12), (1, 4), z, z, (-1, 48), (1, 144), z, z]),
                r([z, z, z, z, z, (1, 4), (-1, 12), (-1, 4), z]),
                r([z, z, z, z, z, (-1, 8), z, (1, 4), (1, 16)]),
                r([z, z, z, (3, 8), (-1, 2), z, z, z, (1, 16)]),
            ],
        }
    }

    /// `Σ_r c_r · row_r` with the Getzler coefficients `c`.
    pub fn getzler_combination(&self) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); 9];
        for (row, &c) in self.rows.iter().zip(GETZLER_COEFFICIENTS.iter()) {
            for (o, x) in out.iter_mut().zip(row) {
                *o += x * scalar::int(c);
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Four-point evaluation

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `Π₀`, `G₋G₊` and bare inputs.
    Simplest,
    /// `O₀`, `O_c` and `O_l`-dressed inputs.
    General,
}

/// Four inputs from `H₀` and the operators substituted into graphs.
pub struct FourPoint {
    alg: ChAlgebra,
    u: Vec<usize>,
    x: Vec<SuperVector>,
    e: SuperVector,
    ops: OperatorSet,
    d: usize,
}

impl FourPoint {
    /// `idx` are positions in `H₀`; values are kept to degree `d` in `T`.
    /// `h` must be given for [`Mode::General`].
    pub fn new(alg: &ChAlgebra, idx: [usize; 4], d: usize, mode: Mode, h: Option<&Homotopy>) -> Result<FourPoint> {
        if let Some(&bad) = idx.iter().find(|&&a| a >= alg.h0.len()) {
            return Err(Error::Input(format!("input {bad} is not a zero mode (H0 has {} vectors)", alg.h0.len())));
        }
        let parities: Vec<_> = idx.iter().map(|&a| alg.parity(alg.h0[a])).collect();
        let (ext, u) = alg.with_extra_vars(&parities, "u")?;
        let n = alg.dim();
        let dt = d + 4;
        let ops = match (mode, h) {
            (Mode::Simplest, _) => OperatorSet::simplest(alg),
            (Mode::General, Some(h)) => OperatorSet::general(alg, h),
            (Mode::General, None) => return Err(Error::Input("general mode needs the dressed operators".into())),
        };
        let mut x = Vec::new();
        for (k, &a) in idx.iter().enumerate() {
            let bare = SuperVector::basis_times(n, alg.h0[a], Series::var(u[k]));
            x.push(match (mode, h) {
                (Mode::General, Some(h)) => ext.apply(&h.ol, &bare, dt),
                _ => bare,
            });
        }
        let e = x.iter().fold(SuperVector::zero(n), |acc, v| acc.add(v));
        Ok(FourPoint { alg: ext, u, x, e, ops, d: dt })
    }

    fn leaf(&self, label: &str) -> Result<SuperVector> {
        Ok(match label {
            "a" => self.x[0].clone(),
            "b" => self.x[1].clone(),
            "c" => self.x[2].clone(),
            "d" => self.x[3].clone(),
            "e" => self.e.clone(),
            other => return Err(Error::Input(format!("unknown leaf label {other}"))),
        })
    }

    /// Contraction of `g`, read off at `u₁u₂u₃u₄`.
    pub fn value(&self, g: &MarkedGraph) -> Result<Series> {
        let values = g.graph.leaves.iter().map(|(_, l)| self.leaf(l)).collect::<Result<Vec<_>>>()?;
        let s = contract(&self.alg, &g.graph, &g.markings, &values, &self.ops, self.d)?;
        Ok(s.multilinear_coefficient(&self.u))
    }
}

// ---------------------------------------------------------------------------
// WDVV

/// The channel graphs `(ab|cd)`, `(ac|bd)`, `(ad|bc)` with a white edge.
pub fn wdvv_channels() -> [MarkedGraph; 3] {
    let w = Marking::white();
    let ch = |p: &str, q: &str, r: &str, s: &str| MarkedGraph::new(2, &[(0, 1, w)], &[(0, p), (0, q), (1, r), (1, s)]);
    [ch("a", "b", "c", "d"), ch("a", "c", "b", "d"), ch("a", "d", "b", "c")]
}

/// The single four-valent vertex `∫abcd`.
pub fn wdvv_reduced() -> MarkedGraph {
    MarkedGraph::new(1, &[], &[(0, "a"), (0, "b"), (0, "c"), (0, "d")])
}

/// Three channel values of the four-point graph and its reduced form.
pub fn wdvv_graph_values(alg: &ChAlgebra, idx: [usize; 4], d: usize, mode: Mode, h: Option<&Homotopy>) -> Result<(Vec<Series>, Series)> {
    let fp = FourPoint::new(alg, idx, d, mode, h)?;
    let channels = wdvv_channels().iter().map(|g| fp.value(g)).collect::<Result<Vec<_>>>()?;
    Ok((channels, fp.value(&wdvv_reduced())?))
}

fn wdvv_graph_with(alg: &ChAlgebra, idx: [usize; 4], d: usize, h: &Homotopy) -> Result<Report> {
    let v = &*alg.vars;
    let label = input_label(alg, &idx);
    let (ch, reduced) = wdvv_graph_values(alg, idx, d, Mode::General, Some(h))?;
    let (ch0, reduced0) = wdvv_graph_values(alg, idx, 0, Mode::Simplest, None)?;
    let parts = vec![
        Report::from_residual("", v, &ch[0].sub(&ch[1]), &format!("{label}: (ab|cd) - (ac|bd)")),
        Report::from_residual("", v, &ch[0].sub(&ch[2]), &format!("{label}: (ab|cd) - (ad|bc)")),
        Report::from_residual("", v, &ch[0].sub(&reduced), &format!("{label}: (ab|cd) - reduced vertex")),
        Report::from_residual("", v, &ch0[0].sub(&ch0[1]), &format!("{label}: degree 0, (ab|cd) - (ac|bd)")),
        Report::from_residual("", v, &ch0[0].sub(&ch0[2]), &format!("{label}: degree 0, (ab|cd) - (ad|bc)")),
        Report::from_residual("", v, &ch0[0].sub(&reduced0), &format!("{label}: degree 0, (ab|cd) - abcd")),
        Report::from_residual("", v, &ch[0].part(0).sub(&ch0[0]), &format!("{label}: degree-0 part of O-graph vs Pi0 graph")),
    ];
    Ok(combine("WDVV, graph form", parts).with_degree(d))
}

/// WDVV for one quadruple of zero modes: the three `O₀`-channels agree with
/// each other and with `∫O_la·O_lb·O_lc·O_ld`, and the degree-0 slice is the
/// `Π₀` statement.
pub fn check_wdvv_graph(alg: &ChAlgebra, idx: [usize; 4], d: usize) -> Result<Report> {
    wdvv_graph_with(alg, idx, d, &compute_operators(alg, d))
}

/// [`check_wdvv_graph`] over every quadruple of zero modes.
pub fn check_wdvv_graph_all(alg: &ChAlgebra, d: usize) -> Result<Report> {
    let h = compute_operators(alg, d);
    let parts = quadruples(alg.h0.len()).into_iter().map(|idx| wdvv_graph_with(alg, idx, d, &h)).collect::<Result<Vec<_>>>()?;
    Ok(combine("WDVV, graph form", parts).with_degree(d))
}

/// `∂³F₀ η⁻¹ ∂³F₀` in the three channels for every quadruple of even zero modes.
pub fn check_wdvv_pde(alg: &ChAlgebra, d: usize) -> Result<Report> {
    require_even(alg, "WDVV")?;
    let pots = Potentials::compute(alg, d + 3, 0)?;
    let strata = boundary_points();
    let mut parts = Vec::new();
    for idx in quadruples(alg.h0.len()) {
        let vals = strata.iter().map(|s| stratum_to_pde(alg, s, &pots, &idx, d)).collect::<Result<Vec<_>>>()?;
        let label = input_label(alg, &idx);
        parts.push(Report::from_residual("", &alg.vars, &vals[0].sub(&vals[1]), &format!("{label}: (12|34) - (13|24)")));
        parts.push(Report::from_residual("", &alg.vars, &vals[0].sub(&vals[2]), &format!("{label}: (12|34) - (14|23)")));
    }
    Ok(combine("WDVV, derivative form", parts).with_degree(d))
}

fn require_even(alg: &ChAlgebra, what: &str) -> Result<()> {
    if alg.has_odd_zero_modes() {
        Err(Error::Unsupported(format!("the derivative form of {what} is stated for even zero modes only; use the graph form")))
    } else {
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Strata and their derivative forms

/// Stable dual graph of a boundary stratum: vertex genera, legs `1..n` per
/// vertex, and edges (a loop is an edge from a vertex to itself).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraphStratum {
    pub genera: Vec<usize>,
    pub legs: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl DualGraphStratum {
    pub fn new(genera: &[usize], legs: &[&[usize]], edges: &[(usize, usize)]) -> Result<DualGraphStratum> {
        let s = DualGraphStratum { genera: genera.to_vec(), legs: legs.iter().map(|l| l.to_vec()).collect(), edges: edges.to_vec() };
        if s.genera.len() != s.legs.len() || s.edges.iter().any(|&(u, v)| u >= s.genera.len() || v >= s.genera.len()) {
            return Err(Error::Input("stratum vertices, legs and edges do not match".into()));
        }
        if !s.is_stable() {
            return Err(Error::Input("unstable dual graph".into()));
        }
        Ok(s)
    }

    pub fn valence(&self, v: usize) -> usize {
        self.legs[v].len() + self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum::<usize>()
    }

    pub fn is_stable(&self) -> bool {
        (0..self.genera.len()).all(|v| 2 * self.genera[v] + self.valence(v) >= 3)
    }

    /// Total genus: vertex genera plus loops of the graph.
    pub fn genus(&self) -> usize {
        self.genera.iter().sum::<usize>() + self.edges.len() + 1 - self.genera.len()
    }

    pub fn n_legs(&self) -> usize {
        self.legs.iter().map(|l| l.len()).sum()
    }

    fn graph(&self) -> Graph {
        let names: Vec<String> = (0..=self.n_legs()).map(|i| i.to_string()).collect();
        let mut leaves: Vec<(usize, &str)> = Vec::new();
        for (v, ls) in self.legs.iter().enumerate() {
            leaves.extend(ls.iter().map(|&l| (v, names[l].as_str())));
            leaves.extend(std::iter::repeat_n((v, "g"), self.genera[v]));
        }
        Graph::new(self.genera.len(), &self.edges, &leaves)
    }

    pub fn automorphism_order(&self) -> u64 {
        self.graph().automorphism_order()
    }

    fn relabel(&self, perm: &[usize]) -> DualGraphStratum {
        DualGraphStratum { legs: self.legs.iter().map(|ls| ls.iter().map(|&l| perm[l - 1]).collect()).collect(), ..self.clone() }
    }

    /// The distinct strata obtained by permuting the legs.
    pub fn orbit(&self) -> Vec<DualGraphStratum> {
        let n = self.n_legs();
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for perm in permutations(&(1..=n).collect::<Vec<_>>()) {
            let s = self.relabel(&perm);
            if seen.insert(s.graph().canonical()) {
                out.push(s);
            }
        }
        out
    }
}

fn permutations(xs: &[usize]) -> Vec<Vec<usize>> {
    if xs.len() <= 1 {
        return vec![xs.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Representatives of `Δ₂₂, Δ₂₃, Δ₂₄, Δ₃₄, Δ₀₃, Δ₀₄, Δ_b` in `M̄₁,₄`.
pub fn getzler_strata() -> Vec<DualGraphStratum> {
    let s = |g: &[usize], l: &[&[usize]], e: &[(usize, usize)]| DualGraphStratum::new(g, l, e).expect("stable");
    vec![
        s(&[1, 0, 0], &[&[], &[1, 2], &[3, 4]], &[(0, 1), (0, 2)]),
        s(&[1, 0, 0], &[&[1], &[2], &[3, 4]], &[(0, 1), (1, 2)]),
        s(&[1, 0, 0], &[&[], &[1, 2], &[3, 4]], &[(0, 1), (1, 2)]),
        s(&[1, 0, 0], &[&[], &[1], &[2, 3, 4]], &[(0, 1), (1, 2)]),
        s(&[0, 0], &[&[1], &[2, 3, 4]], &[(0, 0), (0, 1)]),
        s(&[0, 0], &[&[], &[1, 2, 3, 4]], &[(0, 0), (0, 1)]),
        s(&[0, 0], &[&[1, 2], &[3, 4]], &[(0, 1), (0, 1)]),
    ]
}

/// The three boundary points `(12|34)`, `(13|24)`, `(14|23)` of `M̄₀,₄`.
pub fn boundary_points() -> Vec<DualGraphStratum> {
    let s = |a: usize, b: usize, c: usize, d: usize| DualGraphStratum::new(&[0, 0], &[&[a, b], &[c, d]], &[(0, 1)]).expect("stable");
    vec![s(1, 2, 3, 4), s(1, 3, 2, 4), s(1, 4, 2, 3)]
}

/// `F₀`, `F₁` and memoized partial derivatives (even variables only).
pub struct Potentials {
    vars: std::sync::Arc<Vars>,
    f: [Series; 2],
    cache: RefCell<BTreeMap<(usize, Vec<usize>), Series>>,
}

impl Potentials {
    /// `F₀` to degree `d0` and `F₁` to degree `d1` (skipped when `d1 = 0`).
    pub fn compute(alg: &ChAlgebra, d0: usize, d1: usize) -> Result<Potentials> {
        let f1 = if d1 > 0 { compute_potential(alg, 1, d1)? } else { Series::zero() };
        Ok(Potentials::from_series(alg, compute_potential(alg, 0, d0)?, f1))
    }

    pub fn from_series(alg: &ChAlgebra, f0: Series, f1: Series) -> Potentials {
        Potentials { vars: alg.vars.clone(), f: [f0, f1], cache: RefCell::new(BTreeMap::new()) }
    }

    pub fn derivative(&self, genus: usize, idx: &[usize]) -> Series {
        let mut key = idx.to_vec();
        key.sort();
        if let Some(s) = self.cache.borrow().get(&(genus, key.clone())) {
            return s.clone();
        }
        let s = match key.split_last() {
            None => self.f[genus].clone(),
            Some((&last, rest)) => self.derivative(genus, rest).derivative(&self.vars, last),
        };
        self.cache.borrow_mut().insert((genus, key), s.clone());
        s
    }
}

/// Derivative form of one stratum: every vertex contributes
/// `∂^{legs, half-edges} F_{genus}`, every edge `η^{μν}`, and the total is
/// divided by the automorphism order of the dual graph. `inputs[l − 1]` is
/// the zero mode on leg `l`.
pub fn stratum_to_pde(alg: &ChAlgebra, s: &DualGraphStratum, pots: &Potentials, inputs: &[usize], d: usize) -> Result<Series> {
    if inputs.len() != s.n_legs() {
        return Err(Error::Input(format!("{} inputs for {} legs", inputs.len(), s.n_legs())));
    }
    if s.genera.iter().any(|&g| g > 1) {
        return Err(Error::Unsupported("vertices of genus above 1".into()));
    }
    let eta = alg.eta0_inverse()?;
    let m = alg.h0.len();
    let mut pairs = Vec::new();
    for mu in 0..m {
        for nu in 0..m {
            if !eta[mu][nu].is_zero() {
                pairs.push((mu, nu, eta[mu][nu].clone()));
            }
        }
    }
    let vars = &*alg.vars;
    let mut total = Series::zero();
    if pairs.is_empty() && !s.edges.is_empty() {
        return Ok(total);
    }
    let mut choice = vec![0usize; s.edges.len()];
    loop {
        let mut idx: Vec<Vec<usize>> = s.legs.iter().map(|ls| ls.iter().map(|&l| inputs[l - 1]).collect()).collect();
        let mut w = scalar::one();
        for (e, &(u, v)) in s.edges.iter().enumerate() {
            let (mu, nu, c) = &pairs[choice[e]];
            idx[u].push(*mu);
            idx[v].push(*nu);
            w *= c;
        }
        let mut term = Series::constant(w);
        for (v, ix) in idx.iter().enumerate() {
            if term.is_zero() {
                break;
            }
            term = series::mul(vars, &term, &pots.derivative(s.genera[v], ix), d);
        }
        total.add_assign(&term);

        let mut k = 0;
        while k < choice.len() {
            choice[k] += 1;
            if choice[k] < pairs.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
    }
    Ok(total.scale(&Scalar::new(1.into(), s.automorphism_order().into())))
}

/// The seven cycles in derivative form, each summed over its orbit.
pub fn delta_cycles_pde(alg: &ChAlgebra, pots: &Potentials, idx: &[usize; 4], d: usize) -> Result<Vec<Series>> {
    getzler_strata()
        .iter()
        .map(|s| {
            let mut acc = Series::zero();
            for t in s.orbit() {
                acc.add_assign(&stratum_to_pde(alg, &t, pots, idx, d)?);
            }
            Ok(acc)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Getzler

fn delta_cycles_at(fp: &FourPoint) -> Result<Vec<Series>> {
    let mut out = vec![Series::zero(); 7];
    for t in cycle_templates() {
        out[t.cycle].add_assign(&fp.value(&t.graph)?.scale(&t.weight));
    }
    Ok(out)
}

/// The seven cycles from their weighted graphs.
pub fn evaluate_delta_cycles(alg: &ChAlgebra, idx: [usize; 4], d: usize, mode: Mode) -> Result<Vec<Series>> {
    let h = match mode {
        Mode::General => Some(compute_operators(alg, d)),
        Mode::Simplest => None,
    };
    let dd = if mode == Mode::Simplest { 0 } else { d };
    delta_cycles_at(&FourPoint::new(alg, idx, dd, mode, h.as_ref())?)
}

/// `P₁..P₉` evaluated on the same inputs.
pub fn evaluate_p_graphs(fp: &FourPoint) -> Result<Vec<Series>> {
    p_graphs().iter().map(|g| fp.value(g)).collect()
}

pub fn getzler_combination(deltas: &[Series]) -> Series {
    let mut acc = Series::zero();
    for (x, &c) in deltas.iter().zip(GETZLER_COEFFICIENTS.iter()) {
        acc.add_assign(&x.scale(&scalar::int(c)));
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Pde,
    Graph,
}

/// Residual of `12Δ₂₂ − 4Δ₂₃ − 2Δ₂₄ + 6Δ₃₄ + Δ₀₃ + Δ₀₄ − 2Δ_b` over every
/// quadruple of zero modes, up to degree `d`.
pub fn check_getzler(alg: &ChAlgebra, d: usize, route: Route) -> Result<Report> {
    let name = match route {
        Route::Pde => "Getzler relation, derivative form",
        Route::Graph => "Getzler relation, graph form",
    };
    let mut parts = Vec::new();
    let mut nonzero = false;
    let pots = match route {
        Route::Pde => {
            require_even(alg, "the Getzler relation")?;
            Some(Potentials::compute(alg, d + 5, d + 2)?)
        }
        Route::Graph => None,
    };
    let h = compute_operators(alg, d);
    for idx in quadruples(alg.h0.len()) {
        let deltas = match &pots {
            Some(pots) => delta_cycles_pde(alg, pots, &idx, d)?,
            None => delta_cycles_at(&FourPoint::new(alg, idx, d, Mode::General, Some(&h))?)?,
        };
        nonzero |= deltas.iter().any(|x| !x.is_zero());
        parts.push(Report::from_residual("", &alg.vars, &getzler_combination(&deltas), &input_label(alg, &idx)));
    }
    let twelfth = if satisfies_one_twelfth(alg) { "1/12 axiom holds" } else { "1/12 axiom fails" };
    let cycles = if nonzero { "some cycles are nonzero" } else { "every cycle vanishes identically" };
    Ok(combine(name, parts).with_degree(d).with_detail(format!("{twelfth}; {cycles}")))
}

/// Each cycle computed from derivatives of the potentials agrees with its
/// weighted graphs under `O₀`, `O_c`, `O_l`.
pub fn compare_delta_routes(alg: &ChAlgebra, d: usize) -> Result<Report> {
    require_even(alg, "the Getzler relation")?;
    let pots = Potentials::compute(alg, d + 5, d + 2)?;
    let h = compute_operators(alg, d);
    let mut parts = Vec::new();
    for idx in quadruples(alg.h0.len()) {
        let pde = delta_cycles_pde(alg, &pots, &idx, d)?;
        let graph = delta_cycles_at(&FourPoint::new(alg, idx, d, Mode::General, Some(&h))?)?;
        let label = input_label(alg, &idx);
        for k in 0..7 {
            parts.push(Report::from_residual("", &alg.vars, &pde[k].sub(&graph[k]), &format!("{label}: {}", CYCLE_NAMES[k])));
        }
    }
    Ok(combine("cycles: derivative form = graph form", parts).with_degree(d))
}

/// Checks `Δ_r = Σ_j table[r][j] P_j` on every quadruple up to degree `d`
/// and returns the table. Needs the 1/12 axiom.
pub fn decompose_in_p_basis(alg: &ChAlgebra, d: usize) -> Result<(DecompositionTable, Report)> {
    let table = DecompositionTable::standard();
    let name = "cycles in the P basis";
    if !satisfies_one_twelfth(alg) {
        return Ok((table, Report::skipped(name, "the 1/12 axiom fails on this algebra")));
    }
    let h = compute_operators(alg, d);
    let mut parts = Vec::new();
    for idx in quadruples(alg.h0.len()) {
        let fp = FourPoint::new(alg, idx, d, Mode::General, Some(&h))?;
        let deltas = delta_cycles_at(&fp)?;
        let ps = evaluate_p_graphs(&fp)?;
        let label = input_label(alg, &idx);
        for (r, row) in table.rows.iter().enumerate() {
            let mut rhs = Series::zero();
            for (c, p) in row.iter().zip(&ps) {
                rhs.add_assign(&p.scale(c));
            }
            parts.push(Report::from_residual("", &alg.vars, &deltas[r].sub(&rhs), &format!("{label}: {}", CYCLE_NAMES[r])));
        }
    }
    Ok((table, combine(name, parts).with_degree(d)))
}

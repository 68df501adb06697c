//! Trivalent graphs with labelled leaves: canonical forms, automorphism
//! orders, enumeration for genus 0 and 1, and loop-edge selection.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    /// Marking tag; 0 when unmarked. Automorphisms must preserve it.
    pub tag: u8,
}

/// Connected graph with internal vertices, edges (loops and parallel edges
/// allowed) and leaves attached to vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    pub n_vertices: usize,
    pub edges: Vec<Edge>,
    pub leaves: Vec<(usize, String)>,
}

/// Canonical graph with its automorphism order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClass {
    pub graph: Graph,
    pub aut_order: u64,
}

impl Graph {
    pub fn new(n_vertices: usize, edges: &[(usize, usize)], leaves: &[(usize, &str)]) -> Graph {
        Graph::tagged(n_vertices, &edges.iter().map(|&(u, v)| (u, v, 0)).collect::<Vec<_>>(), leaves)
    }

    pub fn tagged(n_vertices: usize, edges: &[(usize, usize, u8)], leaves: &[(usize, &str)]) -> Graph {
        let mut g = Graph {
            n_vertices,
            edges: edges.iter().map(|&(u, v, tag)| Edge { u: u.min(v), v: u.max(v), tag }).collect(),
            leaves: leaves.iter().map(|&(v, l)| (v, l.to_string())).collect(),
        };
        g.normalize();
        g
    }

    fn normalize(&mut self) {
        for e in self.edges.iter_mut() {
            if e.u > e.v {
                std::mem::swap(&mut e.u, &mut e.v);
            }
        }
        self.edges.sort();
        self.leaves.sort();
    }

    pub fn degree(&self, v: usize) -> usize {
        let mut d = self.leaves.iter().filter(|(w, _)| *w == v).count();
        for e in &self.edges {
            if e.u == v {
                d += 1;
            }
            if e.v == v {
                d += 1;
            }
        }
        d
    }

    pub fn is_connected(&self) -> bool {
        if self.n_vertices == 0 {
            return false;
        }
        let mut seen = vec![false; self.n_vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for e in &self.edges {
                for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                    if a == x && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// First Betti number `#edges − #vertices + 1` of a connected graph.
    pub fn genus(&self) -> usize {
        (self.edges.len() + 1).saturating_sub(self.n_vertices)
    }

    pub fn is_trivalent(&self) -> bool {
        (0..self.n_vertices).all(|v| self.degree(v) == 3)
    }

    /// Leaves grouped per vertex.
    pub fn leaves_at(&self, v: usize) -> Vec<usize> {
        (0..self.leaves.len()).filter(|&i| self.leaves[i].0 == v).collect()
    }

    fn relabel(&self, order: &[usize]) -> Graph {
        // order[new] = old
        let mut new_of = vec![0; self.n_vertices];
        for (new, &old) in order.iter().enumerate() {
            new_of[old] = new;
        }
        let mut g = Graph {
            n_vertices: self.n_vertices,
            edges: self.edges.iter().map(|e| Edge { u: new_of[e.u], v: new_of[e.v], tag: e.tag }).collect(),
            leaves: self.leaves.iter().map(|(v, l)| (new_of[*v], l.clone())).collect(),
        };
        g.normalize();
        g
    }

    /// Isomorphism invariant of a vertex: sorted leaf labels, loop tags,
    /// incident edge tags.
    fn vertex_invariant(&self, v: usize) -> (Vec<String>, Vec<u8>, Vec<u8>) {
        let mut leaves: Vec<String> = self.leaves.iter().filter(|(w, _)| *w == v).map(|(_, l)| l.clone()).collect();
        leaves.sort();
        let mut loops = Vec::new();
        let mut tags = Vec::new();
        for e in &self.edges {
            if e.u == v && e.v == v {
                loops.push(e.tag);
            } else if e.u == v || e.v == v {
                tags.push(e.tag);
            }
        }
        loops.sort();
        tags.sort();
        (leaves, loops, tags)
    }

    fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut n: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|e| {
                if e.u == v && e.v != v {
                    Some(e.v)
                } else if e.v == v && e.u != v {
                    Some(e.u)
                } else {
                    None
                }
            })
            .collect();
        n.sort();
        n.dedup();
        n
    }

    /// All breadth-first orderings, branching over ties of the vertex invariant.
    fn bfs_orderings(&self) -> Vec<Vec<usize>> {
        let inv: Vec<_> = (0..self.n_vertices).map(|v| self.vertex_invariant(v)).collect();
        let best = inv.iter().min().cloned();
        let mut out = Vec::new();
        for s in 0..self.n_vertices {
            if Some(&inv[s]) != best.as_ref() {
                continue;
            }
            let mut visited = vec![false; self.n_vertices];
            visited[s] = true;
            self.extend_bfs(vec![s], 0, &mut visited, &inv, &mut out);
        }
        out
    }

    fn extend_bfs(
        &self,
        order: Vec<usize>,
        head: usize,
        visited: &mut [bool],
        inv: &[(Vec<String>, Vec<u8>, Vec<u8>)],
        out: &mut Vec<Vec<usize>>,
    ) {
        if head == order.len() {
            if order.len() == self.n_vertices {
                out.push(order);
            }
            return;
        }
        let v = order[head];
        let fresh: Vec<usize> = self.neighbours(v).into_iter().filter(|&w| !visited[w]).collect();
        let mut groups: BTreeMap<_, Vec<usize>> = BTreeMap::new();
        for w in fresh {
            groups.entry(inv[w].clone()).or_default().push(w);
        }
        let groups: Vec<Vec<usize>> = groups.into_values().collect();
        let mut arrangements: Vec<Vec<usize>> = vec![vec![]];
        for grp in &groups {
            let perms = permutations(grp);
            let mut next = Vec::new();
            for a in &arrangements {
                for p in &perms {
                    let mut x = a.clone();
                    x.extend(p);
                    next.push(x);
                }
            }
            arrangements = next;
        }
        for arr in arrangements {
            for &w in &arr {
                visited[w] = true;
            }
            let mut o = order.clone();
            o.extend(&arr);
            self.extend_bfs(o, head + 1, visited, inv, out);
            for &w in &arr {
                visited[w] = false;
            }
        }
    }

    fn code(&self) -> Graph {
        self.clone()
    }

    /// Canonical representative and the number of vertex automorphisms.
    fn canonical_with_count(&self) -> (Graph, u64) {
        let mut best: Option<Graph> = None;
        let mut count = 0u64;
        for order in self.bfs_orderings() {
            let g = self.relabel(&order).code();
            match &best {
                None => {
                    best = Some(g);
                    count = 1;
                }
                Some(b) => match g.cmp(b) {
                    std::cmp::Ordering::Less => {
                        best = Some(g);
                        count = 1;
                    }
                    std::cmp::Ordering::Equal => count += 1,
                    _ => {}
                },
            }
        }
        (best.unwrap_or_else(|| self.clone()), count)
    }

    pub fn canonical(&self) -> Graph {
        self.canonical_with_count().0
    }

    /// Order of the label- and marking-preserving automorphism group,
    /// counting swaps of parallel edges, loop reversals and permutations of
    /// equally labelled leaves at one vertex.
    pub fn automorphism_order(&self) -> u64 {
        let (g, vertex_auts) = self.canonical_with_count();
        let mut order = vertex_auts;
        let mut runs: BTreeMap<&Edge, u64> = BTreeMap::new();
        for e in &g.edges {
            *runs.entry(e).or_default() += 1;
            if e.u == e.v {
                order *= 2;
            }
        }
        for &m in runs.values() {
            order *= factorial(m);
        }
        let mut leaf_runs: BTreeMap<&(usize, String), u64> = BTreeMap::new();
        for l in &g.leaves {
            *leaf_runs.entry(l).or_default() += 1;
        }
        for &m in leaf_runs.values() {
            order *= factorial(m);
        }
        order
    }

    /// Edges lying on a cycle (the valid single cut edges of a genus-1 graph).
    pub fn cycle_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| {
                let mut g = self.clone();
                g.edges.remove(i);
                g.is_connected()
            })
            .collect()
    }
}

fn factorial(m: u64) -> u64 {
    (1..=m).product()
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

pub fn automorphism_order(g: &Graph) -> u64 {
    g.automorphism_order()
}

/// The canonical loop edge of a genus-1 graph: the first edge on its cycle.
pub fn select_j_edge(g: &Graph) -> Result<usize> {
    select_j_edges_all(g)?.first().copied().ok_or_else(|| Error::Input("graph has no cycle".into()))
}

/// Every valid loop-edge choice of a genus-1 graph.
pub fn select_j_edges_all(g: &Graph) -> Result<Vec<usize>> {
    if g.genus() != 1 {
        return Err(Error::Input(format!("loop-edge selection needs genus 1, got genus {}", g.genus())));
    }
    Ok(g.cycle_edges())
}

/// Graphs obtained by attaching a new leaf to every edge and leaf edge.
fn insert_leaf(g: &Graph, label: &str) -> Vec<Graph> {
    let w = g.n_vertices;
    let mut out = Vec::new();
    for i in 0..g.edges.len() {
        let mut h = g.clone();
        let e = h.edges.remove(i);
        h.n_vertices += 1;
        h.edges.push(Edge { u: e.u, v: w, tag: e.tag });
        h.edges.push(Edge { u: e.v, v: w, tag: e.tag });
        h.leaves.push((w, label.to_string()));
        h.normalize();
        out.push(h);
    }
    for i in 0..g.leaves.len() {
        let mut h = g.clone();
        let (v, l) = h.leaves.remove(i);
        h.n_vertices += 1;
        h.edges.push(Edge { u: v, v: w, tag: 0 });
        h.leaves.push((w, l));
        h.leaves.push((w, label.to_string()));
        h.normalize();
        out.push(h);
    }
    out
}

/// All isomorphism classes of connected trivalent graphs of the given genus
/// with leaves carrying `labels` (a multiset), sorted canonically.
pub fn enumerate_graphs(labels: &[&str], genus: usize, max_vertices: usize) -> Result<Vec<IsoClass>> {
    if genus > 1 {
        return Err(Error::Input(format!("genus must be 0 or 1, got {genus}")));
    }
    let n = labels.len();
    if genus == 0 && n < 3 || genus == 1 && n < 1 {
        return Ok(Vec::new());
    }
    let vertices = n + 2 * genus - 2;
    if vertices > max_vertices {
        return Err(Error::Input(format!("{n} leaves in genus {genus} need {vertices} vertices, above the limit {max_vertices}")));
    }
    let (mut current, used) = if genus == 0 {
        (vec![Graph::new(1, &[], &[(0, labels[0]), (0, labels[1]), (0, labels[2])]).canonical()], 3)
    } else {
        (vec![Graph::new(1, &[(0, 0)], &[(0, labels[0])]).canonical()], 1)
    };
    for label in &labels[used..] {
        let mut next: Vec<Graph> = current.iter().flat_map(|g| insert_leaf(g, label)).map(|g| g.canonical()).collect();
        next.sort();
        next.dedup();
        current = next;
    }
    Ok(current
        .into_iter()
        .map(|g| {
            let aut_order = g.automorphism_order();
            IsoClass { graph: g, aut_order }
        })
        .collect())
}

/// JSON view used by the command line.
#[derive(Serialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    pub leaves: Vec<(usize, String)>,
    pub aut_order: u64,
}

impl From<&IsoClass> for GraphJson {
    fn from(c: &IsoClass) -> GraphJson {
        GraphJson {
            vertices: c.graph.n_vertices,
            edges: c.graph.edges.iter().map(|e| [e.u, e.v]).collect(),
            leaves: c.graph.leaves.clone(),
            aut_order: c.aut_order,
        }
    }
}

//! Loop-free undirected multigraphs, smallest-last degeneracy orderings and
//! the bounded out-degree orientations they induce.
//!
//! Degrees are always counted with multiplicity: two parallel edges between
//! `u` and `v` contribute 2 to the degree of each endpoint.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::{EdgeId, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    pub fn other(&self, x: Vertex) -> Option<Vertex> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }

    /// Endpoints as `(min, max)`.
    pub fn key(&self) -> (Vertex, Vertex) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// An undirected multigraph on vertices `0..n`. Edge ids are the dense
/// indices `0..m` into [`MultiGraph::edges`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    incidence: Vec<Vec<EdgeId>>,
}

impl MultiGraph {
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        let mut incidence = vec![Vec::new(); vertex_count];
        for (id, (u, v)) in edges.into_iter().enumerate() {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: x,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::LoopEdge {
                    edge: id,
                    vertex: u,
                });
            }
            incidence[u].push(id);
            incidence[v].push(id);
            list.push(Edge { u, v });
        }
        Ok(Self {
            vertex_count,
            edges: list,
            incidence,
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            edges: Vec::new(),
            incidence: vec![Vec::new(); vertex_count],
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("complete graph is loop-free")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Self::new(10, outer.chain(spokes).chain(inner)).expect("petersen graph is loop-free")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Result<Edge> {
        self.edges.get(id).copied().ok_or(Error::EdgeOutOfRange {
            edge: id,
            edge_count: self.edges.len(),
        })
    }

    /// Edge ids incident to `v`, in insertion order.
    pub fn incident(&self, v: Vertex) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.incidence[v].len()
    }

    /// Maximum degree, counting parallel edges.
    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Largest number of parallel edges joining one vertex pair, 0 when edgeless.
    pub fn multiplicity(&self) -> usize {
        let mut counts: HashMap<(Vertex, Vertex), usize> = HashMap::new();
        for e in &self.edges {
            *counts.entry(e.key()).or_default() += 1;
        }
        counts.into_values().max().unwrap_or(0)
    }

    /// The underlying simple graph: one edge per adjacent pair, kept in order
    /// of first appearance.
    pub fn simple(&self) -> MultiGraph {
        let mut seen = BTreeSet::new();
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|e| seen.insert(e.key()))
            .map(|e| (e.u, e.v))
            .collect();
        MultiGraph::new(self.vertex_count, edges).expect("subgraph of a valid graph")
    }

    pub fn is_simple(&self) -> bool {
        self.multiplicity() <= 1
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` in the given order.
    pub fn induced(&self, keep: &[Vertex]) -> MultiGraph {
        let mut index = vec![usize::MAX; self.vertex_count];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|e| index[e.u] != usize::MAX && index[e.v] != usize::MAX)
            .map(|e| (index[e.u], index[e.v]))
            .collect();
        MultiGraph::new(keep.len(), edges).expect("subgraph of a valid graph")
    }

    pub fn without_edge(&self, id: EdgeId) -> MultiGraph {
        let edges: Vec<_> = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != id)
            .map(|(_, e)| (e.u, e.v))
            .collect();
        MultiGraph::new(self.vertex_count, edges).expect("subgraph of a valid graph")
    }
}

/// A vertex ordering `v_1..v_n` in which every vertex has at most `d` edges
/// (with multiplicity) to vertices placed before it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrder {
    pub order: Vec<Vertex>,
    pub d: usize,
}

impl DegeneracyOrder {
    /// Position of every vertex in `order`. Fails unless `order` is a
    /// permutation of `0..n`.
    pub fn positions(&self, n: usize) -> Result<Vec<usize>> {
        if self.order.len() != n {
            return Err(Error::InvalidOrdering(format!(
                "ordering has {} entries, graph has {n} vertices",
                self.order.len()
            )));
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in self.order.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidOrdering(format!("vertex {v} out of range")));
            }
            if pos[v] != usize::MAX {
                return Err(Error::InvalidOrdering(format!("vertex {v} listed twice")));
            }
            pos[v] = i;
        }
        Ok(pos)
    }
}

/// Smallest-last ordering: repeatedly remove a vertex of minimum remaining
/// degree (smallest id on ties); the ordering lists removed vertices in
/// reverse removal order and `d` is the largest degree seen at removal.
pub fn degeneracy_order(g: &MultiGraph) -> DegeneracyOrder {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, Vertex)> = (0..n).map(|v| (degree[v], v)).collect();
    let mut removed = vec![false; n];
    let mut removal = Vec::with_capacity(n);
    let mut d = 0;

    while let Some((deg, v)) = queue.pop_first() {
        d = d.max(deg);
        removed[v] = true;
        removal.push(v);
        for &e in g.incident(v) {
            let w = g.edges[e].other(v).expect("incident edge");
            if !removed[w] {
                queue.remove(&(degree[w], w));
                degree[w] -= 1;
                queue.insert((degree[w], w));
            }
        }
    }

    removal.reverse();
    DegeneracyOrder { order: removal, d }
}

/// Direction of every edge as `(tail, head)`, plus per-vertex arc lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    arcs: Vec<(Vertex, Vertex)>,
    out_arcs: Vec<Vec<EdgeId>>,
    in_arcs: Vec<Vec<EdgeId>>,
}

impl Orientation {
    /// Builds an orientation from explicit `(tail, head)` pairs, one per edge
    /// id; each pair must match the edge's endpoints.
    pub fn from_arcs(g: &MultiGraph, arcs: Vec<(Vertex, Vertex)>) -> Result<Self> {
        if arcs.len() != g.edge_count() {
            return Err(Error::InvalidOrientation(format!(
                "{} arcs for {} edges",
                arcs.len(),
                g.edge_count()
            )));
        }
        let n = g.vertex_count();
        let mut out_arcs = vec![Vec::new(); n];
        let mut in_arcs = vec![Vec::new(); n];
        for (id, (&(t, h), e)) in arcs.iter().zip(g.edges()).enumerate() {
            if (t, h) != (e.u, e.v) && (t, h) != (e.v, e.u) {
                return Err(Error::InvalidOrientation(format!(
                    "arc {id} is ({t}, {h}) but edge joins {} and {}",
                    e.u, e.v
                )));
            }
            out_arcs[t].push(id);
            in_arcs[h].push(id);
        }
        Ok(Self {
            arcs,
            out_arcs,
            in_arcs,
        })
    }

    /// Every edge directed from `u` to `v` as stored in the graph.
    pub fn as_written(g: &MultiGraph) -> Self {
        Self::from_arcs(g, g.edges().iter().map(|e| (e.u, e.v)).collect())
            .expect("edges match themselves")
    }

    pub fn arc(&self, id: EdgeId) -> (Vertex, Vertex) {
        self.arcs[id]
    }

    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    pub fn out_arcs(&self, v: Vertex) -> &[EdgeId] {
        &self.out_arcs[v]
    }

    pub fn in_arcs(&self, v: Vertex) -> &[EdgeId] {
        &self.in_arcs[v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_arcs[v].len()
    }

    pub fn max_out_degree(&self) -> usize {
        self.out_arcs.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Distinct out-neighbors of `v`, ascending.
    pub fn out_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut heads: Vec<_> = self.out_arcs[v].iter().map(|&e| self.arcs[e].1).collect();
        heads.sort_unstable();
        heads.dedup();
        heads
    }

    /// Sinks-first topological order: every vertex appears after all of its
    /// out-neighbors. Ties go to the smallest id. `None` if a directed cycle exists.
    pub fn sinks_first_order(&self) -> Option<Vec<Vertex>> {
        let n = self.out_arcs.len();
        let mut pending: Vec<usize> = self.out_arcs.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<Vertex> = (0..n).filter(|&v| pending[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &e in &self.in_arcs[v] {
                let t = self.arcs[e].0;
                pending[t] -= 1;
                if pending[t] == 0 {
                    ready.insert(t);
                }
            }
        }
        (order.len() == n).then_some(order)
    }
}

/// Directs each edge `v_i v_j` with `i < j` (positions in `ord`) as `(v_j, v_i)`.
pub fn orient(g: &MultiGraph, ord: &DegeneracyOrder) -> Result<Orientation> {
    let pos = ord.positions(g.vertex_count())?;
    let arcs = g
        .edges()
        .iter()
        .map(|e| {
            if pos[e.u] < pos[e.v] {
                (e.v, e.u)
            } else {
                (e.u, e.v)
            }
        })
        .collect();
    Orientation::from_arcs(g, arcs)
}

pub fn max_degree(g: &MultiGraph) -> usize {
    g.max_degree()
}

pub fn multiplicity(g: &MultiGraph) -> usize {
    g.multiplicity()
}

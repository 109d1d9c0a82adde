//! Encodings of classical coloring problems as single-conflict instances.

use std::collections::HashSet;

use crate::conflict::{ColorSet, Coloring, ConflictInstance};
use crate::error::{Error, Result};
use crate::multigraph::{MultiGraph, Orientation};
use crate::{Color, Vertex};

/// A multigraph whose edges carry a (not necessarily proper) coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoredGraph {
    pub graph: MultiGraph,
    pub colors: ColorSet,
    pub edge_color: Vec<Color>,
}

impl EdgeColoredGraph {
    pub fn new(graph: MultiGraph, colors: ColorSet, edge_color: Vec<Color>) -> Result<Self> {
        if edge_color.len() != graph.edge_count() {
            return Err(Error::Domain(format!(
                "{} edge colors for {} edges",
                edge_color.len(),
                graph.edge_count()
            )));
        }
        for &c in &edge_color {
            colors.check(c)?;
        }
        Ok(Self {
            graph,
            colors,
            edge_color,
        })
    }
}

/// Graphs `G_1..G_k` on the shared vertex set `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFamily {
    vertex_count: usize,
    members: Vec<MultiGraph>,
}

impl GraphFamily {
    pub fn new(vertex_count: usize, members: Vec<MultiGraph>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Domain(
                "a graph family needs at least one member".into(),
            ));
        }
        if let Some(i) = members
            .iter()
            .position(|g| g.vertex_count() != vertex_count)
        {
            return Err(Error::Domain(format!(
                "member {i} has {} vertices, family has {vertex_count}",
                members[i].vertex_count()
            )));
        }
        Ok(Self {
            vertex_count,
            members,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn members(&self) -> &[MultiGraph] {
        &self.members
    }
}

/// `G^(k)`: every edge of the underlying simple graph becomes `k` parallel
/// arcs with the monochromatic conflicts `(0,0)..(k-1,k-1)`. Solvable exactly
/// when `g` is properly `k`-colorable.
pub fn proper_to_scc(g: &MultiGraph, k: usize) -> Result<ConflictInstance> {
    if k == 0 {
        return Err(Error::Domain(
            "proper coloring reduction needs k >= 1".into(),
        ));
    }
    let simple = g.simple();
    let arcs = simple
        .edges()
        .iter()
        .flat_map(|e| (0..k).map(move |c| (e.u, e.v, c, c)));
    ConflictInstance::from_arcs(g.vertex_count(), k, arcs)
}

/// Each edge `e` forbids `(ψ(e), ψ(e))`; solutions are the adapted colorings.
pub fn adapted_to_scc(ecg: &EdgeColoredGraph) -> ConflictInstance {
    let conflicts = ecg.edge_color.iter().map(|&c| (c, c)).collect();
    ConflictInstance::new(
        ecg.graph.clone(),
        Orientation::as_written(&ecg.graph),
        ecg.colors,
        conflicts,
    )
    .expect("edge colors validated on construction")
}

/// DP-coloring: `matchings[e]` lists the conflict pairs on simple edge `e`
/// (ordered as `(color at e.u, color at e.v)`), which must form a matching in
/// `C x C`. One parallel arc is emitted per pair.
pub fn dp_to_scc(
    g: &MultiGraph,
    k: usize,
    matchings: &[Vec<(Color, Color)>],
) -> Result<ConflictInstance> {
    if matchings.len() != g.edge_count() {
        return Err(Error::Domain(format!(
            "{} matchings for {} edges",
            matchings.len(),
            g.edge_count()
        )));
    }
    let mut pairs_seen = HashSet::new();
    for (id, e) in g.edges().iter().enumerate() {
        if !pairs_seen.insert(e.key()) {
            return Err(Error::Domain(format!(
                "edge {id} parallels an earlier edge; DP instances are given on simple graphs"
            )));
        }
    }
    let colors = ColorSet::new(k);
    let mut arcs = Vec::new();
    for (id, (e, pairs)) in g.edges().iter().zip(matchings).enumerate() {
        let mut firsts = HashSet::new();
        let mut seconds = HashSet::new();
        for &(a, b) in pairs {
            colors.check(a)?;
            colors.check(b)?;
            if !firsts.insert(a) {
                return Err(Error::NotAMatching {
                    edge: id,
                    reason: format!("color {a} repeated at vertex {}", e.u),
                });
            }
            if !seconds.insert(b) {
                return Err(Error::NotAMatching {
                    edge: id,
                    reason: format!("color {b} repeated at vertex {}", e.v),
                });
            }
            arcs.push((e.u, e.v, a, b));
        }
    }
    ConflictInstance::from_arcs(g.vertex_count(), k, arcs)
}

/// Union of the family where every edge of member `i` is colored `i`.
pub fn coop_to_adapted(fam: &GraphFamily) -> EdgeColoredGraph {
    let mut edges = Vec::new();
    let mut edge_color = Vec::new();
    for (i, member) in fam.members().iter().enumerate() {
        for e in member.edges() {
            edges.push((e.u, e.v));
            edge_color.push(i);
        }
    }
    let graph = MultiGraph::new(fam.vertex_count(), edges).expect("members are loop-free");
    EdgeColoredGraph::new(graph, ColorSet::new(fam.members().len()), edge_color)
        .expect("member indices are in range")
}

/// Reads a cooperative coloring `R_1..R_k` off a valid adapted coloring of
/// [`coop_to_adapted`]`(fam)`: `R_i` is the set of vertices colored `i`.
pub fn extract_cooperative(fam: &GraphFamily, col: &Coloring) -> Result<Vec<Vec<Vertex>>> {
    let inst = adapted_to_scc(&coop_to_adapted(fam));
    let violated = inst.verify(col)?;
    if let Some(&e) = violated.first() {
        return Err(Error::Domain(format!(
            "coloring is not adapted: {} arcs violated, first is {e}",
            violated.len()
        )));
    }
    let mut sets = vec![Vec::new(); fam.members().len()];
    for (v, &c) in col.as_slice().iter().enumerate() {
        sets[c].push(v);
    }
    Ok(sets)
}

/// Whether `sets` is a cooperative coloring of `fam`: each `R_i` independent
/// in member `i`, and together they cover the vertex set.
pub fn is_cooperative_coloring(fam: &GraphFamily, sets: &[Vec<Vertex>]) -> bool {
    if sets.len() != fam.members().len() {
        return false;
    }
    let mut covered = vec![false; fam.vertex_count()];
    for (member, set) in fam.members().iter().zip(sets) {
        let mut inside = vec![false; fam.vertex_count()];
        for &v in set {
            if v >= fam.vertex_count() {
                return false;
            }
            inside[v] = true;
            covered[v] = true;
        }
        if member.edges().iter().any(|e| inside[e.u] && inside[e.v]) {
            return false;
        }
    }
    covered.into_iter().all(|c| c)
}

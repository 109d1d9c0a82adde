//! Conflict functions on oriented multigraphs.
//!
//! Each arc `(tail, head)` carries one forbidden ordered pair
//! `(c_tail, c_head)`. Reading the same edge in the other direction reverses
//! the pair, so flipping an arc never changes which colorings are valid.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::multigraph::{degeneracy_order, orient, MultiGraph, Orientation};
use crate::{Color, EdgeId, Vertex};

/// The colors `0..k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColorSet(usize);

impl ColorSet {
    pub fn new(k: usize) -> Self {
        Self(k)
    }

    pub fn k(&self) -> usize {
        self.0
    }

    pub fn check(&self, c: Color) -> Result<()> {
        if c < self.0 {
            Ok(())
        } else {
            Err(Error::ColorOutOfRange {
                color: c,
                k: self.0,
            })
        }
    }
}

/// A total vertex coloring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring(pub Vec<Color>);

impl Coloring {
    pub fn color(&self, v: Vertex) -> Color {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.0
    }
}

/// One arc with its conflict, as yielded by [`ConflictInstance::arcs`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub id: EdgeId,
    pub tail: Vertex,
    pub head: Vertex,
    pub c_tail: Color,
    pub c_head: Color,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictInstance {
    graph: MultiGraph,
    orientation: Orientation,
    colors: ColorSet,
    conflicts: Vec<(Color, Color)>,
}

impl ConflictInstance {
    pub fn new(
        graph: MultiGraph,
        orientation: Orientation,
        colors: ColorSet,
        conflicts: Vec<(Color, Color)>,
    ) -> Result<Self> {
        if orientation.arcs().len() != graph.edge_count() {
            return Err(Error::InvalidOrientation(format!(
                "{} arcs for {} edges",
                orientation.arcs().len(),
                graph.edge_count()
            )));
        }
        if conflicts.len() != graph.edge_count() {
            return Err(Error::Domain(format!(
                "{} conflicts for {} edges",
                conflicts.len(),
                graph.edge_count()
            )));
        }
        for &(a, b) in &conflicts {
            colors.check(a)?;
            colors.check(b)?;
        }
        Ok(Self {
            graph,
            orientation,
            colors,
            conflicts,
        })
    }

    /// Builds an instance from `(tail, head, c_tail, c_head)` records; arc
    /// direction is taken as written.
    pub fn from_arcs<I>(vertex_count: usize, k: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Color, Color)>,
    {
        let arcs: Vec<_> = arcs.into_iter().collect();
        let graph = MultiGraph::new(vertex_count, arcs.iter().map(|a| (a.0, a.1)))?;
        let orientation = Orientation::as_written(&graph);
        let conflicts = arcs.iter().map(|a| (a.2, a.3)).collect();
        Self::new(graph, orientation, ColorSet::new(k), conflicts)
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn colors(&self) -> ColorSet {
        self.colors
    }

    pub fn k(&self) -> usize {
        self.colors.k()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn arc_count(&self) -> usize {
        self.conflicts.len()
    }

    /// Conflict of arc `e` ordered as `(tail color, head color)`.
    pub fn conflict(&self, e: EdgeId) -> (Color, Color) {
        self.conflicts[e]
    }

    pub fn arc(&self, e: EdgeId) -> Arc {
        let (tail, head) = self.orientation.arc(e);
        let (c_tail, c_head) = self.conflicts[e];
        Arc {
            id: e,
            tail,
            head,
            c_tail,
            c_head,
        }
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        (0..self.conflicts.len()).map(|e| self.arc(e))
    }

    pub fn max_out_degree(&self) -> usize {
        self.orientation.max_out_degree()
    }

    /// The `(v, e)` conflict color: the entry of `f(e)` at `v`'s position.
    pub fn conflict_color(&self, v: Vertex, e: EdgeId) -> Result<Color> {
        if e >= self.conflicts.len() {
            return Err(Error::EdgeOutOfRange {
                edge: e,
                edge_count: self.conflicts.len(),
            });
        }
        let a = self.arc(e);
        if v == a.tail {
            Ok(a.c_tail)
        } else if v == a.head {
            Ok(a.c_head)
        } else {
            Err(Error::NotAnEndpoint { vertex: v, edge: e })
        }
    }

    /// Same constraints under a different orientation: every flipped arc
    /// gets its conflict pair reversed.
    pub fn reoriented(&self, orientation: Orientation) -> Result<Self> {
        if orientation.arcs().len() != self.arc_count() {
            return Err(Error::InvalidOrientation(format!(
                "{} arcs for {} edges",
                orientation.arcs().len(),
                self.arc_count()
            )));
        }
        let conflicts = self
            .arcs()
            .map(|a| {
                let (t, h) = orientation.arc(a.id);
                if (t, h) == (a.tail, a.head) {
                    Ok((a.c_tail, a.c_head))
                } else if (t, h) == (a.head, a.tail) {
                    Ok((a.c_head, a.c_tail))
                } else {
                    Err(Error::InvalidOrientation(format!(
                        "arc {} cannot become ({t}, {h})",
                        a.id
                    )))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.graph.clone(), orientation, self.colors, conflicts)
    }

    /// Re-orients along the graph's smallest-last ordering, so the maximum
    /// out-degree equals the degeneracy.
    pub fn degeneracy_oriented(&self) -> Self {
        let ord = degeneracy_order(&self.graph);
        let o = orient(&self.graph, &ord).expect("smallest-last ordering is a permutation");
        self.reoriented(o)
            .expect("orientation built from this graph")
    }

    /// Collapses parallel arcs that encode the same ordered constraint,
    /// whichever way they point. The first occurrence survives and edge ids
    /// are re-densified in order.
    pub fn normalize(&self) -> Self {
        let mut seen = HashSet::new();
        let keep: Vec<Arc> = self
            .arcs()
            .filter(|a| {
                let key = if a.tail < a.head {
                    (a.tail, a.head, a.c_tail, a.c_head)
                } else {
                    (a.head, a.tail, a.c_head, a.c_tail)
                };
                seen.insert(key)
            })
            .collect();
        let graph = MultiGraph::new(self.vertex_count(), keep.iter().map(|a| (a.tail, a.head)))
            .expect("subset of valid edges");
        let orientation = Orientation::as_written(&graph);
        let conflicts = keep.iter().map(|a| (a.c_tail, a.c_head)).collect();
        Self::new(graph, orientation, self.colors, conflicts).expect("subset of valid conflicts")
    }

    pub fn is_normalized(&self) -> bool {
        self.normalize().arc_count() == self.arc_count()
    }

    /// Arcs whose forbidden pair is realised by `col`. Empty exactly when
    /// `col` is a single-conflict coloring.
    pub fn verify(&self, col: &Coloring) -> Result<Vec<EdgeId>> {
        if col.len() != self.vertex_count() {
            return Err(Error::PartialColoring {
                expected: self.vertex_count(),
                got: col.len(),
            });
        }
        for &c in col.as_slice() {
            self.colors.check(c)?;
        }
        Ok(self
            .arcs()
            .filter(|a| col.color(a.tail) == a.c_tail && col.color(a.head) == a.c_head)
            .map(|a| a.id)
            .collect())
    }

    /// Arcs grouped by `(tail, head, head color)`; the group's distinct tail
    /// colors are the colors one head color can knock out at the tail.
    fn head_color_groups(&self) -> BTreeMap<(Vertex, Vertex, Color), Vec<EdgeId>> {
        let mut groups: BTreeMap<_, Vec<EdgeId>> = BTreeMap::new();
        for a in self.arcs() {
            groups
                .entry((a.tail, a.head, a.c_head))
                .or_default()
                .push(a.id);
        }
        groups
    }

    /// Checks unique restrictiveness at every vertex `w`: parallel in-arcs
    /// sharing their `w`-side color must share their other color too.
    pub fn is_uniquely_restrictive(&self) -> UniqueRestrictiveness {
        let mut witnesses = Vec::new();
        for (&(_, w, _), arcs) in &self.head_color_groups() {
            for (i, &e1) in arcs.iter().enumerate() {
                for &e2 in &arcs[i + 1..] {
                    if self.conflicts[e1].0 != self.conflicts[e2].0 {
                        witnesses.push(Witness {
                            vertex: w,
                            first: e1,
                            second: e2,
                        });
                    }
                }
            }
        }
        UniqueRestrictiveness {
            holds: witnesses.is_empty(),
            witnesses,
        }
    }

    /// Upper bound, per vertex, on how many of its colors can be ruled out
    /// once all out-neighbors are colored: each out-neighbor `w` contributes
    /// the largest number of distinct tail colors sharing one head color.
    /// Never exceeds the out-degree.
    pub fn exclusion_degrees(&self) -> Vec<usize> {
        let mut per_pair: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
        for (&(v, w, _), arcs) in &self.head_color_groups() {
            let mut tails: Vec<Color> = arcs.iter().map(|&e| self.conflicts[e].0).collect();
            tails.sort_unstable();
            tails.dedup();
            let slot = per_pair.entry((v, w)).or_default();
            *slot = (*slot).max(tails.len());
        }
        let mut degrees = vec![0; self.vertex_count()];
        for ((v, _), x) in per_pair {
            degrees[v] += x;
        }
        degrees
    }

    pub fn max_exclusion_degree(&self) -> usize {
        self.exclusion_degrees().into_iter().max().unwrap_or(0)
    }

    /// Restrictiveness per vertex: the largest number of distinct tail
    /// colors among parallel out-arcs sharing one head color. `r` is the
    /// maximum over vertices, floored at 1.
    pub fn restrictiveness(&self) -> Restrictiveness {
        let mut per_vertex = vec![0; self.vertex_count()];
        for (&(v, _, _), arcs) in &self.head_color_groups() {
            let mut tails: Vec<Color> = arcs.iter().map(|&e| self.conflicts[e].0).collect();
            tails.sort_unstable();
            tails.dedup();
            per_vertex[v] = per_vertex[v].max(tails.len());
        }
        let r = per_vertex.iter().copied().max().unwrap_or(0).max(1);
        Restrictiveness { r, per_vertex }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    /// The head vertex at which unique restrictiveness fails.
    pub vertex: Vertex,
    pub first: EdgeId,
    pub second: EdgeId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniqueRestrictiveness {
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restrictiveness {
    pub r: usize,
    pub per_vertex: Vec<usize>,
}

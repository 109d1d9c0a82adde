//! Exact solvers for desk-scale instances.

use std::collections::BTreeMap;

use crate::conflict::{Coloring, ConflictInstance};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::multigraph::{degeneracy_order, MultiGraph};
use crate::{Color, Vertex};

/// Largest number of conflict functions [`adversarial_chi_con`] will try for
/// a single color count.
pub const MAX_CONFLICT_FUNCTIONS: u64 = 20_000_000;

struct Search<'a> {
    k: usize,
    order: &'a [Vertex],
    /// Per vertex: `(other endpoint, own color, other color)` for each incident arc.
    adj: &'a [Vec<(Vertex, Color, Color)>],
    color: Vec<Option<Color>>,
    /// `excluded[v * k + c]`: assigned neighbors currently forbidding `c` at `v`.
    excluded: Vec<u32>,
    available: Vec<usize>,
}

impl Search<'_> {
    fn assign(&mut self, v: Vertex, c: Color, trail: &mut Vec<(Vertex, Color)>) -> bool {
        self.color[v] = Some(c);
        let mut ok = true;
        for &(x, own, other) in &self.adj[v] {
            if own != c || self.color[x].is_some() {
                continue;
            }
            let slot = &mut self.excluded[x * self.k + other];
            *slot += 1;
            trail.push((x, other));
            if *slot == 1 {
                self.available[x] -= 1;
                if self.available[x] == 0 {
                    ok = false;
                }
            }
        }
        ok
    }

    fn unassign(&mut self, v: Vertex, trail: &mut Vec<(Vertex, Color)>, mark: usize) {
        while trail.len() > mark {
            let (x, c) = trail.pop().expect("len > mark");
            let slot = &mut self.excluded[x * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.available[x] += 1;
            }
        }
        self.color[v] = None;
    }

    fn run(&mut self, depth: usize, trail: &mut Vec<(Vertex, Color)>) -> bool {
        let Some(&v) = self.order.get(depth) else {
            return true;
        };
        for c in 0..self.k {
            if self.excluded[v * self.k + c] > 0 {
                continue;
            }
            let mark = trail.len();
            if self.assign(v, c, trail) && self.run(depth + 1, trail) {
                return true;
            }
            self.unassign(v, trail, mark);
        }
        false
    }
}

/// Complete backtracking search in degeneracy order, smallest color first,
/// with forward checking: assigning a color immediately removes the colors
/// it forbids at unassigned neighbors and backtracks on a wipe-out.
pub fn backtracking_solve(inst: &ConflictInstance) -> Option<Coloring> {
    let n = inst.vertex_count();
    let k = inst.k();
    if n == 0 {
        return Some(Coloring(Vec::new()));
    }
    if k == 0 {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for a in inst.arcs() {
        adj[a.tail].push((a.head, a.c_tail, a.c_head));
        adj[a.head].push((a.tail, a.c_head, a.c_tail));
    }
    let order = degeneracy_order(inst.graph()).order;
    let mut search = Search {
        k,
        order: &order,
        adj: &adj,
        color: vec![None; n],
        excluded: vec![0; n * k],
        available: vec![k; n],
    };
    if !search.run(0, &mut Vec::new()) {
        return None;
    }
    let coloring = Coloring(
        search
            .color
            .into_iter()
            .map(|c| c.expect("all assigned"))
            .collect(),
    );
    debug_assert!(inst
        .verify(&coloring)
        .map(|v| v.is_empty())
        .unwrap_or(false));
    Some(coloring)
}

fn properly_colorable(adj: &[Vec<Vertex>], order: &[Vertex], k: usize) -> bool {
    fn rec(
        adj: &[Vec<Vertex>],
        order: &[Vertex],
        k: usize,
        depth: usize,
        col: &mut [usize],
    ) -> bool {
        let Some(&v) = order.get(depth) else {
            return true;
        };
        for c in 0..k {
            if adj[v].iter().all(|&w| col[w] != c) {
                col[v] = c;
                if rec(adj, order, k, depth + 1, col) {
                    return true;
                }
                col[v] = usize::MAX;
            }
        }
        false
    }
    rec(adj, order, k, 0, &mut vec![usize::MAX; adj.len()])
}

/// Exact chromatic number of the underlying simple graph by trying
/// `k = 1, 2, ...` with plain proper-coloring backtracking.
pub fn chromatic_number(g: &MultiGraph) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    let simple = g.simple();
    let mut adj = vec![Vec::new(); n];
    for e in simple.edges() {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    let order = degeneracy_order(&simple).order;
    (1..=n)
        .find(|&k| properly_colorable(&adj, &order, k))
        .expect("n colors always suffice")
}

fn binomial(n: usize, r: usize) -> u64 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// `i`-th `r`-subset of `0..n` in lexicographic order.
fn unrank_combination(mut i: u64, n: usize, r: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(r);
    let mut next = 0;
    for left in (1..=r).rev() {
        loop {
            let with_next = binomial(n - next - 1, left - 1);
            if i < with_next {
                out.push(next);
                next += 1;
                break;
            }
            i -= with_next;
            next += 1;
        }
    }
    out
}

/// One class of parallel edges and the number of conflict sets it ranges over.
struct ParallelClass {
    ends: (Vertex, Vertex),
    size: usize,
    /// The first class always contains pair `(0, 0)` and picks the rest.
    pinned: bool,
    choices: u64,
}

pub fn adversarial_chi_con(g: &MultiGraph, k_max: usize) -> Result<Option<usize>> {
    adversarial_chi_con_with(g, k_max, Execution::default())
}

/// Smallest `k <= k_max` such that every conflict function over `k` colors
/// admits a coloring, or `None`.
///
/// Two reductions keep the enumeration small without losing any hard case.
/// Identical conflicts on parallel edges collapse, and adding constraints
/// only removes solutions, so each class of `m` parallel edges ranges over
/// sets of `min(m, k^2)` distinct pairs. Relabelling colors independently at
/// each vertex preserves solvability, so the first class is pinned to
/// contain `(0, 0)`.
pub fn adversarial_chi_con_with(
    g: &MultiGraph,
    k_max: usize,
    exec: Execution,
) -> Result<Option<usize>> {
    let mut multiplicity: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
    for e in g.edges() {
        *multiplicity.entry(e.key()).or_default() += 1;
    }
    let n = g.vertex_count();

    for k in 1..=k_max {
        let pairs = k * k;
        let classes: Vec<ParallelClass> = multiplicity
            .iter()
            .enumerate()
            .map(|(i, (&ends, &m))| {
                let size = m.min(pairs);
                let pinned = i == 0;
                let choices = if pinned {
                    binomial(pairs - 1, size - 1)
                } else {
                    binomial(pairs, size)
                };
                ParallelClass {
                    ends,
                    size,
                    pinned,
                    choices,
                }
            })
            .collect();
        let total = classes.iter().try_fold(1u64, |acc, c| {
            acc.checked_mul(c.choices)
                .filter(|&t| t <= MAX_CONFLICT_FUNCTIONS)
        });
        let Some(total) = total else {
            return Err(Error::ResourceLimit(format!(
                "more than {MAX_CONFLICT_FUNCTIONS} conflict functions at k = {k}"
            )));
        };

        let every_solvable = exec::all_range(total, exec, |mut index| {
            let mut arcs = Vec::new();
            for class in &classes {
                let pick = index % class.choices;
                index /= class.choices;
                let chosen: Vec<usize> = if class.pinned {
                    std::iter::once(0)
                        .chain(
                            unrank_combination(pick, pairs - 1, class.size - 1)
                                .into_iter()
                                .map(|x| x + 1),
                        )
                        .collect()
                } else {
                    unrank_combination(pick, pairs, class.size)
                };
                arcs.extend(
                    chosen
                        .into_iter()
                        .map(|x| (class.ends.0, class.ends.1, x / k, x % k)),
                );
            }
            let inst = ConflictInstance::from_arcs(n, k, arcs).expect("colors below k");
            backtracking_solve(&inst).is_some()
        });
        if every_solvable {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

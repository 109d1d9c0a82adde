//! Seeded random instance generators.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conflict::ConflictInstance;
use crate::error::{Error, Result};
use crate::multigraph::MultiGraph;
use crate::reductions::GraphFamily;

/// Simple graph where vertex `j` joins `min(j, d)` distinct earlier vertices
/// chosen uniformly, so the degeneracy is at most `d`.
pub fn gen_degenerate(n: usize, d: usize, seed: u64) -> MultiGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for j in 1..n {
        for i in sample(&mut rng, j, j.min(d)) {
            edges.push((i, j));
        }
    }
    MultiGraph::new(n, edges).expect("earlier endpoints are in range and distinct")
}

/// Attaches a uniformly random conflict to every edge of `g`.
///
/// With `mu` set, parallel edges of `g` are ignored and every adjacent pair
/// instead receives `m` distinct conflicts, `m` uniform in `1..=min(mu, k^2)`.
/// The result is normalized.
pub fn random_conflicts(
    g: &MultiGraph,
    k: usize,
    mu: Option<usize>,
    seed: u64,
) -> Result<ConflictInstance> {
    if k == 0 && g.edge_count() > 0 {
        return Err(Error::Domain(
            "cannot draw conflicts from zero colors".into(),
        ));
    }
    if mu == Some(0) {
        return Err(Error::Domain("multiplicity must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::new();
    match mu {
        None => {
            for e in g.edges() {
                arcs.push((e.u, e.v, rng.gen_range(0..k), rng.gen_range(0..k)));
            }
        }
        Some(mu) => {
            let pairs = k * k;
            for e in g.simple().edges() {
                let m = rng.gen_range(1..=mu.min(pairs));
                for x in sample(&mut rng, pairs, m) {
                    arcs.push((e.u, e.v, x / k, x % k));
                }
            }
        }
    }
    Ok(ConflictInstance::from_arcs(g.vertex_count(), k, arcs)?.normalize())
}

/// Random forest on `n` vertices with every degree at most `max_degree`.
///
/// Vertices arrive in random order and attach to a uniform earlier vertex
/// that still has room; one with no room available starts a new tree.
pub fn random_forest(n: usize, max_degree: usize, rng: &mut impl Rng) -> MultiGraph {
    let mut arrival: Vec<usize> = (0..n).collect();
    arrival.shuffle(rng);
    let mut degree = vec![0usize; n];
    let mut open: Vec<usize> = Vec::new();
    let mut edges = Vec::new();
    for &v in &arrival {
        if !open.is_empty() {
            let slot = rng.gen_range(0..open.len());
            let parent = open[slot];
            edges.push((parent, v));
            degree[parent] += 1;
            degree[v] += 1;
            if degree[parent] >= max_degree {
                open.swap_remove(slot);
            }
        }
        if degree[v] < max_degree {
            open.push(v);
        }
    }
    MultiGraph::new(n, edges).expect("tree edges are in range")
}

pub fn random_forest_family(
    count: usize,
    n: usize,
    max_degree: usize,
    seed: u64,
) -> Result<GraphFamily> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let members = (0..count)
        .map(|_| random_forest(n, max_degree, &mut rng))
        .collect();
    GraphFamily::new(n, members)
}

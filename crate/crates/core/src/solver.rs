//! Random-inventory coloring with Moser–Tardos resampling.
//!
//! Every vertex `v` draws an inventory `S(v)` containing each color
//! independently with probability `p`. The pruned copy `S'(v)` drops every
//! color `c` for which some out-arc `(v, w)` forbids `(c, c')` with `c'` in the
//! *unpruned* `S(w)`. When no `S'(v)` is empty, picking any color from each
//! `S'(v)` is a valid coloring. A vertex with empty `S'(v)` is bad; its event
//! depends only on the inventories of `v` and its out-neighbors, which are the
//! ones redrawn.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conflict::{Coloring, ConflictInstance};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::{Color, Vertex};

/// Per-vertex color sets over `0..k`, stored as one flat bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Inventories {
    k: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Inventories {
    pub fn new(vertex_count: usize, k: usize) -> Self {
        let words = k.div_ceil(64).max(1);
        Self {
            k,
            words,
            bits: vec![0; vertex_count * words],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.bits.len() / self.words
    }

    fn slot(&self, v: Vertex, c: Color) -> (usize, u64) {
        debug_assert!(c < self.k);
        (v * self.words + c / 64, 1 << (c % 64))
    }

    pub fn contains(&self, v: Vertex, c: Color) -> bool {
        let (i, mask) = self.slot(v, c);
        self.bits[i] & mask != 0
    }

    pub fn insert(&mut self, v: Vertex, c: Color) {
        let (i, mask) = self.slot(v, c);
        self.bits[i] |= mask;
    }

    pub fn remove(&mut self, v: Vertex, c: Color) {
        let (i, mask) = self.slot(v, c);
        self.bits[i] &= !mask;
    }

    fn row(&self, v: Vertex) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn is_empty(&self, v: Vertex) -> bool {
        self.row(v).iter().all(|&w| w == 0)
    }

    pub fn len(&self, v: Vertex) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first(&self, v: Vertex) -> Option<Color> {
        self.row(v)
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn colors(&self, v: Vertex) -> impl Iterator<Item = Color> + '_ {
        (0..self.k).filter(move |&c| self.contains(v, c))
    }

    fn copy_row_from(&mut self, other: &Inventories, v: Vertex) {
        let range = v * self.words..(v + 1) * self.words;
        self.bits[range.clone()].copy_from_slice(&other.bits[range]);
    }

    fn redraw<R: Rng + ?Sized>(&mut self, v: Vertex, p: f64, rng: &mut R) {
        for w in &mut self.bits[v * self.words..(v + 1) * self.words] {
            *w = 0;
        }
        for c in 0..self.k {
            if rng.gen::<f64>() < p {
                self.insert(v, c);
            }
        }
    }
}

/// Inventories `S(v)` and their pruned copies `S'(v) ⊆ S(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InventoryState {
    pub inventory: Inventories,
    pub pruned: Inventories,
}

/// Draws every `S(v)` with independent Bernoulli(`p`) colors, vertex by
/// vertex and color by color. `S'` starts equal to `S`.
pub fn sample_inventories<R: Rng + ?Sized>(
    inst: &ConflictInstance,
    p: f64,
    rng: &mut R,
) -> InventoryState {
    let mut inventory = Inventories::new(inst.vertex_count(), inst.k());
    for v in 0..inst.vertex_count() {
        inventory.redraw(v, p, rng);
    }
    InventoryState {
        pruned: inventory.clone(),
        inventory,
    }
}

/// Recomputes `S'(v)` from the unpruned inventories of `v` and its out-neighbors.
fn prune_vertex(inst: &ConflictInstance, state: &mut InventoryState, v: Vertex) {
    state.pruned.copy_row_from(&state.inventory, v);
    for &e in inst.orientation().out_arcs(v) {
        let a = inst.arc(e);
        if state.inventory.contains(v, a.c_tail) && state.inventory.contains(a.head, a.c_head) {
            state.pruned.remove(v, a.c_tail);
        }
    }
}

/// Deletes from `S'(v)` every tail color whose forbidden head color is in
/// `S(w)`, for every out-arc `(v, w)`. Reads only `S`, so it is idempotent.
pub fn prune(inst: &ConflictInstance, state: &mut InventoryState) {
    for v in 0..inst.vertex_count() {
        prune_vertex(inst, state, v);
    }
}

/// Vertices whose pruned inventory is empty, ascending.
pub fn bad_vertices(state: &InventoryState) -> Vec<Vertex> {
    (0..state.pruned.vertex_count())
        .filter(|&v| state.pruned.is_empty(v))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Variant {
    #[default]
    Auto,
    Greedy,
    /// `p = k / 2d`, for uniquely restrictive conflicts.
    Unique,
    /// `p = k / (2^(r+3) r d)`, for restrictiveness `r`.
    General,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Auto => "auto",
            Variant::Greedy => "greedy",
            Variant::Unique => "unique",
            Variant::General => "general",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Variant::Auto),
            "greedy" => Ok(Variant::Greedy),
            "unique" => Ok(Variant::Unique),
            "general" => Ok(Variant::General),
            other => Err(Error::InvalidConfig(format!("unknown variant `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub variant: Variant,
    pub probability_override: Option<f64>,
    /// Defaults to `1000 * n` when unset.
    pub max_rounds: Option<usize>,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            variant: Variant::Auto,
            probability_override: None,
            max_rounds: None,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(p) = self.probability_override {
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::InvalidConfig(format!(
                    "probability {p} not in (0, 1]"
                )));
            }
        }
        if self.max_rounds == Some(0) {
            return Err(Error::InvalidConfig("max_rounds must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Solved,
    ExhaustedRounds,
    InfeasibleDetected,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Solved => "solved",
            Outcome::ExhaustedRounds => "exhausted-rounds",
            Outcome::InfeasibleDetected => "infeasible-detected",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverReport {
    pub outcome: Outcome,
    pub coloring: Option<Coloring>,
    pub rounds: usize,
    pub resampled_vertices: usize,
    /// `None` when no inventories were drawn (greedy, or nothing to solve).
    pub p_used: Option<f64>,
    pub variant_used: Variant,
    /// Number of bad vertices observed at each round.
    pub bad_history: Vec<usize>,
    pub seed: u64,
}

/// Sampling probability for a randomized variant on `inst` as oriented.
/// `Unique` uses `k/(2d)` capped at 1; `General` uses `k/(2^(r+3) r d)`
/// capped at 1/4. `Auto` resolves first; resolving to greedy is an error.
pub fn choose_probability(inst: &ConflictInstance, variant: Variant) -> Result<f64> {
    let variant = match variant {
        Variant::Auto => resolve_variant(inst),
        v => v,
    };
    let d = inst.max_out_degree();
    if d == 0 {
        return Err(Error::Domain(
            "instance has no arcs; sampling probability undefined".into(),
        ));
    }
    let k = inst.k() as f64;
    let d = d as f64;
    match variant {
        Variant::Unique => Ok((k / (2.0 * d)).min(1.0)),
        Variant::General => {
            let r = inst.restrictiveness().r as f64;
            Ok((k / (2f64.powf(r + 3.0) * r * d)).min(0.25))
        }
        Variant::Greedy | Variant::Auto => Err(Error::Domain(
            "greedy variant has no sampling probability".into(),
        )),
    }
}

/// `Greedy` when `k` exceeds the maximum exclusion degree (at most the
/// out-degree), else `Unique` for uniquely restrictive conflicts, else `General`.
pub fn resolve_variant(inst: &ConflictInstance) -> Variant {
    if inst.k() > inst.max_exclusion_degree() {
        Variant::Greedy
    } else if inst.is_uniquely_restrictive().holds {
        Variant::Unique
    } else {
        Variant::General
    }
}

/// Colors vertices so that out-neighbors are always colored first; each
/// out-arc `(v, w)` with conflict `(c, c')` and `w` colored `c'` rules out
/// `c` at `v`, and `v` takes the smallest color left. Requires `k` above the
/// maximum exclusion degree (implied by `k > max out-degree`) and an acyclic
/// orientation.
pub fn greedy_solve(inst: &ConflictInstance) -> Result<Coloring> {
    let n = inst.vertex_count();
    if n == 0 {
        return Ok(Coloring(Vec::new()));
    }
    let max_excl = inst.max_exclusion_degree();
    if inst.k() < max_excl + 1 {
        return Err(Error::GreedyPrecondition {
            k: inst.k(),
            exclusion_degree: max_excl,
            required: max_excl + 1,
        });
    }
    let order = inst
        .orientation()
        .sinks_first_order()
        .ok_or(Error::CyclicOrientation)?;
    let mut color = vec![usize::MAX; n];
    let mut excluded = vec![false; inst.k()];
    for v in order {
        excluded.iter_mut().for_each(|x| *x = false);
        for &e in inst.orientation().out_arcs(v) {
            let a = inst.arc(e);
            if color[a.head] == a.c_head {
                excluded[a.c_tail] = true;
            }
        }
        color[v] = excluded
            .iter()
            .position(|&x| !x)
            .expect("more colors than possible exclusions");
    }
    Ok(Coloring(color))
}

/// Full pipeline: normalize, orient along the degeneracy order, pick a
/// variant, then sample once and resample the smallest bad vertex together
/// with its out-neighbors until no vertex is bad or the round budget runs out.
pub fn moser_tardos_solve(inst: &ConflictInstance, config: &SolverConfig) -> Result<SolverReport> {
    config.validate()?;
    let n = inst.vertex_count();
    let mut report = SolverReport {
        outcome: Outcome::Solved,
        coloring: None,
        rounds: 0,
        resampled_vertices: 0,
        p_used: None,
        variant_used: config.variant,
        bad_history: Vec::new(),
        seed: config.seed,
    };
    if inst.k() == 0 && n > 0 {
        report.outcome = Outcome::InfeasibleDetected;
        return Ok(report);
    }

    let work = inst.normalize().degeneracy_oriented();
    let variant = match config.variant {
        Variant::Auto => resolve_variant(&work),
        v => v,
    };
    report.variant_used = variant;

    if variant == Variant::Greedy || n == 0 || work.arc_count() == 0 {
        let coloring = greedy_solve(&work)?;
        report.coloring = Some(coloring);
        return Ok(report);
    }

    let p = match config.probability_override {
        Some(p) => p,
        None => choose_probability(&work, variant)?,
    };
    report.p_used = Some(p);
    let max_rounds = config.max_rounds.unwrap_or(1000 * n);

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut state = sample_inventories(&work, p, &mut rng);
    prune(&work, &mut state);
    let mut bad: BTreeSet<Vertex> = bad_vertices(&state).into_iter().collect();
    let out_neighbors: Vec<Vec<Vertex>> = (0..n)
        .map(|v| work.orientation().out_neighbors(v))
        .collect();

    for round in 1..=max_rounds {
        report.rounds = round;
        report.bad_history.push(bad.len());
        let Some(&v) = bad.first() else {
            let coloring = Coloring(
                (0..n)
                    .map(|u| state.pruned.first(u).expect("no bad vertices"))
                    .collect(),
            );
            debug_assert!(inst
                .verify(&coloring)
                .map(|x| x.is_empty())
                .unwrap_or(false));
            report.coloring = Some(coloring);
            return Ok(report);
        };
        if round == max_rounds {
            break;
        }

        let mut redrawn = Vec::with_capacity(1 + out_neighbors[v].len());
        redrawn.push(v);
        redrawn.extend_from_slice(&out_neighbors[v]);
        for &u in &redrawn {
            state.inventory.redraw(u, p, &mut rng);
        }
        report.resampled_vertices += redrawn.len();

        // S'(x) reads S(x) and S of x's out-neighbors, so only the redrawn
        // vertices and the tails of arcs into them can change.
        let mut touched = redrawn.clone();
        for &u in &redrawn {
            touched.extend(
                work.orientation()
                    .in_arcs(u)
                    .iter()
                    .map(|&e| work.arc(e).tail),
            );
        }
        touched.sort_unstable();
        touched.dedup();
        for x in touched {
            prune_vertex(&work, &mut state, x);
            if state.pruned.is_empty(x) {
                bad.insert(x);
            } else {
                bad.remove(&x);
            }
        }
    }

    report.outcome = Outcome::ExhaustedRounds;
    Ok(report)
}

/// Independent solves, one per config, optionally spread across threads.
pub fn solve_batch(
    inst: &ConflictInstance,
    configs: &[SolverConfig],
    exec: Execution,
) -> Vec<Result<SolverReport>> {
    exec::map_range(configs.len(), exec, |i| {
        moser_tardos_solve(inst, &configs[i])
    })
}

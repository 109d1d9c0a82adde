//! Diagnostics for the bad event "pruned inventory of `v` is empty": arc
//! counts per tail color, counts of parallel arc tuples that one head color
//! can knock out together, the disjoint-tuple sum inequality those counts
//! satisfy, and a Monte Carlo estimate of the event's probability.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conflict::ConflictInstance;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::solver::Inventories;
use crate::{Color, Vertex};

/// Largest parallel class (arcs `v -> w` sharing a head color) enumerated
/// subset by subset.
pub const MAX_GROUP: usize = 20;
/// Largest number of set tuples visited by [`claim_check`].
pub const MAX_TUPLES: u64 = 10_000_000;
const SAMPLES_PER_CHUNK: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BCounts {
    /// `b[c]`: out-arcs of `v` whose tail color is `c`.
    pub b: Vec<u64>,
    /// For each tail color set `C'`, the number of sets of parallel out-arcs
    /// to one neighbor, all with one head color, whose tail colors are
    /// exactly `C'`. Singletons reproduce `b`.
    pub sets: BTreeMap<Vec<Color>, u64>,
}

impl BCounts {
    pub fn set(&self, colors: &[Color]) -> u64 {
        self.sets.get(colors).copied().unwrap_or(0)
    }
}

pub fn b_counts(inst: &ConflictInstance, v: Vertex) -> Result<BCounts> {
    if v >= inst.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            vertex_count: inst.vertex_count(),
        });
    }
    let mut b = vec![0u64; inst.k()];
    let mut groups: BTreeMap<(Vertex, Color), Vec<Color>> = BTreeMap::new();
    for &e in inst.orientation().out_arcs(v) {
        let a = inst.arc(e);
        b[a.c_tail] += 1;
        groups.entry((a.head, a.c_head)).or_default().push(a.c_tail);
    }

    let mut sets = BTreeMap::new();
    for tails in groups.values() {
        if tails.len() > MAX_GROUP {
            return Err(Error::ResourceLimit(format!(
                "{} parallel arcs share a head color at vertex {v}; limit is {MAX_GROUP}",
                tails.len()
            )));
        }
        for mask in 1u32..(1 << tails.len()) {
            let mut chosen: Vec<Color> = (0..tails.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| tails[i])
                .collect();
            let size = chosen.len();
            chosen.sort_unstable();
            chosen.dedup();
            if chosen.len() == size {
                *sets.entry(chosen).or_insert(0) += 1;
            }
        }
    }
    Ok(BCounts { b, sets })
}

/// `e_z(b)`: sum over `i_1 < ... < i_z` of `b[i_1] ... b[i_z]`.
pub fn elementary_symmetric(b: &[u64], z: usize) -> u128 {
    let mut e = vec![0u128; z + 1];
    e[0] = 1;
    for &x in b {
        for j in (1..=z).rev() {
            e[j] += e[j - 1] * x as u128;
        }
    }
    e[z]
}

/// Ordered compositions of `t` into parts in `1..=max_part`.
pub fn compositions(t: usize, max_part: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for q in 1..=max_part.min(left) {
            prefix.push(q);
            rec(left - q, max_part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if t > 0 {
        rec(t, max_part, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClaimCheck {
    /// Sum over pairwise disjoint `C_1 < ... < C_z` (ordered by least
    /// element) with `|C_i| = q_i` of `b(C_1) ... b(C_z)`.
    pub lhs: u128,
    /// `2^(z r) sigma_z`.
    pub rhs: u128,
    pub sigma: u128,
    pub holds: bool,
}

/// Evaluates both sides of the disjoint-tuple inequality at vertex `v` for
/// the composition `parts = (q_1, ..., q_z)`, with `r` the instance's
/// restrictiveness.
pub fn claim_check(inst: &ConflictInstance, v: Vertex, parts: &[usize]) -> Result<ClaimCheck> {
    let r = inst.restrictiveness().r;
    let t: usize = parts.iter().sum();
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::Domain("partition parts must be >= 1".into()));
    }
    if t > inst.k() {
        return Err(Error::Domain(format!(
            "partition sums to {t} > k = {}",
            inst.k()
        )));
    }
    if let Some(&q) = parts.iter().find(|&&q| q > r) {
        return Err(Error::Domain(format!(
            "part {q} exceeds restrictiveness {r}"
        )));
    }
    let z = parts.len();
    let counts = b_counts(inst, v)?;

    let mut by_size: Vec<Vec<(&Vec<Color>, u64)>> = vec![Vec::new(); r + 1];
    for (set, &count) in &counts.sets {
        if set.len() <= r {
            by_size[set.len()].push((set, count));
        }
    }
    for bucket in &mut by_size {
        bucket.sort_by_key(|(set, _)| set[0]);
    }

    struct Walk<'a> {
        parts: &'a [usize],
        by_size: &'a [Vec<(&'a Vec<Color>, u64)>],
        used: Vec<bool>,
        steps: u64,
    }

    impl Walk<'_> {
        fn sum(&mut self, pos: usize, min_after: Option<Color>) -> Result<u128> {
            if pos == self.parts.len() {
                return Ok(1);
            }
            let mut total = 0u128;
            for i in 0..self.by_size[self.parts[pos]].len() {
                let (set, count) = self.by_size[self.parts[pos]][i];
                if min_after.is_some_and(|m| set[0] <= m) || set.iter().any(|&c| self.used[c]) {
                    continue;
                }
                self.steps += 1;
                if self.steps > MAX_TUPLES {
                    return Err(Error::ResourceLimit(format!(
                        "more than {MAX_TUPLES} set tuples"
                    )));
                }
                set.iter().for_each(|&c| self.used[c] = true);
                let rest = self.sum(pos + 1, Some(set[0]));
                set.iter().for_each(|&c| self.used[c] = false);
                total += count as u128 * rest?;
            }
            Ok(total)
        }
    }

    let mut walk = Walk {
        parts,
        by_size: &by_size,
        used: vec![false; inst.k()],
        steps: 0,
    };
    let lhs = walk.sum(0, None)?;
    let sigma = elementary_symmetric(&counts.b, z);
    let rhs = (1u128 << (z * r)) * sigma;
    Ok(ClaimCheck {
        lhs,
        rhs,
        sigma,
        holds: lhs <= rhs,
    })
}

/// `prod_c (1 - p + b_c p^2)`: bound on the bad-event probability when the
/// conflicts are uniquely restrictive.
pub fn product_bound(b: &[u64], p: f64) -> f64 {
    b.iter().map(|&bc| 1.0 - p + bc as f64 * p * p).product()
}

/// `exp(-k^2 / 4d)`: the same bound after substituting `p = k / 2d`.
pub fn unique_bad_event_bound(k: usize, d: usize) -> f64 {
    (-((k * k) as f64) / (4.0 * d as f64)).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub estimate: f64,
    pub std_error: f64,
    pub hits: u64,
    pub samples: usize,
}

impl Estimate {
    pub fn from_counts(hits: u64, samples: usize) -> Self {
        let n = samples as f64;
        let estimate = hits as f64 / n;
        Self {
            estimate,
            std_error: (estimate * (1.0 - estimate) / n).sqrt(),
            hits,
            samples,
        }
    }
}

pub fn estimate_bad_probability(
    inst: &ConflictInstance,
    v: Vertex,
    p: f64,
    samples: usize,
    seed: u64,
) -> Result<Estimate> {
    estimate_bad_probability_with(inst, v, p, samples, seed, Execution::default())
}

/// Frequency of "pruned inventory of `v` is empty" over independent draws of
/// the inventories of `v` and its out-neighbors. Samples are split into
/// fixed chunks, each on its own ChaCha stream, so the result does not
/// depend on `exec`.
pub fn estimate_bad_probability_with(
    inst: &ConflictInstance,
    v: Vertex,
    p: f64,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<Estimate> {
    if samples == 0 {
        return Err(Error::Domain("need at least one sample".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("probability {p} not in [0, 1]")));
    }
    if v >= inst.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            vertex_count: inst.vertex_count(),
        });
    }

    // Slot 0 is v, slot i > 0 is the i-th distinct out-neighbor.
    let heads = inst.orientation().out_neighbors(v);
    let arcs: Vec<(Color, usize, Color)> = inst
        .orientation()
        .out_arcs(v)
        .iter()
        .map(|&e| {
            let a = inst.arc(e);
            let slot = 1 + heads
                .binary_search(&a.head)
                .expect("head is an out-neighbor");
            (a.c_tail, slot, a.c_head)
        })
        .collect();
    let k = inst.k();
    let slots = 1 + heads.len();

    let chunks = samples.div_ceil(SAMPLES_PER_CHUNK);
    let hits = exec::sum_range(chunks, exec, |chunk| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk as u64);
        let count = SAMPLES_PER_CHUNK.min(samples - chunk * SAMPLES_PER_CHUNK);
        let mut inv = Inventories::new(slots, k);
        let mut alive = vec![false; k];
        let mut hits = 0;
        for _ in 0..count {
            for slot in 0..slots {
                for c in 0..k {
                    if rng.gen::<f64>() < p {
                        inv.insert(slot, c);
                    } else {
                        inv.remove(slot, c);
                    }
                }
            }
            for (c, a) in alive.iter_mut().enumerate() {
                *a = inv.contains(0, c);
            }
            for &(c, slot, c_head) in &arcs {
                if inv.contains(slot, c_head) {
                    alive[c] = false;
                }
            }
            if !alive.iter().any(|&a| a) {
                hits += 1;
            }
        }
        hits
    });
    Ok(Estimate::from_counts(hits, samples))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Vertex 0 with four out-arcs to distinct leaves; tail colors 0,0,1,1.
    fn star() -> ConflictInstance {
        ConflictInstance::from_arcs(
            5,
            2,
            [(0, 1, 0, 0), (0, 2, 0, 1), (0, 3, 1, 0), (0, 4, 1, 1)],
        )
        .unwrap()
    }

    /// Exact Pr(B_0) on `star()` by enumerating all 2^10 inventory outcomes.
    fn star_exact(p: f64) -> f64 {
        let inst = star();
        let mut total = 0.0;
        for mask in 0u32..(1 << 10) {
            let has = |v: usize, c: usize| mask & (1 << (v * 2 + c)) != 0;
            let weight: f64 = (0..10)
                .map(|i| if mask & (1 << i) != 0 { p } else { 1.0 - p })
                .product();
            let survives = (0..2)
                .any(|c| has(0, c) && !inst.arcs().any(|a| a.c_tail == c && has(a.head, a.c_head)));
            if !survives {
                total += weight;
            }
        }
        total
    }

    #[test]
    fn b_counts_examples() {
        let gadget = ConflictInstance::from_arcs(2, 7, [(0, 1, 1, 5), (0, 1, 2, 5)]).unwrap();
        let bc = b_counts(&gadget, 0).unwrap();
        assert_eq!((bc.b[1], bc.b[2]), (1, 1));
        assert_eq!(bc.set(&[1, 2]), 1);
        assert_eq!(bc.set(&[1]), 1);

        let bc = b_counts(&star(), 0).unwrap();
        assert_eq!(bc.b, vec![2, 2]);
        assert!(bc.sets.keys().all(|s| s.len() == 1));
        assert_eq!(bc.b.iter().sum::<u64>(), 4);

        let leaf = b_counts(&star(), 3).unwrap();
        assert_eq!(leaf.b, vec![0, 0]);
        assert!(leaf.sets.is_empty());
    }

    #[test]
    fn elementary_symmetric_small() {
        assert_eq!(elementary_symmetric(&[1, 2, 3], 0), 1);
        assert_eq!(elementary_symmetric(&[1, 2, 3], 1), 6);
        assert_eq!(elementary_symmetric(&[1, 2, 3], 2), 11);
        assert_eq!(elementary_symmetric(&[1, 2, 3], 3), 6);
        assert_eq!(elementary_symmetric(&[1, 2, 3], 4), 0);
    }

    #[test]
    fn compositions_enumerate() {
        assert_eq!(
            compositions(3, 2),
            vec![vec![1, 1, 1], vec![1, 2], vec![2, 1]]
        );
        assert!(compositions(0, 3).is_empty());
    }

    #[test]
    fn claim_examples() {
        let check = claim_check(&star(), 0, &[1]).unwrap();
        assert_eq!(check.lhs, 4);
        assert_eq!(check.sigma, 4);
        assert_eq!(check.rhs, 8);
        assert!(check.holds);

        // Three parallel arcs with one head color: r = 3.
        let gadget =
            ConflictInstance::from_arcs(2, 4, [(0, 1, 0, 3), (0, 1, 1, 3), (0, 1, 2, 3)]).unwrap();
        assert_eq!(gadget.restrictiveness().r, 3);
        let check = claim_check(&gadget, 0, &[3]).unwrap();
        assert_eq!(check.lhs, 1);
        assert_eq!(check.rhs, 8 * 3);
        let check = claim_check(&gadget, 0, &[1, 2]).unwrap();
        // {0} then {1,2}; {1} then ... needs min > 1 and disjoint: {2,?} none.
        assert_eq!(check.lhs, 1);
        assert!(check.holds);

        assert!(claim_check(&gadget, 0, &[4]).is_err());
        assert!(claim_check(&gadget, 0, &[]).is_err());
        assert!(claim_check(&gadget, 0, &[0, 1]).is_err());
    }

    #[test]
    fn star_bounds() {
        let exact = star_exact(0.25);
        assert!(exact <= product_bound(&[2, 2], 0.25));
        assert!((product_bound(&[2, 2], 0.25) - 0.765625).abs() < 1e-12);
        assert!((unique_bad_event_bound(2, 4) - 0.7788007830714049).abs() < 1e-12);
        // Independent colors: (1 - p + p (1 - (1-p)^2))^2.
        let per_color: f64 = 0.75 + 0.25 * (1.0 - 0.75f64.powi(2));
        assert!((exact - per_color * per_color).abs() < 1e-12);
    }

    #[test]
    fn estimate_matches_exact_and_is_execution_independent() {
        let inst = star();
        let seq = estimate_bad_probability_with(&inst, 0, 0.25, 20_000, 11, Execution::Sequential)
            .unwrap();
        let par =
            estimate_bad_probability_with(&inst, 0, 0.25, 20_000, 11, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
        let exact = star_exact(0.25);
        assert!((seq.estimate - exact).abs() < 4.0 * seq.std_error);
    }

    #[test]
    fn estimate_edge_cases() {
        let inst = star();
        let zero = estimate_bad_probability(&inst, 0, 0.0, 100, 1).unwrap();
        assert_eq!(zero.estimate, 1.0);
        assert_eq!(zero.std_error, 0.0);
        let leaf = estimate_bad_probability(&inst, 2, 1.0, 100, 1).unwrap();
        assert_eq!(leaf.estimate, 0.0);
        assert!(estimate_bad_probability(&inst, 0, 0.5, 0, 1).is_err());
        assert!(estimate_bad_probability(&inst, 0, 1.5, 10, 1).is_err());
        assert!(estimate_bad_probability(&inst, 9, 0.5, 10, 1).is_err());
    }
}

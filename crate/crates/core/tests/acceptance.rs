//! End-to-end acceptance checks. Runs without the libtest harness so every
//! criterion prints one PASS/FAIL line; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scc_core::analytics::{
    claim_check, compositions, estimate_bad_probability, product_bound, unique_bad_event_bound,
};
use scc_core::bounds::{min_colors_bound, BoundMode};
use scc_core::generate::{gen_degenerate, random_conflicts, random_forest_family};
use scc_core::oracle::{adversarial_chi_con, backtracking_solve, chromatic_number};
use scc_core::reductions::{
    adapted_to_scc, coop_to_adapted, extract_cooperative, is_cooperative_coloring, proper_to_scc,
    GraphFamily,
};
use scc_core::solver::{bad_vertices, greedy_solve, prune, sample_inventories};
use scc_core::{
    degeneracy_order, moser_tardos_solve, Coloring, ConflictInstance, MultiGraph, Outcome,
    SolverConfig,
};

type Criterion = (&'static str, fn() -> Verdict, Duration);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn valid(inst: &ConflictInstance, col: &Coloring) -> bool {
    inst.verify(col).map(|v| v.is_empty()).unwrap_or(false)
}

fn random_simple_graph(n: usize, density: f64, rng: &mut impl Rng) -> MultiGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    MultiGraph::new(n, edges).unwrap()
}

fn exhaustive_solvable(inst: &ConflictInstance) -> bool {
    let (n, k) = (inst.vertex_count(), inst.k());
    if n == 0 {
        return true;
    }
    (0..k.pow(n as u32)).any(|mut code| {
        let col = Coloring(
            (0..n)
                .map(|_| {
                    let c = code % k;
                    code /= k;
                    c
                })
                .collect(),
        );
        valid(inst, &col)
    })
}

fn prune_soundness() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut checked, mut failures) = (0, 0);
    for i in 0..1000u64 {
        let n = rng.gen_range(2..=50);
        let d = rng.gen_range(1..=5);
        let k = rng.gen_range(1..=8);
        let mu = rng.gen_range(1..=3);
        let g = gen_degenerate(n, d, i);
        let inst = random_conflicts(&g, k, Some(mu), i)
            .unwrap()
            .degeneracy_oriented();
        let p = rng.gen_range(0.3..0.95);
        let mut state = sample_inventories(&inst, p, &mut rng);
        prune(&inst, &mut state);
        for _ in 0..20 {
            if bad_vertices(&state).is_empty() {
                break;
            }
            state = sample_inventories(&inst, p, &mut rng);
            prune(&inst, &mut state);
        }
        if !bad_vertices(&state).is_empty() {
            continue;
        }
        checked += 1;
        for _ in 0..10 {
            let col = Coloring(
                (0..n)
                    .map(|v| {
                        *state
                            .pruned
                            .colors(v)
                            .collect::<Vec<_>>()
                            .choose(&mut rng)
                            .unwrap()
                    })
                    .collect(),
            );
            if !valid(&inst, &col) {
                failures += 1;
            }
        }
    }
    verdict(
        failures == 0 && checked > 0,
        format!("{checked} fully-inventoried states, {failures} invalid choices"),
    )
}

fn solver_at_the_bound() -> Verdict {
    let g = gen_degenerate(2000, 100, 2026);
    let d = degeneracy_order(&g).d;
    let delta = g.max_degree();
    let k = min_colors_bound(d, delta, BoundMode::Degenerate).unwrap();
    let mut solved = 0;
    let mut bad_colorings = 0;
    for seed in 0..100 {
        let inst = random_conflicts(&g, k, None, seed).unwrap();
        let config = SolverConfig {
            max_rounds: Some(1000 * inst.vertex_count()),
            ..SolverConfig::with_seed(seed)
        };
        let report = moser_tardos_solve(&inst, &config).unwrap();
        if report.outcome == Outcome::Solved {
            solved += 1;
            if !valid(&inst, report.coloring.as_ref().unwrap()) {
                bad_colorings += 1;
            }
        }
    }
    verdict(
        solved >= 99 && bad_colorings == 0,
        format!("d={d} delta={delta} k={k}: {solved}/100 solved, {bad_colorings} invalid"),
    )
}

fn greedy_regime() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures = 0;
    for i in 0..500u64 {
        let n = rng.gen_range(1..=60);
        let g = gen_degenerate(n, rng.gen_range(0..=6), i);
        let mu = rng.gen_range(1..=3);
        let probe = random_conflicts(&g, 1, None, i)
            .unwrap()
            .degeneracy_oriented();
        // Enough colors for the out-degree of the worst multiplicity.
        let k = mu * probe.max_out_degree() + 1 + rng.gen_range(0..3);
        let inst = random_conflicts(&g, k, Some(mu), i)
            .unwrap()
            .degeneracy_oriented();
        assert!(inst.k() > inst.max_out_degree());
        match greedy_solve(&inst) {
            Ok(col) if valid(&inst, &col) => {}
            _ => failures += 1,
        }
    }
    verdict(failures == 0, format!("500 instances, {failures} failures"))
}

fn bound_reproduction() -> Verdict {
    let got = [
        min_colors_bound(1, 3, BoundMode::MaxDegree),
        min_colors_bound(3, 8, BoundMode::Degenerate),
        min_colors_bound(2, 4, BoundMode::Multiplicity { mu: 2 }),
    ]
    .map(Result::unwrap);
    verdict(got == [4, 8, 30], format!("got {got:?}, want [4, 8, 30]"))
}

fn oracle_equivalence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut mismatches = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=3);
        let arcs: Vec<_> = if n < 2 {
            Vec::new()
        } else {
            (0..rng.gen_range(0..=6))
                .map(|_| {
                    let u = rng.gen_range(0..n);
                    let v = (u + rng.gen_range(1..n)) % n;
                    (u, v, rng.gen_range(0..k), rng.gen_range(0..k))
                })
                .collect()
        };
        let inst = ConflictInstance::from_arcs(n, k, arcs).unwrap();
        let found = backtracking_solve(&inst);
        let agrees = match &found {
            Some(col) => valid(&inst, col) && exhaustive_solvable(&inst),
            None => !exhaustive_solvable(&inst),
        };
        if !agrees {
            mismatches += 1;
        }
    }
    verdict(
        mismatches == 0,
        format!("500 instances, {mismatches} mismatches"),
    )
}

fn adversarial_chi_con_values() -> Verdict {
    let mut wrong = Vec::new();
    let edge = MultiGraph::new(2, [(0, 1)]).unwrap();
    if adversarial_chi_con(&edge, 5) != Ok(Some(2)) {
        wrong.push("single edge".to_string());
    }
    if adversarial_chi_con(&MultiGraph::empty(4), 5) != Ok(Some(1)) {
        wrong.push("edgeless".to_string());
    }
    for m in 1..=8 {
        let g = MultiGraph::new(2, vec![(0, 1); m]).unwrap();
        let want = (1..).find(|k| k * k > m).unwrap();
        let got = adversarial_chi_con(&g, 5);
        if got != Ok(Some(want)) {
            wrong.push(format!("m={m}: got {got:?}, want {want}"));
        }
    }
    verdict(
        wrong.is_empty(),
        if wrong.is_empty() {
            "all 10 cases exact".into()
        } else {
            wrong.join("; ")
        },
    )
}

fn brute_force_cooperative(fam: &GraphFamily) -> bool {
    let (n, t) = (fam.vertex_count(), fam.members().len());
    (0..t.pow(n as u32)).any(|mut code| {
        let mut sets = vec![Vec::new(); t];
        for v in 0..n {
            sets[code % t].push(v);
            code /= t;
        }
        is_cooperative_coloring(fam, &sets)
    })
}

fn reduction_fidelity() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut proper_mismatch = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=7);
        let g = random_simple_graph(n, rng.gen_range(0.2..0.9), &mut rng);
        let chi = chromatic_number(&g);
        for k in 2..=4 {
            let solvable = backtracking_solve(&proper_to_scc(&g, k).unwrap()).is_some();
            if solvable != (chi <= k) {
                proper_mismatch += 1;
            }
        }
    }
    let mut coop_mismatch = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        let members = (0..rng.gen_range(1..=3))
            .map(|_| random_simple_graph(n, rng.gen_range(0.2..0.9), &mut rng))
            .collect();
        let fam = GraphFamily::new(n, members).unwrap();
        let inst = adapted_to_scc(&coop_to_adapted(&fam));
        let via_reduction = match backtracking_solve(&inst) {
            Some(col) => is_cooperative_coloring(&fam, &extract_cooperative(&fam, &col).unwrap()),
            None => false,
        };
        if via_reduction != brute_force_cooperative(&fam) {
            coop_mismatch += 1;
        }
    }
    verdict(
        proper_mismatch == 0 && coop_mismatch == 0,
        format!(
            "proper: {proper_mismatch}/600 mismatches, cooperative: {coop_mismatch}/100 mismatches"
        ),
    )
}

fn probability_bound() -> Verdict {
    let star = ConflictInstance::from_arcs(
        5,
        2,
        [(0, 1, 0, 0), (0, 2, 0, 1), (0, 3, 1, 0), (0, 4, 1, 1)],
    )
    .unwrap();
    let est = estimate_bad_probability(&star, 0, 0.25, 100_000, 8).unwrap();
    let exp_bound = unique_bad_event_bound(2, 4);
    let product = product_bound(&[2, 2], 0.25);
    let slack = 3.0 * est.std_error;
    verdict(
        est.estimate <= exp_bound + slack && est.estimate <= product + slack,
        format!(
            "estimate {:.4} (se {:.4}) vs exp bound {exp_bound:.4}, product bound {product:.4}",
            est.estimate, est.std_error
        ),
    )
}

fn claim_checker() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut checks, mut violations) = (0u64, 0u64);
    for i in 0..1000u64 {
        let n = rng.gen_range(2..=8);
        let k = rng.gen_range(1..=6);
        let g = gen_degenerate(n, rng.gen_range(1..=4), i);
        let inst = random_conflicts(&g, k, Some(rng.gen_range(1..=3)), i)
            .unwrap()
            .degeneracy_oriented();
        let r = inst.restrictiveness().r;
        for v in 0..n {
            for t in 1..=k {
                for parts in compositions(t, r).into_iter().filter(|p| p.len() <= 3) {
                    checks += 1;
                    if !claim_check(&inst, v, &parts).unwrap().holds {
                        violations += 1;
                    }
                }
            }
        }
    }
    verdict(
        violations == 0,
        format!("{checks} checks, {violations} violations"),
    )
}

fn restrictiveness_equivalence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut unique, mut disagreements) = (0, 0);
    for i in 0..1000u64 {
        let n = rng.gen_range(2..=10);
        let k = rng.gen_range(1..=5);
        let g = gen_degenerate(n, rng.gen_range(1..=4), i);
        let mut inst = random_conflicts(&g, k, Some(rng.gen_range(1..=4)), i).unwrap();
        if rng.gen_bool(0.5) {
            inst = inst.degeneracy_oriented();
        }
        let holds = inst.is_uniquely_restrictive().holds;
        unique += usize::from(holds);
        if holds != (inst.restrictiveness().r == 1) {
            disagreements += 1;
        }
    }
    verdict(
        disagreements == 0,
        format!("1000 instances ({unique} uniquely restrictive), {disagreements} disagreements"),
    )
}

fn cooperative_end_to_end() -> Verdict {
    let mut ok = 0;
    for seed in 0..100 {
        let fam = random_forest_family(49, 300, 16, seed).unwrap();
        let inst = adapted_to_scc(&coop_to_adapted(&fam));
        let report = moser_tardos_solve(&inst, &SolverConfig::with_seed(seed)).unwrap();
        let Some(col) = report.coloring else { continue };
        if let Ok(sets) = extract_cooperative(&fam, &col) {
            if is_cooperative_coloring(&fam, &sets) {
                ok += 1;
            }
        }
    }
    verdict(
        ok >= 95,
        format!("{ok}/100 seeds produced a valid cooperative coloring"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("prune soundness", prune_soundness, Duration::from_secs(30)),
        (
            "solver at the degenerate bound",
            solver_at_the_bound,
            Duration::from_secs(300),
        ),
        ("greedy regime", greedy_regime, Duration::MAX),
        ("bound reproduction", bound_reproduction, Duration::MAX),
        (
            "backtracking vs enumeration",
            oracle_equivalence,
            Duration::MAX,
        ),
        (
            "adversarial chi_con",
            adversarial_chi_con_values,
            Duration::MAX,
        ),
        ("reduction fidelity", reduction_fidelity, Duration::MAX),
        (
            "bad-event probability bound",
            probability_bound,
            Duration::MAX,
        ),
        ("disjoint-tuple claim", claim_checker, Duration::MAX),
        (
            "restrictiveness equivalence",
            restrictiveness_equivalence,
            Duration::MAX,
        ),
        (
            "cooperative coloring end to end",
            cooperative_end_to_end,
            Duration::from_secs(120),
        ),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let v = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let pass = v.pass && in_time;
        failed += usize::from(!pass);
        let timing = if in_time {
            format!("{:.2}s", elapsed.as_secs_f64())
        } else {
            format!(
                "{:.2}s, over the {}s budget",
                elapsed.as_secs_f64(),
                budget.as_secs()
            )
        };
        println!(
            "criterion {:>2} {:<34} {} ({}; {timing})",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    if failed == 0 {
        println!("acceptance: all 11 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 11 criteria failed");
        ExitCode::FAILURE
    }
}

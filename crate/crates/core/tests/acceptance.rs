//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Extended checks that need an external solver run only when
//! `HYPERVIS_SAT_SOLVER` is set; otherwise they print a SKIP line.

use std::time::{Duration, Instant};

use hypervis::constructions::*;
use hypervis::cube::VertexSet;
use hypervis::encode::{decode_model, emit_cnf, EncodeConfig, Pattern};
use hypervis::solve::*;
use hypervis::visibility::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use VariantKind::*;

type Check = std::result::Result<String, String>;

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn run(&mut self, id: &str, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Check) {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.1?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS [{id}] {name}: {detail} ({elapsed:.2?})"),
            Err(why) => {
                println!("FAIL [{id}] {name}: {why} ({elapsed:.2?})");
                self.failures.push(id.to_string());
            }
        }
    }

    fn skip(&self, id: &str, name: &str, why: &str) {
        println!("SKIP [{id}] {name}: {why}");
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set(h: u32, rows: &[&str]) -> VertexSet {
    VertexSet::parse_text(&rows.join("\n"), Some(h)).unwrap()
}

fn outer6() -> VertexSet {
    set(4, &["0000", "0001", "0110", "0111", "1010", "1011"])
}

fn dual8() -> VertexSet {
    set(
        4,
        &[
            "0000", "0001", "0010", "0101", "1010", "1101", "1110", "1111",
        ],
    )
}

fn exact_values() -> Check {
    let table = [
        (Mutual, [2, 3, 5, 9]),
        (Outer, [2, 2, 4, 6]),
        (Dual, [2, 3, 4, 8]),
    ];
    let mut slowest = Duration::ZERO;
    for (kind, vals) in table {
        for h in 1..=4u32 {
            let t = Instant::now();
            let r = exact_number(h, kind).map_err(|e| e.to_string())?;
            let took = t.elapsed();
            slowest = slowest.max(took);
            ensure(r.size == vals[h as usize - 1], || {
                format!(
                    "{kind} h={h}: got {}, expected {}",
                    r.size,
                    vals[h as usize - 1]
                )
            })?;
            ensure(r.is_optimal(), || {
                format!("{kind} h={h} not certified optimal")
            })?;
            ensure(verify(&r.best_set, kind.into()).ok, || {
                format!("{kind} h={h} witness fails")
            })?;
            ensure(took < Duration::from_secs(300), || {
                format!("{kind} h={h} took {took:?}")
            })?;
        }
    }
    Ok(format!("12 values reproduced, slowest {slowest:.2?}"))
}

fn dual_gap() -> Check {
    let mut count = 0;
    let mut found7 = None;
    for mask in 0u64..1 << 16 {
        if mask.count_ones() != 7 {
            continue;
        }
        count += 1;
        let s = VertexSet::from_mask(4, mask).unwrap();
        if verify(&s, Dual.into()).ok {
            found7 = Some(s);
            break;
        }
    }
    ensure(found7.is_none(), || {
        format!("dual set of size 7 exists: {found7:?}")
    })?;
    ensure(count == 11440, || format!("checked {count} subsets"))?;
    let s8 = dual8();
    ensure(s8.len() == 8 && verify(&s8, Dual.into()).ok, || {
        "size-8 dual set fails".into()
    })?;
    Ok("0 of 11440 size-7 subsets are dual; a size-8 dual set exists".into())
}

fn total_routes() -> Check {
    let expected = [2u64, 4, 4, 8, 16];
    for h in 3..=7u32 {
        let alpha = alpha_halved_bruteforce(h).map_err(|e| e.to_string())? as u64;
        let tab = KnownValues::embedded()
            .exact(h, Total)
            .ok_or("missing table value")?;
        let e = expected[h as usize - 3];
        ensure(2 * alpha == e && tab == e, || {
            format!("h={h}: 2*alpha={}, table={tab}, expected {e}", 2 * alpha)
        })?;
        let (_, witness) = max_independent_halved(h).map_err(|e| e.to_string())?;
        let doubled = witness
            .union(&witness.map(|v| v.flip(0)))
            .map_err(|e| e.to_string())?;
        ensure(
            doubled.len() as u64 == e && verify(&doubled, Total.into()).ok,
            || format!("h={h}: doubled independent set is not a total set of size {e}"),
        )?;
    }
    let ham = hamming_code(3).map_err(|e| e.to_string())?;
    ensure(ham.length() == 7 && ham.words().len() == 16, || {
        "Hamming code shape".into()
    })?;
    let (ce, co) = parity_extend(&ham).map_err(|e| e.to_string())?;
    let m = ce.union(&co).map_err(|e| e.to_string())?;
    ensure(m.len() == 32, || {
        format!("parity extension has {} words", m.len())
    })?;
    ensure(verify(&m, Total.into()).ok, || {
        "parity extension is not total".into()
    })?;
    ensure(verify_by_paths(&m, Total.into()).ok, || {
        "path oracle rejects parity extension".into()
    })?;
    ensure(KnownValues::embedded().exact(8, Total) == Some(32), || {
        "table total(8)".into()
    })?;
    Ok(
        "2*alpha = 2,4,4,8,16 for h=3..7; Hamming(7,4) extension is a total set of size 32 in Q_8"
            .into(),
    )
}

fn sat_round(
    h: u32,
    kind: VariantKind,
    opt: usize,
    solve: &dyn Fn(&hypervis::encode::CnfFormula) -> SolveOutcome,
) -> std::result::Result<(), String> {
    let f = emit_cnf(&EncodeConfig::new(h, kind).with_target(opt)).map_err(|e| e.to_string())?;
    let model = match solve(&f) {
        SolveOutcome::Sat(m) => m,
        other => return Err(format!("{kind} h={h} ell={opt}: {}", other.label())),
    };
    let m = decode_model(&f, &model).map_err(|e| e.to_string())?;
    ensure(m.len() >= opt && verify(&m, kind.into()).ok, || {
        format!(
            "{kind} h={h}: decoded set of size {} does not verify",
            m.len()
        )
    })?;
    let g =
        emit_cnf(&EncodeConfig::new(h, kind).with_target(opt + 1)).map_err(|e| e.to_string())?;
    match solve(&g) {
        SolveOutcome::Unsat => Ok(()),
        other => Err(format!("{kind} h={h} ell={}: {}", opt + 1, other.label())),
    }
}

fn sat_pipeline() -> Check {
    let cases = [
        (3, Mutual, 5),
        (3, Total, 2),
        (3, Outer, 4),
        (3, Dual, 4),
        (4, Mutual, 9),
        (4, Total, 4),
        (4, Outer, 6),
        (4, Dual, 8),
    ];
    for (h, kind, opt) in cases {
        sat_round(h, kind, opt, &dpll_solve)?;
    }
    Ok("8 (h, variant) pairs: sat at the optimum, unsat one above".into())
}

fn sat_pipeline_q5_internal() -> Check {
    for (kind, opt) in [(Mutual, 16), (Outer, 12), (Dual, 10), (Total, 4)] {
        sat_round(5, kind, opt, &|f| {
            dpll_solve_with(f, &SolverConfig::activity()).0
        })?;
    }
    Ok("h=5 mutual 16, outer 12, dual 10, total 4 with the internal solver".into())
}

fn sat_pipeline_external(ext: &ExternalSolver) -> Check {
    let solve = |f: &hypervis::encode::CnfFormula| ext.solve(f).unwrap_or(SolveOutcome::Unknown);
    for (kind, opt) in [(Mutual, 16), (Outer, 12), (Dual, 10), (Total, 4)] {
        sat_round(5, kind, opt, &solve)?;
    }
    sat_round(6, Mutual, 32, &solve)?;
    Ok("h=5 all variants and h=6 mutual with the external solver".into())
}

fn layer_theorems() -> Check {
    let mut checks = 0;
    for h in 3..=8u32 {
        for i in 1..=h {
            let l = layer_pair_set(h, i, 0).map_err(|e| e.to_string())?;
            ensure(verify(&l, Outer.into()).ok, || {
                format!("L_{i} of Q_{h} not outer")
            })?;
            checks += 1;
            for (gap, good) in [(1, false), (2, false), (3, true)] {
                // gap 1 needs i <= h-2, gap 2 and 3 need i <= h-3
                let legal = if gap == 1 { i + 2 <= h } else { i + 3 <= h };
                if !legal {
                    continue;
                }
                let s = layer_pair_set(h, i, gap).map_err(|e| e.to_string())?;
                ensure(verify(&s, Mutual.into()).ok == good, || {
                    format!("L_{i} + L_{} in Q_{h}: expected mutual={good}", i + gap)
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} layer sets for 3 <= h <= 8"))
}

fn characterizations() -> Check {
    let mut compared = 0u64;
    let mut agree = |m: &VertexSet| -> std::result::Result<(), String> {
        let t1 = verify_by_paths(m, Total.into()).ok;
        let t2 = verify_total_by_distance(m).ok;
        let d1 = verify(m, Dual.into()).ok;
        let d2 = verify_dual_by_characterization(m).ok;
        compared += 1;
        ensure(t1 == t2 && d1 == d2, || {
            format!("disagreement on {m:?}: total {t1}/{t2}, dual {d1}/{d2}")
        })
    };
    for h in 1..=4u32 {
        for mask in 0u64..1 << (1u32 << h) {
            agree(&VertexSet::from_mask(h, mask).unwrap())?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for h in [5u32, 6] {
        for k in 0..1000 {
            let p = [0.03, 0.08, 0.15, 0.3, 0.5][k % 5];
            let m = VertexSet::from_indices(h, (0..1u32 << h).filter(|_| rng.gen_bool(p))).unwrap();
            agree(&m)?;
        }
    }
    Ok(format!("{compared} sets, zero disagreements"))
}

fn example_sets() -> Check {
    let f1 = outer6();
    let f2 = dual8();
    ensure(verify(&f1, Outer.into()).ok, || {
        "size-6 example is not outer".into()
    })?;
    ensure(verify(&f2, Dual.into()).ok, || {
        "size-8 example is not dual".into()
    })?;
    let mo = exact_number(4, Outer).map_err(|e| e.to_string())?.size;
    let md = exact_number(4, Dual).map_err(|e| e.to_string())?.size;
    ensure(f1.len() == mo, || {
        format!("outer optimum {mo} != {}", f1.len())
    })?;
    ensure(f2.len() == md, || {
        format!("dual optimum {md} != {}", f2.len())
    })?;
    Ok("outer set of size 6 and dual set of size 8 are optimal in Q_4".into())
}

fn bound_formulas() -> Check {
    ensure(mv_lower_bound(8) == Ok(84), || "mv_lower_bound(8)".into())?;
    let expect = [
        (Mutual, [118, 236, 472, 944]),
        (Outer, [80, 160, 320, 640]),
        (Dual, [58, 116, 232, 464]),
    ];
    for (kind, vals) in expect {
        for (k, &v) in vals.iter().enumerate() {
            let h = 8 + k as u32;
            let got = doubling_upper_bound(h, kind).map_err(|e| e.to_string())?;
            ensure(got == v, || format!("{kind} h={h}: {got} != {v}"))?;
        }
    }
    Ok("lower bound 84 and 12 doubling upper bounds".into())
}

fn two_phase_q4() -> Check {
    let mut notes = Vec::new();
    for kind in VariantKind::ALL {
        let opt = exact_number(4, kind).map_err(|e| e.to_string())?.size;
        for pattern in [Pattern::AdjacentPair, Pattern::K12Star] {
            let r = two_phase_search(4, kind, pattern).map_err(|e| e.to_string())?;
            ensure(
                r.phase1.is_optimal() && !pattern.occurs_in(&r.phase1.best_set),
                || format!("{kind}/{pattern}: phase 1 not an exhaustive pattern-free optimum"),
            )?;
            ensure(r.best.size == opt && r.best.is_optimal(), || {
                format!(
                    "{kind}/{pattern}: two-phase gives {}, optimum {opt}",
                    r.best.size
                )
            })?;
            if let Some(p2) = &r.phase2 {
                let presets = pattern.canonical_instance(4).unwrap();
                ensure(p2.size == 0 || presets.is_subset(&p2.best_set), || {
                    format!("{kind}/{pattern}: phase 2 lost its presets")
                })?;
            }
            notes.push(format!("{kind}/{pattern} {}", r.phase1.size));
        }
    }
    let star = two_phase_search(4, Mutual, Pattern::K12Star).map_err(|e| e.to_string())?;
    ensure(star.phase2.as_ref().map(|p| p.size) == Some(9), || {
        "star presets do not reach 9".into()
    })?;
    Ok(format!("phase-1 optima: {}", notes.join(", ")))
}

fn two_phase_q7(ext: &ExternalSolver) -> Check {
    let opts = SearchOptions {
        solver: SolverChoice::External(ext.clone()),
        time_limit: None,
    };
    let mut out = Vec::new();
    for (kind, pattern, want) in [
        (Outer, Pattern::AdjacentPair, 36),
        (Dual, Pattern::K12Star, 16),
        (Mutual, Pattern::K12Star, 49),
    ] {
        let r = two_phase_search_with(7, kind, pattern, Some(usize::MAX), &opts)
            .map_err(|e| e.to_string())?;
        ensure(r.phase1.size == want && r.phase1.is_optimal(), || {
            format!(
                "{kind}/{pattern}: phase 1 gives {} ({}), expected {want}",
                r.phase1.size, r.phase1.status
            )
        })?;
        out.push(format!("{kind} {want}"));
    }
    Ok(format!("Q_7 phase-1 optima {}", out.join(", ")))
}

fn heuristic_floors() -> Check {
    let mut out = Vec::new();
    for (kind, seeds, floor) in [
        (Mutual, Seeds::PresetLayers, 84),
        (Outer, Seeds::Antipode, 70),
        (Dual, Seeds::Antipode, 32),
    ] {
        let opts = HeuristicOptions {
            search: SearchOptions::default().with_time_limit(Duration::from_secs(20)),
            path_cap: None,
        };
        let r = heuristic_search_with(8, kind, seeds, &opts).map_err(|e| e.to_string())?;
        ensure(verify(&r.best_set, kind.into()).ok, || {
            format!("{kind}: reported set fails")
        })?;
        ensure(r.size >= floor && r.size == r.best_set.len(), || {
            format!("{kind}: size {} below floor {floor}", r.size)
        })?;
        out.push(format!("{kind} {} (floor {floor})", r.size));
    }
    Ok(format!("Q_8 verified sets: {}", out.join(", ")))
}

fn main() {
    let mut gate = Gate {
        failures: Vec::new(),
    };
    let ext = ExternalSolver::from_env();
    let mins = |m: u64| Some(Duration::from_secs(60 * m));

    gate.run("1", "exact small values", mins(20), exact_values);
    gate.run("2", "dual non-monotonicity in Q_4", mins(1), dual_gap);
    gate.run("3", "total values by two routes", mins(2), total_routes);
    gate.run("4", "SAT pipeline h=3,4", mins(10), sat_pipeline);
    gate.run(
        "4+",
        "SAT pipeline h=5 (internal solver)",
        None,
        sat_pipeline_q5_internal,
    );
    match &ext {
        Some(e) => gate.run("4x", "SAT pipeline h=5,6 (external solver)", None, || {
            sat_pipeline_external(e)
        }),
        None => gate.skip(
            "4x",
            "SAT pipeline h=5,6 (external solver)",
            "HYPERVIS_SAT_SOLVER not set",
        ),
    }
    gate.run("5", "layer theorems", mins(2), layer_theorems);
    gate.run("6", "characterization equivalence", None, characterizations);
    gate.run("7", "example sets are optimal", None, example_sets);
    gate.run("8", "bound formulas", None, bound_formulas);
    gate.run("9", "two-phase search on Q_4", None, two_phase_q4);
    match &ext {
        Some(e) => gate.run(
            "9x",
            "two-phase phase-1 optima on Q_7 (external solver)",
            None,
            || two_phase_q7(e),
        ),
        None => gate.skip(
            "9x",
            "two-phase phase-1 optima on Q_7",
            "HYPERVIS_SAT_SOLVER not set",
        ),
    }
    gate.run(
        "10",
        "heuristic sets meet constructive floors",
        None,
        heuristic_floors,
    );

    if gate.failures.is_empty() {
        println!("acceptance: all criteria passed");
    } else {
        println!("acceptance: failed {}", gate.failures.join(", "));
        std::process::exit(1);
    }
}

//! Exact, two-phase and heuristic searches for large visibility sets.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::time::{Duration, Instant};

use serde_json::json;

use super::dpll::{dpll_solve_with, SolveOutcome, SolverConfig};
use super::external::ExternalSolver;
use super::symmetry::{lex_less, orderly, Automorphisms};
use crate::constructions::{constructive_set, layer_pair_set, KnownValues};
use crate::cube::{check_dim, VertexSet, MAX_PATH_ENUM_DISTANCE};
use crate::encode::{decode_model, emit_cnf, EncodeConfig, Pattern};
use crate::error::{Error, Result};
use crate::visibility::{verify, VariantKind};

/// Largest dimension searched by exhaustive enumeration.
pub const MAX_EXHAUSTIVE_DIM: u32 = 4;
/// Largest dimension accepted by [`exact_number`].
pub const MAX_EXACT_DIM: u32 = 6;
/// Largest dimension accepted by [`heuristic_search`].
pub const MAX_HEURISTIC_DIM: u32 = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Optimal,
    LowerBoundOnly,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Optimal => "optimal",
            Status::LowerBoundOnly => "lower-bound-only",
        })
    }
}

/// Why a size is known to be optimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Every orbit (or every candidate superset) was examined.
    Exhaustive,
    /// The model for `|M| ≥ ell` was refuted at the given path cap.
    UnsatAt { ell: usize, path_cap: u32 },
    /// Both the restricted and the preset phase were refuted at `ell`.
    TwoPhase { ell: usize },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Exhaustive => f.write_str("exhaustive"),
            Certificate::UnsatAt { ell, path_cap } => write!(f, "unsat-at-{ell} (s={path_cap})"),
            Certificate::TwoPhase { ell } => write!(f, "two-phase refutation at {ell}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub h: u32,
    pub variant: VariantKind,
    pub best_set: VertexSet,
    pub size: usize,
    pub status: Status,
    pub certificate: Option<Certificate>,
    pub elapsed: Duration,
    pub nodes: u64,
    pub conflicts: u64,
}

impl SearchResult {
    fn new(h: u32, variant: VariantKind, best_set: VertexSet, start: Instant) -> Result<Self> {
        if !verify(&best_set, variant.into()).ok {
            return Err(Error::Solver(format!(
                "search produced a set of size {} that fails {variant} verification",
                best_set.len()
            )));
        }
        Ok(SearchResult {
            h,
            variant,
            size: best_set.len(),
            best_set,
            status: Status::LowerBoundOnly,
            certificate: None,
            elapsed: start.elapsed(),
            nodes: 0,
            conflicts: 0,
        })
    }

    fn optimal(mut self, certificate: Certificate) -> Self {
        self.status = Status::Optimal;
        self.certificate = Some(certificate);
        self
    }

    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }

    pub fn elapsed_ms(&self) -> u128 {
        self.elapsed.as_millis()
    }

    /// `key=value` lines for the sidecar file.
    pub fn metadata(&self) -> String {
        let cert = self
            .certificate
            .map_or("none".to_string(), |c| c.to_string());
        format!(
            "h={}\nvariant={}\nsize={}\nstatus={}\ncertificate={}\nelapsed_ms={}\nnodes={}\nconflicts={}\n",
            self.h,
            self.variant,
            self.size,
            self.status,
            cert,
            self.elapsed_ms(),
            self.nodes,
            self.conflicts
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "h": self.h,
            "variant": self.variant.name(),
            "size": self.size,
            "status": self.status.to_string(),
            "elapsed_ms": self.elapsed_ms() as u64,
        })
    }

    /// Write the set to `path` and the metadata to `path` + `.meta`.
    pub fn write_files(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.best_set.to_text())?;
        std::fs::write(sidecar_path(path), self.metadata())?;
        Ok(())
    }
}

pub fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta");
    s.into()
}

/// Parse a `key=value` sidecar.
pub fn read_metadata(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)?;
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: i + 1,
            msg: format!("expected key=value, got {line:?}"),
        })?;
        out.insert(k.to_string(), v.to_string());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverChoice {
    Internal(SolverConfig),
    External(ExternalSolver),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub solver: SolverChoice,
    /// Wall-clock budget for the whole search.
    pub time_limit: Option<Duration>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            solver: SolverChoice::Internal(SolverConfig::activity()),
            time_limit: None,
        }
    }
}

impl SearchOptions {
    /// The external solver from the environment if one is set, else the
    /// internal solver.
    pub fn from_env() -> Self {
        match ExternalSolver::from_env() {
            Some(ext) => SearchOptions {
                solver: SolverChoice::External(ext),
                time_limit: None,
            },
            None => SearchOptions::default(),
        }
    }

    pub fn with_time_limit(mut self, t: Duration) -> Self {
        self.time_limit = Some(t);
        self
    }
}

struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    fn remaining(&self) -> Option<Duration> {
        self.deadline
            .map(|d| d.saturating_duration_since(Instant::now()))
    }

    fn expired(&self) -> bool {
        self.remaining().is_some_and(|r| r.is_zero())
    }
}

fn run_solver(
    formula: &crate::encode::CnfFormula,
    opts: &SearchOptions,
    budget: &Budget,
) -> Result<(SolveOutcome, u64, u64)> {
    match &opts.solver {
        SolverChoice::Internal(cfg) => {
            let mut cfg = cfg.clone();
            if let Some(r) = budget.remaining() {
                cfg.time_limit = Some(cfg.time_limit.map_or(r, |t| t.min(r)));
            }
            let (out, stats) = dpll_solve_with(formula, &cfg);
            Ok((out, stats.decisions, stats.conflicts))
        }
        SolverChoice::External(ext) => {
            let mut ext = ext.clone();
            if let Some(r) = budget.remaining() {
                ext.timeout = Some(ext.timeout.map_or(r, |t| t.min(r)));
            }
            Ok((ext.solve(formula)?, 0, 0))
        }
    }
}

/// Best orbit representative over all subsets of `V(Q_h)`, optionally
/// excluding sets that contain `forbid`.
fn exhaustive_orbits(
    h: u32,
    kind: VariantKind,
    forbid: Option<Pattern>,
) -> Result<(VertexSet, u64)> {
    let autos = Automorphisms::new(h)?;
    let closed = kind.is_subset_closed();
    let ok = |mask: u64| verify(&VertexSet::from_mask(h, mask).expect("h <= 6"), kind.into()).ok;
    let reps = orderly(&autos, |mask| {
        let set = VertexSet::from_mask(h, mask).expect("h <= 6");
        if forbid.is_some_and(|p| p.occurs_in(&set)) {
            return false;
        }
        !closed || ok(mask)
    });
    let nodes = reps.len() as u64;
    let mut best = 0u64;
    for &mask in &reps {
        if !closed && !ok(mask) {
            continue;
        }
        let (a, b) = (mask.count_ones(), best.count_ones());
        if a > b || (a == b && lex_less(mask, best)) {
            best = mask;
        }
    }
    Ok((VertexSet::from_mask(h, best)?, nodes))
}

/// Best set containing `required`, by depth-first search over the other
/// vertices. `None` when no superset of `required` qualifies.
fn exhaustive_supersets(
    h: u32,
    kind: VariantKind,
    required: &VertexSet,
) -> Result<(Option<VertexSet>, u64)> {
    let free: Vec<u32> = (0..1u32 << h)
        .filter(|&i| !required.contains_index(i))
        .collect();
    let closed = kind.is_subset_closed();
    let mut best: Option<VertexSet> = None;
    let mut nodes = 0u64;
    let mut cur = required.clone();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        free: &[u32],
        cur: &mut VertexSet,
        kind: VariantKind,
        closed: bool,
        best: &mut Option<VertexSet>,
        nodes: &mut u64,
    ) {
        *nodes += 1;
        let ok = verify(cur, kind.into()).ok;
        if closed && !ok {
            return;
        }
        if ok && best.as_ref().is_none_or(|b| cur.len() > b.len()) {
            *best = Some(cur.clone());
        }
        for k in i..free.len() {
            if cur.len() + (free.len() - k) <= best.as_ref().map_or(0, |b| b.len()) {
                return;
            }
            cur.insert_index(free[k]);
            rec(k + 1, free, cur, kind, closed, best, nodes);
            cur.remove(crate::cube::Vertex::new(free[k], cur.dim()).expect("index in range"));
        }
    }
    rec(0, &free, &mut cur, kind, closed, &mut best, &mut nodes);
    Ok((best, nodes))
}

struct SatRun {
    best: VertexSet,
    refuted: Option<(usize, u32)>,
    unknown: bool,
    gave_up: bool,
    decisions: u64,
    conflicts: u64,
}

enum Probe {
    Found(VertexSet),
    Refuted,
    Unknown,
    GaveUp,
}

/// Find the largest `ℓ` for which `base` with target `ℓ` is satisfiable,
/// starting from the verified `floor`. Binary search between the floor and
/// `upper` followed by a refutation one above the answer, or a plain
/// step-by-step ascent when `ascending`.
fn sat_maximize(
    base: &EncodeConfig,
    floor: VertexSet,
    upper: usize,
    ascending: bool,
    opts: &SearchOptions,
    budget: &Budget,
) -> Result<SatRun> {
    let h = base.h;
    let order = 1usize << h;
    let cap_limit = h.clamp(2, MAX_PATH_ENUM_DISTANCE);
    let mut config = base.clone();
    let mut run = SatRun {
        best: floor,
        refuted: None,
        unknown: false,
        gave_up: false,
        decisions: 0,
        conflicts: 0,
    };
    let mut probe = |ell: usize, run: &mut SatRun| -> Result<Probe> {
        loop {
            if budget.expired() {
                return Ok(Probe::Unknown);
            }
            let f = emit_cnf(&config.clone().with_target(ell))?;
            let (out, d, c) = run_solver(&f, opts, budget)?;
            run.decisions += d;
            run.conflicts += c;
            match out {
                SolveOutcome::Unsat => {
                    run.refuted = Some((ell, config.path_cap));
                    return Ok(Probe::Refuted);
                }
                SolveOutcome::Unknown => return Ok(Probe::Unknown),
                SolveOutcome::Sat(model) => {
                    let set = decode_model(&f, &model)?;
                    if verify(&set, base.variant.into()).ok {
                        return Ok(Probe::Found(set));
                    }
                    // the path cap hid a blocked pair; widen it and retry
                    if config.path_cap >= cap_limit {
                        return Ok(Probe::GaveUp);
                    }
                    config.path_cap += 1;
                }
            }
        }
    };
    let mut hi = upper.min(order).max(run.best.len());
    loop {
        while run.best.len() < hi {
            let lo = run.best.len();
            let mid = if ascending {
                lo + 1
            } else {
                lo + (hi - lo).div_ceil(2)
            };
            match probe(mid, &mut run)? {
                Probe::Found(set) => {
                    hi = hi.max(set.len());
                    run.best = set;
                }
                Probe::Refuted => hi = mid - 1,
                Probe::Unknown => {
                    run.unknown = true;
                    return Ok(run);
                }
                Probe::GaveUp => {
                    run.gave_up = true;
                    return Ok(run);
                }
            }
        }
        if ascending {
            return Ok(run);
        }
        let next = run.best.len() + 1;
        if next > order || run.refuted.is_some_and(|(ell, _)| ell == next) {
            return Ok(run);
        }
        // confirm the upper end with an explicit refutation
        match probe(next, &mut run)? {
            Probe::Found(set) => {
                hi = order;
                run.best = set;
            }
            Probe::Refuted => return Ok(run),
            Probe::Unknown => {
                run.unknown = true;
                return Ok(run);
            }
            Probe::GaveUp => {
                run.gave_up = true;
                return Ok(run);
            }
        }
    }
}

fn sat_result(
    h: u32,
    kind: VariantKind,
    run: SatRun,
    start: Instant,
    optimal_cap: u32,
) -> Result<SearchResult> {
    let size = run.best.len();
    let refuted = run.refuted;
    let mut r = SearchResult::new(h, kind, run.best, start)?;
    r.nodes = run.decisions;
    r.conflicts = run.conflicts;
    if let Some((ell, cap)) = refuted {
        if ell == size + 1 && cap == optimal_cap && !run.unknown && !run.gave_up {
            r = r.optimal(Certificate::UnsatAt { ell, path_cap: cap });
        }
    }
    r.elapsed = start.elapsed();
    Ok(r)
}

fn doubling_guess(h: u32, kind: VariantKind) -> usize {
    let order = 1usize << h;
    KnownValues::embedded()
        .exact(h - 1, kind)
        .map_or(order, |v| (2 * v as usize).min(order))
}

/// The largest `kind` set of `Q_h` for `h ≤ 6`, with the internal solver.
pub fn exact_number(h: u32, kind: VariantKind) -> Result<SearchResult> {
    exact_number_with(h, kind, &SearchOptions::default())
}

/// Exhaustive orbit enumeration for `h ≤ 4`; binary search over the SAT
/// model at full path length for `h = 5, 6`.
pub fn exact_number_with(h: u32, kind: VariantKind, opts: &SearchOptions) -> Result<SearchResult> {
    check_dim(h)?;
    if h > MAX_EXACT_DIM {
        return Err(Error::OutOfRange {
            what: "dimension for exact search",
            value: h as i64,
            lo: 1,
            hi: MAX_EXACT_DIM as i64,
        });
    }
    let start = Instant::now();
    if h <= MAX_EXHAUSTIVE_DIM {
        let (set, nodes) = exhaustive_orbits(h, kind, None)?;
        let mut r = SearchResult::new(h, kind, set, start)?.optimal(Certificate::Exhaustive);
        r.nodes = nodes;
        r.elapsed = start.elapsed();
        return Ok(r);
    }
    let budget = Budget {
        deadline: opts.time_limit.map(|t| start + t),
    };
    let floor = constructive_set(h, kind)?;
    let base = EncodeConfig::new(h, kind);
    let run = sat_maximize(&base, floor, doubling_guess(h, kind), false, opts, &budget)?;
    sat_result(h, kind, run, start, h)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPhaseResult {
    pub pattern: Pattern,
    /// Optimum with the pattern forbidden.
    pub phase1: SearchResult,
    /// Optimum among sets containing the canonical instance, if run.
    pub phase2: Option<SearchResult>,
    pub best: SearchResult,
}

pub fn two_phase_search(h: u32, kind: VariantKind, pattern: Pattern) -> Result<TwoPhaseResult> {
    two_phase_search_with(h, kind, pattern, None, &SearchOptions::default())
}

/// Phase 1 maximizes with `pattern` forbidden. Phase 2, skipped when phase 1
/// already reaches `target`, presets the canonical instance of `pattern` and
/// drops the prohibition. Any set larger than the phase-1 optimum contains
/// the pattern, and by symmetry a canonical copy of it.
pub fn two_phase_search_with(
    h: u32,
    kind: VariantKind,
    pattern: Pattern,
    target: Option<usize>,
    opts: &SearchOptions,
) -> Result<TwoPhaseResult> {
    check_dim(h)?;
    let start = Instant::now();
    let budget = Budget {
        deadline: opts.time_limit.map(|t| start + t),
    };
    let cap = h.clamp(2, MAX_PATH_ENUM_DISTANCE);
    let exhaustive = h <= MAX_EXHAUSTIVE_DIM;

    let phase1 = if exhaustive {
        let (set, nodes) = exhaustive_orbits(h, kind, Some(pattern))?;
        let mut r = SearchResult::new(h, kind, set, start)?.optimal(Certificate::Exhaustive);
        r.nodes = nodes;
        r
    } else {
        let base = EncodeConfig::new(h, kind)
            .with_path_cap(cap)
            .forbid(pattern);
        let c = constructive_set(h, kind)?;
        let floor = if pattern.occurs_in(&c) {
            VertexSet::new(h)?
        } else {
            c
        };
        let run = sat_maximize(&base, floor, 1 << h, false, opts, &budget)?;
        sat_result(h, kind, run, start, h)?
    };

    let instance = pattern.canonical_instance(h).ok();
    let skip = target.is_some_and(|t| phase1.size >= t);
    let phase2 = match (&instance, skip) {
        (Some(presets), false) => {
            let p2_start = Instant::now();
            let r = if exhaustive {
                let (set, nodes) = exhaustive_supersets(h, kind, presets)?;
                let mut r =
                    SearchResult::new(h, kind, set.unwrap_or(VertexSet::new(h)?), p2_start)?
                        .optimal(Certificate::Exhaustive);
                r.nodes = nodes;
                r
            } else {
                let base = EncodeConfig::new(h, kind)
                    .with_path_cap(cap)
                    .with_presets(presets.clone());
                let floor = if verify(presets, kind.into()).ok {
                    presets.clone()
                } else {
                    VertexSet::new(h)?
                };
                let run = sat_maximize(&base, floor, 1 << h, false, opts, &budget)?;
                sat_result(h, kind, run, p2_start, h)?
            };
            Some(r)
        }
        _ => None,
    };

    let mut best = match &phase2 {
        Some(p2) if p2.size > phase1.size => p2.clone(),
        _ => phase1.clone(),
    };
    let complete = match (&phase2, &instance) {
        (Some(p2), _) => phase1.is_optimal() && p2.is_optimal(),
        // the pattern cannot occur, so phase 1 already covers everything
        (None, None) => phase1.is_optimal(),
        (None, Some(_)) => false,
    };
    best.status = Status::LowerBoundOnly;
    best.certificate = None;
    if complete {
        let ell = best.size + 1;
        best = best.optimal(Certificate::TwoPhase { ell });
    }
    best.nodes = phase1.nodes + phase2.as_ref().map_or(0, |p| p.nodes);
    best.conflicts = phase1.conflicts + phase2.as_ref().map_or(0, |p| p.conflicts);
    best.elapsed = start.elapsed();
    Ok(TwoPhaseResult {
        pattern,
        phase1,
        phase2,
        best,
    })
}

/// Extra constraints that steer the heuristic search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Seeds {
    /// Preset `L_{⌊h/2⌋−1} ∪ L_{⌊h/2⌋+2}` (or the constructive set when that
    /// union is not a valid set for the variant).
    PresetLayers,
    /// Force `M` to be closed under antipodes.
    Antipode,
}

impl fmt::Display for Seeds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Seeds::PresetLayers => "preset-layers",
            Seeds::Antipode => "antipode",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeuristicOptions {
    pub search: SearchOptions,
    /// Initial path cap; defaults to 4 for `h ≥ 8` and 5 below.
    pub path_cap: Option<u32>,
}

pub fn heuristic_search(h: u32, kind: VariantKind, seeds: Seeds) -> Result<SearchResult> {
    heuristic_search_with(h, kind, seeds, &HeuristicOptions::default())
}

/// Grow a verified set from the constructive floor by asking for one more
/// vertex at a time under the seed constraints and a short path cap. Each
/// decoded set is checked at unlimited distance; a failure widens the cap.
pub fn heuristic_search_with(
    h: u32,
    kind: VariantKind,
    seeds: Seeds,
    opts: &HeuristicOptions,
) -> Result<SearchResult> {
    check_dim(h)?;
    if h > MAX_HEURISTIC_DIM {
        return Err(Error::OutOfRange {
            what: "dimension for heuristic search",
            value: h as i64,
            lo: 1,
            hi: MAX_HEURISTIC_DIM as i64,
        });
    }
    let start = Instant::now();
    let floor = constructive_set(h, kind)?;
    if h == 1 {
        return SearchResult::new(h, kind, floor, start);
    }
    let cap_limit = h.min(MAX_PATH_ENUM_DISTANCE);
    let s = opts
        .path_cap
        .unwrap_or(if h >= 8 { 4 } else { 5 })
        .clamp(2, cap_limit);
    let mut config = EncodeConfig::new(h, kind).with_path_cap(s);
    match seeds {
        Seeds::PresetLayers => {
            let layers = (h >= 5)
                .then(|| layer_pair_set(h, h / 2 - 1, 3))
                .transpose()?
                .filter(|p| verify(p, kind.into()).ok);
            config.presets = Some(layers.unwrap_or_else(|| floor.clone()));
        }
        Seeds::Antipode => config.antipode_closure = true,
    }
    let budget = Budget {
        deadline: opts.search.time_limit.map(|t| start + t),
    };
    let upper = crate::constructions::bounds(h, kind)?
        .best_upper()
        .map_or(1 << h, |u| u as usize);
    let run = sat_maximize(&config, floor, upper, true, &opts.search, &budget)?;
    let mut r = SearchResult::new(h, kind, run.best, start)?;
    r.nodes = run.decisions;
    r.conflicts = run.conflicts;
    r.elapsed = start.elapsed();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use VariantKind::*;

    #[test]
    fn exhaustive_small_values() {
        for (kind, vals) in [
            (Mutual, [2, 3, 5]),
            (Outer, [2, 2, 4]),
            (Dual, [2, 3, 4]),
            (Total, [2, 2, 2]),
        ] {
            for h in 1..=3 {
                let r = exact_number(h, kind).unwrap();
                assert_eq!(r.size, vals[h as usize - 1], "{kind} h={h}");
                assert!(r.is_optimal());
                assert_eq!(r.certificate, Some(Certificate::Exhaustive));
            }
        }
    }

    #[test]
    fn exact_rejects_large_dims() {
        assert!(exact_number(7, Mutual).is_err());
    }

    #[test]
    fn supersets_respect_presets() {
        let p = Pattern::AdjacentPair.canonical_instance(3).unwrap();
        let (best, _) = exhaustive_supersets(3, Mutual, &p).unwrap();
        let best = best.unwrap();
        assert!(p.is_subset(&best));
        assert!(verify(&best, Mutual.into()).ok);
        // total sets cannot hold two vertices at distance 2
        let star = Pattern::K12Star.canonical_instance(3).unwrap();
        assert_eq!(exhaustive_supersets(3, Total, &star).unwrap().0, None);
    }

    #[test]
    fn sidecar_round_trip() {
        let r = exact_number(3, Mutual).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("q3.txt");
        r.write_files(&path).unwrap();
        let back =
            VertexSet::parse_text(&std::fs::read_to_string(&path).unwrap(), Some(3)).unwrap();
        assert_eq!(back, r.best_set);
        let meta = read_metadata(&sidecar_path(&path)).unwrap();
        assert_eq!(meta["size"], "5");
        assert_eq!(meta["status"], "optimal");
        assert_eq!(meta["certificate"], "exhaustive");
        let j = r.to_json();
        for key in ["h", "variant", "size", "status", "elapsed_ms"] {
            assert!(j.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn sat_search_matches_exhaustive_on_q3() {
        let budget = Budget { deadline: None };
        for kind in VariantKind::ALL {
            let exact = exact_number(3, kind).unwrap().size;
            let run = sat_maximize(
                &EncodeConfig::new(3, kind),
                VertexSet::new(3).unwrap(),
                8,
                false,
                &SearchOptions::default(),
                &budget,
            )
            .unwrap();
            assert_eq!(run.best.len(), exact, "{kind}");
            assert_eq!(run.refuted, Some((exact + 1, 3)));
        }
    }

    #[test]
    fn heuristic_small() {
        for kind in VariantKind::ALL {
            for seeds in [Seeds::PresetLayers, Seeds::Antipode] {
                let r = heuristic_search(5, kind, seeds).unwrap();
                assert!(verify(&r.best_set, kind.into()).ok);
                assert!(r.size >= constructive_set(5, kind).unwrap().len());
                assert_eq!(r.status, Status::LowerBoundOnly);
            }
        }
    }
}

//! A small complete CDCL solver: two watched literals, first-UIP learning,
//! learnt-clause reduction, and either fixed or activity-based branching.

use std::time::{Duration, Instant};

use crate::encode::CnfFormula;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Satisfying assignment indexed by `var − 1`.
    Sat(Vec<bool>),
    Unsat,
    /// Budget exhausted or solver gave up.
    Unknown,
}

impl SolveOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveOutcome::Sat(_))
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, SolveOutcome::Unsat)
    }

    pub fn model(&self) -> Option<&[bool]> {
        match self {
            SolveOutcome::Sat(m) => Some(m),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SolveOutcome::Sat(_) => "sat",
            SolveOutcome::Unsat => "unsat",
            SolveOutcome::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Branching {
    /// Lowest-index unassigned variable, false first; no restarts.
    #[default]
    LowestIndex,
    /// VSIDS with phase saving and Luby restarts.
    Activity,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolverConfig {
    pub branching: Branching,
    pub max_conflicts: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl SolverConfig {
    pub fn activity() -> Self {
        SolverConfig {
            branching: Branching::Activity,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
    pub learned: u64,
    pub restarts: u64,
}

/// Solve with the default configuration (lowest-index branching, no budget).
pub fn dpll_solve(formula: &CnfFormula) -> SolveOutcome {
    dpll_solve_with(formula, &SolverConfig::default()).0
}

pub fn dpll_solve_with(formula: &CnfFormula, config: &SolverConfig) -> (SolveOutcome, SolveStats) {
    solve_clauses(formula.num_vars(), formula.clauses(), config)
}

/// Solve raw DIMACS clauses over variables `1..=num_vars`.
pub fn solve_clauses<'a, I>(
    num_vars: u32,
    clauses: I,
    config: &SolverConfig,
) -> (SolveOutcome, SolveStats)
where
    I: IntoIterator<Item = &'a [i32]>,
{
    let mut s = Solver::new(num_vars as usize, config);
    for c in clauses {
        if !s.add_input_clause(c) {
            return (SolveOutcome::Unsat, s.stats);
        }
    }
    let outcome = s.run();
    (outcome, s.stats)
}

type Lit = u32;
const NO_REASON: u32 = u32::MAX;

fn to_lit(l: i32) -> Lit {
    (l.unsigned_abs() - 1) * 2 + (l < 0) as u32
}

fn var(l: Lit) -> usize {
    (l >> 1) as usize
}

struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    deleted: bool,
    activity: f64,
}

struct VarHeap {
    heap: Vec<u32>,
    pos: Vec<i32>,
}

impl VarHeap {
    fn new(n: usize) -> Self {
        VarHeap {
            heap: Vec::with_capacity(n),
            pos: vec![-1; n],
        }
    }

    fn contains(&self, v: usize) -> bool {
        self.pos[v] >= 0
    }

    // ties go to the lower index so the order is fully deterministic
    fn before(a: u32, b: u32, act: &[f64]) -> bool {
        let (x, y) = (act[a as usize], act[b as usize]);
        x > y || (x == y && a < b)
    }

    fn up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let p = (i - 1) / 2;
            if !Self::before(v, self.heap[p], act) {
                break;
            }
            self.heap[i] = self.heap[p];
            self.pos[self.heap[i] as usize] = i as i32;
            i = p;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i as i32;
    }

    fn down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        loop {
            let l = 2 * i + 1;
            if l >= self.heap.len() {
                break;
            }
            let r = l + 1;
            let c = if r < self.heap.len() && Self::before(self.heap[r], self.heap[l], act) {
                r
            } else {
                l
            };
            if !Self::before(self.heap[c], v, act) {
                break;
            }
            self.heap[i] = self.heap[c];
            self.pos[self.heap[i] as usize] = i as i32;
            i = c;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i as i32;
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.heap.push(v as u32);
        self.pos[v] = self.heap.len() as i32 - 1;
        self.up(self.heap.len() - 1, act);
    }

    fn bumped(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            self.up(self.pos[v] as usize, act);
        }
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.pos[top as usize] = -1;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = 0;
            self.down(0, act);
        }
        Some(top as usize)
    }
}

fn luby(mut i: u64) -> u64 {
    // 1 1 2 1 1 2 4 1 1 2 ...
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < i + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != i {
        size = (size - 1) >> 1;
        seq -= 1;
        i %= size;
    }
    1 << seq
}

struct Solver {
    n: usize,
    clauses: Vec<Clause>,
    watches: Vec<Vec<u32>>,
    value: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    seen: Vec<bool>,
    branching: Branching,
    cursor: usize,
    activity: Vec<f64>,
    var_inc: f64,
    heap: VarHeap,
    phase: Vec<bool>,
    cla_inc: f64,
    num_learnt: usize,
    max_learnt: usize,
    max_conflicts: Option<u64>,
    deadline: Option<Instant>,
    stats: SolveStats,
}

impl Solver {
    fn new(n: usize, config: &SolverConfig) -> Self {
        let activity = vec![0.0; n];
        let mut heap = VarHeap::new(n);
        if config.branching == Branching::Activity {
            for v in 0..n {
                heap.insert(v, &activity);
            }
        }
        Solver {
            n,
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * n],
            value: vec![0; n],
            level: vec![0; n],
            reason: vec![NO_REASON; n],
            trail: Vec::with_capacity(n),
            trail_lim: Vec::new(),
            qhead: 0,
            seen: vec![false; n],
            branching: config.branching,
            cursor: 0,
            activity,
            var_inc: 1.0,
            heap,
            phase: vec![false; n],
            cla_inc: 1.0,
            num_learnt: 0,
            max_learnt: 0,
            max_conflicts: config.max_conflicts,
            deadline: config.time_limit.map(|t| Instant::now() + t),
            stats: SolveStats::default(),
        }
    }

    fn lit_value(&self, l: Lit) -> i8 {
        let v = self.value[var(l)];
        if l & 1 == 1 {
            -v
        } else {
            v
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn enqueue(&mut self, l: Lit, reason: u32) {
        let v = var(l);
        self.value[v] = if l & 1 == 1 { -1 } else { 1 };
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    /// Add an input clause at level 0; false means the formula is unsat.
    fn add_input_clause(&mut self, c: &[i32]) -> bool {
        let mut lits: Vec<Lit> = c.iter().map(|&l| to_lit(l)).collect();
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            return true;
        }
        lits.retain(|&l| self.lit_value(l) != -1);
        if lits.iter().any(|&l| self.lit_value(l) == 1) {
            return true;
        }
        match lits.len() {
            0 => false,
            1 => {
                self.enqueue(lits[0], NO_REASON);
                self.propagate().is_none()
            }
            _ => {
                self.attach(lits, false);
                true
            }
        }
    }

    fn attach(&mut self, lits: Vec<Lit>, learnt: bool) -> u32 {
        let ci = self.clauses.len() as u32;
        self.watches[lits[0] as usize].push(ci);
        self.watches[lits[1] as usize].push(ci);
        self.clauses.push(Clause {
            lits,
            learnt,
            deleted: false,
            activity: 0.0,
        });
        ci
    }

    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = p ^ 1;
            let mut ws = std::mem::take(&mut self.watches[false_lit as usize]);
            let (mut i, mut j) = (0, 0);
            let mut conflict = None;
            while i < ws.len() {
                let ci = ws[i];
                i += 1;
                let clause = &mut self.clauses[ci as usize];
                if clause.deleted {
                    continue;
                }
                if clause.lits[0] == false_lit {
                    clause.lits.swap(0, 1);
                }
                let first = clause.lits[0];
                let val = |l: Lit| {
                    let v = self.value[var(l)];
                    if l & 1 == 1 {
                        -v
                    } else {
                        v
                    }
                };
                if val(first) == 1 {
                    ws[j] = ci;
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..clause.lits.len() {
                    if val(clause.lits[k]) != -1 {
                        clause.lits.swap(1, k);
                        self.watches[clause.lits[1] as usize].push(ci);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = ci;
                j += 1;
                if val(first) == -1 {
                    conflict = Some(ci);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first, ci);
                }
            }
            ws.truncate(j);
            self.watches[false_lit as usize] = ws;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        if self.branching == Branching::Activity {
            self.heap.bumped(v, &self.activity);
        }
    }

    fn bump_clause(&mut self, ci: u32) {
        let c = &mut self.clauses[ci as usize];
        if !c.learnt {
            return;
        }
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for c in self.clauses.iter_mut().filter(|c| c.learnt) {
                c.activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    /// First-UIP conflict analysis; returns the learnt clause (asserting
    /// literal first) and the backjump level.
    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, u32) {
        let mut learnt: Vec<Lit> = vec![0];
        let mut pending = 0;
        let mut p: Option<Lit> = None;
        let mut idx = self.trail.len();
        let current = self.decision_level();
        loop {
            self.bump_clause(confl);
            let skip = usize::from(p.is_some());
            let nlits = self.clauses[confl as usize].lits.len();
            for k in skip..nlits {
                let q = self.clauses[confl as usize].lits[k];
                let v = var(q);
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump_var(v);
                    if self.level[v] == current {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[var(self.trail[idx])] {
                    break;
                }
            }
            let pl = self.trail[idx];
            self.seen[var(pl)] = false;
            pending -= 1;
            p = Some(pl);
            if pending == 0 {
                break;
            }
            confl = self.reason[var(pl)];
        }
        learnt[0] = p.unwrap() ^ 1;

        // drop literals implied by the rest of the clause
        let marked: Vec<Lit> = learnt[1..].to_vec();
        let mut keep = vec![learnt[0]];
        for &q in &marked {
            let r = self.reason[var(q)];
            let redundant = r != NO_REASON
                && self.clauses[r as usize].lits[1..]
                    .iter()
                    .all(|&w| self.seen[var(w)] || self.level[var(w)] == 0);
            if !redundant {
                keep.push(q);
            }
        }
        for &q in &marked {
            self.seen[var(q)] = false;
        }
        let mut learnt = keep;

        let mut bt = 0;
        if learnt.len() > 1 {
            let mut best = 1;
            for k in 2..learnt.len() {
                if self.level[var(learnt[k])] > self.level[var(learnt[best])] {
                    best = k;
                }
            }
            learnt.swap(1, best);
            bt = self.level[var(learnt[1])];
        }
        (learnt, bt)
    }

    fn cancel_until(&mut self, lvl: u32) {
        if self.decision_level() <= lvl {
            return;
        }
        let start = self.trail_lim[lvl as usize];
        for k in (start..self.trail.len()).rev() {
            let l = self.trail[k];
            let v = var(l);
            self.phase[v] = l & 1 == 0;
            self.value[v] = 0;
            self.reason[v] = NO_REASON;
            match self.branching {
                Branching::LowestIndex => self.cursor = self.cursor.min(v),
                Branching::Activity => self.heap.insert(v, &self.activity),
            }
        }
        self.trail.truncate(start);
        self.trail_lim.truncate(lvl as usize);
        self.qhead = start;
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        match self.branching {
            Branching::LowestIndex => {
                while self.cursor < self.n && self.value[self.cursor] != 0 {
                    self.cursor += 1;
                }
                (self.cursor < self.n).then(|| self.cursor as u32 * 2 + 1)
            }
            Branching::Activity => loop {
                let v = self.heap.pop(&self.activity)?;
                if self.value[v] == 0 {
                    return Some(v as u32 * 2 + u32::from(!self.phase[v]));
                }
            },
        }
    }

    fn locked(&self, ci: u32) -> bool {
        let l = self.clauses[ci as usize].lits[0];
        self.reason[var(l)] == ci && self.lit_value(l) == 1
    }

    fn reduce_db(&mut self) {
        let mut learnt: Vec<u32> = (0..self.clauses.len() as u32)
            .filter(|&ci| {
                let c = &self.clauses[ci as usize];
                c.learnt && !c.deleted && c.lits.len() > 2
            })
            .collect();
        learnt.sort_by(|&a, &b| {
            self.clauses[a as usize]
                .activity
                .total_cmp(&self.clauses[b as usize].activity)
                .then(a.cmp(&b))
        });
        let target = learnt.len() / 2;
        let mut removed = 0;
        for &ci in &learnt {
            if removed >= target {
                break;
            }
            if !self.locked(ci) {
                let c = &mut self.clauses[ci as usize];
                c.deleted = true;
                c.lits = Vec::new();
                removed += 1;
            }
        }
        self.num_learnt -= removed;
    }

    fn out_of_budget(&self) -> bool {
        if self
            .max_conflicts
            .is_some_and(|m| self.stats.conflicts >= m)
        {
            return true;
        }
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn run(&mut self) -> SolveOutcome {
        if self.propagate().is_some() {
            return SolveOutcome::Unsat;
        }
        self.max_learnt = self.clauses.len() / 3 + 2000;
        let mut restart_round = 0u64;
        let mut restart_budget = 100 * luby(0);
        let mut since_restart = 0u64;
        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                since_restart += 1;
                if self.decision_level() == 0 {
                    return SolveOutcome::Unsat;
                }
                let (learnt, bt) = self.analyze(confl);
                self.cancel_until(bt);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], NO_REASON);
                } else {
                    let asserting = learnt[0];
                    let ci = self.attach(learnt, true);
                    self.bump_clause(ci);
                    self.num_learnt += 1;
                    self.enqueue(asserting, ci);
                }
                self.stats.learned += 1;
                self.var_inc /= 0.95;
                self.cla_inc /= 0.999;
                if self.out_of_budget() {
                    return SolveOutcome::Unknown;
                }
                if self.branching == Branching::Activity && since_restart >= restart_budget {
                    self.cancel_until(0);
                    self.stats.restarts += 1;
                    restart_round += 1;
                    restart_budget = 100 * luby(restart_round);
                    since_restart = 0;
                }
            } else {
                if self.num_learnt >= self.max_learnt + self.trail.len() {
                    self.reduce_db();
                    self.max_learnt += self.max_learnt / 10;
                }
                if self.stats.decisions & 1023 == 1023 && self.out_of_budget() {
                    return SolveOutcome::Unknown;
                }
                match self.pick_branch() {
                    None => return SolveOutcome::Sat(self.value.iter().map(|&v| v == 1).collect()),
                    Some(l) => {
                        self.stats.decisions += 1;
                        self.trail_lim.push(self.trail.len());
                        self.enqueue(l, NO_REASON);
                    }
                }
            }
        }
    }
}

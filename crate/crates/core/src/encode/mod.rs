//! ILP and SAT models for the visibility variants.
//!
//! Polarity differs between the two models: in the ILP `x_v = 1` means
//! `v ∈ M`, in the CNF `x_v = false` means `v ∈ M`.

mod cnf;
mod counter;
mod ilp;

pub use cnf::{decode_model, CnfFormula, VarRole};
pub use counter::{sequential_counter_at_most_k, CounterEncoding};
pub use ilp::{emit_ilp, IlpModel, IlpVar, LinearConstraint, Sense};

use std::fmt;
use std::str::FromStr;

use crate::cube::{
    check_dim, for_each_shortest_path_interior, Vertex, VertexSet, MAX_PATH_ENUM_DISTANCE,
};
use crate::error::{Error, Result};
use crate::visibility::VariantKind;

/// Forbidden substructures of `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    /// two adjacent members
    AdjacentPair,
    /// a member with two member neighbors (an induced `K_{1,2}`)
    K12Star,
}

impl Pattern {
    pub fn name(self) -> &'static str {
        match self {
            Pattern::AdjacentPair => "adjacent-pair",
            Pattern::K12Star => "k12-star",
        }
    }

    /// Canonical instance around `0^h`: the center plus its neighbors on
    /// the last coordinates (`0…0`, `0…01`, `0…010`).
    pub fn canonical_instance(self, h: u32) -> Result<VertexSet> {
        check_dim(h)?;
        let need = match self {
            Pattern::AdjacentPair => 1,
            Pattern::K12Star => 2,
        };
        if h < need {
            return Err(Error::Precondition(format!(
                "{} needs h >= {need}",
                self.name()
            )));
        }
        let center = Vertex::zero(h)?;
        let mut set = VertexSet::new(h)?;
        set.insert(center);
        for k in 0..need {
            set.insert(center.flip(h - 1 - k));
        }
        Ok(set)
    }

    /// Does `m` contain an instance of the pattern?
    pub fn occurs_in(self, m: &VertexSet) -> bool {
        m.iter().any(|u| {
            let member_nbrs = u.neighbors().filter(|&w| m.contains(w)).count();
            match self {
                Pattern::AdjacentPair => member_nbrs >= 1,
                Pattern::K12Star => member_nbrs >= 2,
            }
        })
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adjacent-pair" => Ok(Pattern::AdjacentPair),
            "k12-star" => Ok(Pattern::K12Star),
            other => Err(Error::Parse {
                line: 0,
                msg: format!("unknown pattern {other:?}"),
            }),
        }
    }
}

/// Everything that determines an emitted model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodeConfig {
    pub h: u32,
    pub variant: VariantKind,
    /// Required `|M| ≥ ℓ` (SAT only).
    pub target: Option<usize>,
    /// Only pairs at distance `≤ path_cap` are encoded.
    pub path_cap: u32,
    /// Vertices forced into `M`.
    pub presets: Option<VertexSet>,
    pub forbidden: Vec<Pattern>,
    /// `|M ∩ N[u]| ≤ cap` for every `u ∈ M`.
    pub neighborhood_cap: Option<usize>,
    /// Every vertex ending in 0 is in `M` iff its antipode is.
    pub antipode_closure: bool,
    /// Emit `y_P ∨ ¬x_{z1} ∨ … ∨ ¬x_{zk}` alongside the forward implications.
    pub reverse_implications: bool,
}

impl EncodeConfig {
    /// Full-diameter model with no extra restrictions.
    pub fn new(h: u32, variant: VariantKind) -> Self {
        EncodeConfig {
            h,
            variant,
            target: None,
            path_cap: h.max(2),
            presets: None,
            forbidden: Vec::new(),
            neighborhood_cap: None,
            antipode_closure: false,
            reverse_implications: true,
        }
    }

    pub fn with_target(mut self, ell: usize) -> Self {
        self.target = Some(ell);
        self
    }

    pub fn with_path_cap(mut self, s: u32) -> Self {
        self.path_cap = s;
        self
    }

    pub fn with_presets(mut self, presets: VertexSet) -> Self {
        self.presets = Some(presets);
        self
    }

    pub fn forbid(mut self, p: Pattern) -> Self {
        if !self.forbidden.contains(&p) {
            self.forbidden.push(p);
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_dim(self.h)?;
        let max_cap = self.h.max(2);
        if self.path_cap < 2 || self.path_cap > max_cap {
            return Err(Error::OutOfRange {
                what: "path cap",
                value: self.path_cap as i64,
                lo: 2,
                hi: max_cap as i64,
            });
        }
        if self.variant != VariantKind::Total {
            let longest = self.path_cap.min(self.h);
            if longest > MAX_PATH_ENUM_DISTANCE {
                return Err(Error::PathCapacity {
                    distance: longest,
                    limit: MAX_PATH_ENUM_DISTANCE,
                });
            }
        }
        let order = 1usize << self.h;
        if let Some(ell) = self.target {
            if ell > order {
                return Err(Error::OutOfRange {
                    what: "target size",
                    value: ell as i64,
                    lo: 0,
                    hi: order as i64,
                });
            }
        }
        if let Some(p) = &self.presets {
            if p.dim() != self.h {
                return Err(Error::DimensionMismatch {
                    left: self.h,
                    right: p.dim(),
                });
            }
            for pat in &self.forbidden {
                if pat.occurs_in(p) {
                    return Err(Error::Precondition(format!(
                        "presets contain a forbidden {pat}"
                    )));
                }
            }
            if let Some(cap) = self.neighborhood_cap {
                for u in p.iter() {
                    let n = u.closed_neighborhood().intersection(p)?.len();
                    if n > cap {
                        return Err(Error::Precondition(format!(
                            "presets put {n} vertices in N[{u}], cap is {cap}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn header(&self) -> String {
        let mut s = format!(
            "hypervis h={} variant={} path_cap={}",
            self.h, self.variant, self.path_cap
        );
        if let Some(ell) = self.target {
            s.push_str(&format!(" ell={ell}"));
        }
        if let Some(p) = &self.presets {
            s.push_str(&format!(" presets={}", p.len()));
        }
        for pat in &self.forbidden {
            s.push_str(&format!(" forbid={pat}"));
        }
        if let Some(c) = self.neighborhood_cap {
            s.push_str(&format!(" neighborhood_cap={c}"));
        }
        if self.antipode_closure {
            s.push_str(" antipode_closure");
        }
        if !self.reverse_implications {
            s.push_str(" no_reverse_implications");
        }
        s
    }
}

/// Unordered pairs `u < v` with `2 ≤ d(u,v) ≤ cap`, in index order.
pub(crate) fn encoded_pairs(h: u32, cap: u32) -> impl Iterator<Item = (Vertex, Vertex)> {
    let n = 1u32 << h;
    (0..n).flat_map(move |a| {
        ((a + 1)..n).filter_map(move |b| {
            let d = (a ^ b).count_ones();
            (d >= 2 && d <= cap).then(|| (Vertex::from_raw(a, h), Vertex::from_raw(b, h)))
        })
    })
}

/// Build the CNF model for `config`.
///
/// Vertex variables come first (`x_v` is variable `v + 1`), then the path
/// indicators in pair order, then the cardinality registers.
pub fn emit_cnf(config: &EncodeConfig) -> Result<CnfFormula> {
    config.validate()?;
    let h = config.h;
    let n = 1usize << h;
    let k = config.target.map(|ell| n - ell);
    let mut f = CnfFormula::new();
    f.add_comment(config.header());
    for b in 0..n as u32 {
        f.new_var(VarRole::Vertex(Vertex::from_raw(b, h)));
    }
    let x = |v: Vertex| v.bits() as i32 + 1;

    if config.variant == VariantKind::Total {
        for (u, v) in encoded_pairs(h, 2) {
            f.add_clause(&[x(u), x(v)]);
        }
    } else {
        let mut clause = Vec::new();
        let mut ys = Vec::new();
        for (u, v) in encoded_pairs(h, config.path_cap) {
            ys.clear();
            let mut index = 0;
            let mut err = None;
            for_each_shortest_path_interior(u, v, |interior| {
                let y = f.new_var(VarRole::Path { u, v, index });
                index += 1;
                ys.push(y);
                for &z in interior {
                    f.add_clause(&[-y, x(z)]);
                }
                if config.reverse_implications {
                    clause.clear();
                    clause.push(y);
                    clause.extend(interior.iter().map(|&z| -x(z)));
                    f.add_clause(&clause);
                }
            })
            .unwrap_or_else(|e| err = Some(e));
            if let Some(e) = err {
                return Err(e);
            }
            let mut emit = |head: &[i32]| {
                clause.clear();
                clause.extend_from_slice(head);
                clause.extend_from_slice(&ys);
                f.add_clause(&clause);
            };
            match config.variant {
                VariantKind::Mutual => emit(&[x(u), x(v)]),
                VariantKind::Outer => {
                    emit(&[x(u)]);
                    emit(&[x(v)]);
                }
                VariantKind::Dual => {
                    emit(&[x(u), x(v)]);
                    emit(&[-x(u), -x(v)]);
                }
                VariantKind::Total => unreachable!(),
            }
        }
    }

    if let Some(k) = k {
        let lits: Vec<i32> = (1..=n as i32).collect();
        let first = f.num_vars() as i32 + 1;
        let enc = sequential_counter_at_most_k(&lits, k, first);
        let kk = k.max(1) as u32;
        f.new_vars(enc.aux_count, |t| VarRole::Counter {
            i: t / kk + 1,
            j: t % kk + 1,
        });
        for c in &enc.clauses {
            f.add_clause(c);
        }
    }

    if let Some(p) = &config.presets {
        for v in p.iter() {
            f.add_clause(&[-x(v)]);
        }
    }

    if config.antipode_closure {
        for b in 0..(n as u32 >> 1) {
            // last coordinate (bit h-1) is 0
            let u = Vertex::from_raw(b, h);
            let a = u.antipode();
            f.add_clause(&[-x(u), x(a)]);
            f.add_clause(&[x(u), -x(a)]);
        }
    }

    for pat in &config.forbidden {
        match pat {
            Pattern::AdjacentPair => {
                for (u, v) in all_edges(h) {
                    f.add_clause(&[x(u), x(v)]);
                }
            }
            Pattern::K12Star => {
                for (c, a, b) in all_stars(h) {
                    f.add_clause(&[x(a), x(c), x(b)]);
                }
            }
        }
    }

    if let Some(cap) = config.neighborhood_cap {
        for c in 0..n as u32 {
            let center = Vertex::from_raw(c, h);
            let mut lits = vec![-x(center)];
            lits.extend(center.neighbors().map(|w| -x(w)));
            let first = f.num_vars() as i32 + 1;
            let enc = sequential_counter_at_most_k(&lits, cap, first);
            let kk = cap.max(1) as u32;
            f.new_vars(enc.aux_count, |t| VarRole::Neighborhood {
                center,
                i: t / kk + 1,
                j: t % kk + 1,
            });
            for cl in &enc.clauses {
                // guard: only binding when the center is in M
                let mut guarded = cl.clone();
                guarded.push(x(center));
                f.add_clause(&guarded);
            }
        }
    }
    Ok(f)
}

pub(crate) fn all_edges(h: u32) -> impl Iterator<Item = (Vertex, Vertex)> {
    (0..(1u32 << h)).flat_map(move |a| {
        (0..h)
            .filter(move |b| a >> b & 1 == 0)
            .map(move |b| (Vertex::from_raw(a, h), Vertex::from_raw(a | 1 << b, h)))
    })
}

/// `(center, leaf, leaf)` for every induced `K_{1,2}`.
pub(crate) fn all_stars(h: u32) -> impl Iterator<Item = (Vertex, Vertex, Vertex)> {
    (0..(1u32 << h)).flat_map(move |c| {
        let center = Vertex::from_raw(c, h);
        (0..h)
            .flat_map(move |i| ((i + 1)..h).map(move |j| (center, center.flip(i), center.flip(j))))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_instances() {
        let s = Pattern::K12Star.canonical_instance(7).unwrap();
        let names: Vec<String> = s.iter().map(|v| v.to_text()).collect();
        assert_eq!(names.len(), 3);
        for n in ["0000000", "0000001", "0000010"] {
            assert!(names.contains(&n.to_string()));
        }
        let s = Pattern::AdjacentPair.canonical_instance(7).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.contains("0000001".parse().unwrap()));
        assert!(Pattern::K12Star.occurs_in(&Pattern::K12Star.canonical_instance(4).unwrap()));
        assert!(!Pattern::K12Star.occurs_in(&Pattern::AdjacentPair.canonical_instance(4).unwrap()));
    }

    #[test]
    fn validation() {
        assert!(EncodeConfig::new(3, VariantKind::Mutual).validate().is_ok());
        assert!(EncodeConfig::new(3, VariantKind::Mutual)
            .with_path_cap(4)
            .validate()
            .is_err());
        assert!(EncodeConfig::new(3, VariantKind::Mutual)
            .with_path_cap(1)
            .validate()
            .is_err());
        assert!(EncodeConfig::new(3, VariantKind::Mutual)
            .with_target(9)
            .validate()
            .is_err());
        assert!(matches!(
            EncodeConfig::new(9, VariantKind::Mutual).validate(),
            Err(Error::PathCapacity { .. })
        ));
        assert!(EncodeConfig::new(9, VariantKind::Mutual)
            .with_path_cap(5)
            .validate()
            .is_ok());
        assert!(EncodeConfig::new(9, VariantKind::Total).validate().is_ok());
        let bad = EncodeConfig::new(4, VariantKind::Mutual)
            .with_presets(Pattern::K12Star.canonical_instance(4).unwrap())
            .forbid(Pattern::AdjacentPair);
        assert!(bad.validate().is_err());
        let mut crowded = EncodeConfig::new(4, VariantKind::Mutual)
            .with_presets("0000".parse::<Vertex>().unwrap().closed_neighborhood());
        crowded.neighborhood_cap = Some(4);
        assert!(crowded.validate().is_err());
    }

    #[test]
    fn cnf_counts_for_q3() {
        let f = emit_cnf(&EncodeConfig::new(3, VariantKind::Mutual)).unwrap();
        // 12 pairs at distance 2 (2 paths each), 4 at distance 3 (6 paths each)
        assert_eq!(
            f.count_role(|r| matches!(r, VarRole::Path { .. })),
            12 * 2 + 4 * 6
        );
        assert_eq!(f.num_vars(), 8 + 48);
        // forward: 1 per path at d=2, 2 per path at d=3; reverse: 1 per path; one pair clause
        assert_eq!(f.num_clauses(), 24 + 48 + 48 + 16);
        let g = emit_cnf(&EncodeConfig {
            reverse_implications: false,
            ..EncodeConfig::new(3, VariantKind::Mutual)
        })
        .unwrap();
        assert_eq!(g.num_clauses(), 24 + 48 + 16);
    }

    #[test]
    fn total_cnf_has_no_paths() {
        for h in 2..=6 {
            let f = emit_cnf(&EncodeConfig::new(h, VariantKind::Total)).unwrap();
            assert_eq!(f.num_vars(), 1 << h);
            assert_eq!(
                f.num_clauses(),
                (1usize << (h - 1)) * (h * (h - 1) / 2) as usize
            );
        }
    }

    #[test]
    fn cnf_is_deterministic() {
        let cfg = EncodeConfig::new(4, VariantKind::Dual)
            .with_target(7)
            .with_presets(Pattern::K12Star.canonical_instance(4).unwrap());
        assert_eq!(
            emit_cnf(&cfg).unwrap().to_dimacs(),
            emit_cnf(&cfg).unwrap().to_dimacs()
        );
    }

    #[test]
    fn pattern_clause_counts() {
        let base = emit_cnf(&EncodeConfig::new(3, VariantKind::Mutual))
            .unwrap()
            .num_clauses();
        let adj =
            emit_cnf(&EncodeConfig::new(3, VariantKind::Mutual).forbid(Pattern::AdjacentPair))
                .unwrap()
                .num_clauses();
        assert_eq!(adj - base, 12);
        let star = emit_cnf(&EncodeConfig::new(3, VariantKind::Mutual).forbid(Pattern::K12Star))
            .unwrap()
            .num_clauses();
        assert_eq!(star - base, 8 * 3);
        let anti = emit_cnf(&EncodeConfig {
            antipode_closure: true,
            ..EncodeConfig::new(3, VariantKind::Mutual)
        })
        .unwrap()
        .num_clauses();
        assert_eq!(anti - base, 8);
    }
}

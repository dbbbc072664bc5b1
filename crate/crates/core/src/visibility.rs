//! Visibility checks for the four set variants.
//!
//! The core primitive is a reachability sweep inside the interval `I(u,v)`:
//! starting at `u`, only steps that move one coordinate closer to `v` are
//! taken, and vertices of `M \ {u, v}` are never entered.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cube::{same_dim, Vertex, VertexSet};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantKind {
    Mutual,
    Total,
    Outer,
    Dual,
}

impl VariantKind {
    pub const ALL: [VariantKind; 4] = [
        VariantKind::Mutual,
        VariantKind::Total,
        VariantKind::Outer,
        VariantKind::Dual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VariantKind::Mutual => "mutual",
            VariantKind::Total => "total",
            VariantKind::Outer => "outer",
            VariantKind::Dual => "dual",
        }
    }

    /// Whether every subset of a feasible set is feasible.
    pub fn is_subset_closed(self) -> bool {
        !matches!(self, VariantKind::Dual)
    }

    /// Does the pair `(u, v)` have to be visible, given endpoint membership?
    #[inline]
    pub fn requires(self, u_in: bool, v_in: bool) -> bool {
        match self {
            VariantKind::Mutual => u_in && v_in,
            VariantKind::Total => true,
            VariantKind::Outer => u_in || v_in,
            VariantKind::Dual => u_in == v_in,
        }
    }
}

impl fmt::Display for VariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VariantKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mutual" => Ok(VariantKind::Mutual),
            "total" => Ok(VariantKind::Total),
            "outer" => Ok(VariantKind::Outer),
            "dual" => Ok(VariantKind::Dual),
            other => Err(Error::Parse {
                line: 0,
                msg: format!("unknown variant {other:?}"),
            }),
        }
    }
}

/// A variant plus an optional cap on the distance of checked pairs.
///
/// With a cap, pairs farther apart than the cap are not checked, so a pass
/// is only a non-refutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Variant {
    pub kind: VariantKind,
    max_check_distance: Option<u32>,
}

impl Variant {
    pub fn new(kind: VariantKind) -> Self {
        Variant {
            kind,
            max_check_distance: None,
        }
    }

    pub fn relaxed(kind: VariantKind, max_check_distance: u32) -> Result<Self> {
        if max_check_distance < 2 {
            return Err(Error::OutOfRange {
                what: "max check distance",
                value: max_check_distance as i64,
                lo: 2,
                hi: i64::MAX,
            });
        }
        Ok(Variant {
            kind,
            max_check_distance: Some(max_check_distance),
        })
    }

    pub fn max_check_distance(&self) -> Option<u32> {
        self.max_check_distance
    }

    fn covers(&self, d: u32) -> bool {
        d >= 2 && self.max_check_distance.is_none_or(|cap| d <= cap)
    }

    fn is_certificate_for(&self, h: u32) -> bool {
        self.max_check_distance.is_none_or(|cap| cap >= h)
    }
}

impl From<VariantKind> for Variant {
    fn from(kind: VariantKind) -> Self {
        Variant::new(kind)
    }
}

/// Which pair population a failing pair belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairClass {
    /// both endpoints in `M`
    Members,
    /// one endpoint in `M`, one in `M̄`
    Mixed,
    /// both endpoints in `M̄`
    Outsiders,
}

impl PairClass {
    fn of(m: &VertexSet, u: Vertex, v: Vertex) -> PairClass {
        match (m.contains(u), m.contains(v)) {
            (true, true) => PairClass::Members,
            (false, false) => PairClass::Outsiders,
            _ => PairClass::Mixed,
        }
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairClass::Members => "M x M",
            PairClass::Mixed => "M x M-bar",
            PairClass::Outsiders => "M-bar x M-bar",
        })
    }
}

/// A pair with no `M`-free shortest path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub u: Vertex,
    pub v: Vertex,
    pub class: PairClass,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} ({})", self.u, self.v, self.class)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub ok: bool,
    pub witness: Option<Witness>,
    /// False when pairs beyond a distance cap were skipped.
    pub certified: bool,
}

impl Verdict {
    fn pass(certified: bool) -> Self {
        Verdict {
            ok: true,
            witness: None,
            certified,
        }
    }

    fn fail(w: Witness) -> Self {
        Verdict {
            ok: false,
            witness: Some(w),
            certified: true,
        }
    }
}

/// Reusable scratch space for the interval sweep.
struct Sweep {
    visited: Vec<u64>,
    stack: Vec<(u32, u32)>,
    positions: [u32; 32],
}

impl Sweep {
    fn new() -> Self {
        Sweep {
            visited: Vec::new(),
            stack: Vec::new(),
            positions: [0; 32],
        }
    }

    /// True iff a shortest `u,v`-path avoids `m` in its interior.
    fn visible(&mut self, m: &VertexSet, u: u32, v: u32) -> bool {
        let diff = u ^ v;
        let d = diff.count_ones();
        if d <= 1 {
            return true;
        }
        // local coordinates: the k-th differing bit of the interval
        let mut k = 0;
        let mut rest = diff;
        while rest != 0 {
            let b = rest.trailing_zeros();
            self.positions[b as usize] = k;
            k += 1;
            rest &= rest - 1;
        }
        let words = (1usize << d).div_ceil(64);
        self.visited.clear();
        self.visited.resize(words, 0);
        self.stack.clear();
        self.stack.push((u, 0));
        while let Some((x, local)) = self.stack.pop() {
            let mut todo = x ^ v;
            while todo != 0 {
                let b = todo.trailing_zeros();
                todo &= todo - 1;
                let y = x ^ (1 << b);
                if y == v {
                    return true;
                }
                if m.contains_index(y) {
                    continue;
                }
                let ly = local ^ (1 << self.positions[b as usize]);
                let (wi, bit) = ((ly >> 6) as usize, 1u64 << (ly & 63));
                if self.visited[wi] & bit != 0 {
                    continue;
                }
                self.visited[wi] |= bit;
                self.stack.push((y, ly));
            }
        }
        false
    }
}

/// Is there a shortest `u,v`-path whose interior avoids `m`?
pub fn pair_visible(m: &VertexSet, u: Vertex, v: Vertex) -> Result<bool> {
    same_dim(u, v)?;
    if m.dim() != u.dim() {
        return Err(Error::DimensionMismatch {
            left: m.dim(),
            right: u.dim(),
        });
    }
    Ok(Sweep::new().visible(m, u.bits(), v.bits()))
}

/// First failing partner of `u` (in increasing order of `v > u`).
fn first_failure_from(m: &VertexSet, variant: Variant, u: u32, sweep: &mut Sweep) -> Option<u32> {
    let n = m.order() as u32;
    let u_in = m.contains_index(u);
    ((u + 1)..n).find(|&v| {
        variant.kind.requires(u_in, m.contains_index(v))
            && variant.covers((u ^ v).count_ones())
            && !sweep.visible(m, u, v)
    })
}

fn witness(m: &VertexSet, u: u32, v: u32) -> Witness {
    let h = m.dim();
    let (u, v) = (Vertex::from_raw(u, h), Vertex::from_raw(v, h));
    Witness {
        u,
        v,
        class: PairClass::of(m, u, v),
    }
}

/// Path-based check over the variant's full pair population. The witness is
/// the least failing pair `(u, v)`, `u < v`, by vertex index.
pub fn verify_by_paths(m: &VertexSet, variant: Variant) -> Verdict {
    let n = m.order() as u32;
    let found = (0..n)
        .into_par_iter()
        .map_init(Sweep::new, |sweep, u| {
            first_failure_from(m, variant, u, sweep).map(|v| (u, v))
        })
        .find_first(|r| r.is_some())
        .flatten();
    match found {
        Some((u, v)) => Verdict::fail(witness(m, u, v)),
        None => Verdict::pass(variant.is_certificate_for(m.dim())),
    }
}

/// Every failing pair, in increasing order.
pub fn verify_all_witnesses(m: &VertexSet, variant: Variant) -> Vec<Witness> {
    let n = m.order() as u32;
    (0..n)
        .into_par_iter()
        .map_init(Sweep::new, |sweep, u| {
            let u_in = m.contains_index(u);
            ((u + 1)..n)
                .filter(|&v| {
                    variant.kind.requires(u_in, m.contains_index(v))
                        && variant.covers((u ^ v).count_ones())
                        && !sweep.visible(m, u, v)
                })
                .map(|v| witness(m, u, v))
                .collect::<Vec<_>>()
        })
        .flatten()
        .collect()
}

/// Verify `m` against a variant.
///
/// Total sets are decided by the distance-2 characterization; on failure the
/// path sweep supplies the least failing pair. Every other variant uses the
/// path sweep directly.
pub fn verify(m: &VertexSet, variant: Variant) -> Verdict {
    match variant.kind {
        VariantKind::Total => {
            if verify_total_by_distance(m).ok {
                Verdict::pass(true)
            } else {
                let v = verify_by_paths(m, variant);
                debug_assert!(!v.ok);
                v
            }
        }
        _ => verify_by_paths(m, variant),
    }
}

/// `M` is total iff no two members are at distance exactly 2.
///
/// The witness is the opposite diagonal of the offending square, whose two
/// midpoints are both in `M`.
pub fn verify_total_by_distance(m: &VertexSet) -> Verdict {
    let h = m.dim();
    for u in m.indices() {
        for i in 0..h {
            for j in (i + 1)..h {
                let w = u ^ (1 << i) ^ (1 << j);
                if w > u && m.contains_index(w) {
                    let (a, b) = (u ^ (1 << i), u ^ (1 << j));
                    return Verdict::fail(witness(m, a.min(b), a.max(b)));
                }
            }
        }
    }
    Verdict::pass(true)
}

/// Dual check through the square characterization: `M` must be a
/// mutual-visibility set and no square of `Q_h` may meet `M` in exactly two
/// opposite corners.
pub fn verify_dual_by_characterization(m: &VertexSet) -> Verdict {
    let mutual = verify_by_paths(m, Variant::new(VariantKind::Mutual));
    if !mutual.ok {
        return mutual;
    }
    let h = m.dim();
    let n = m.order() as u32;
    for x in 0..n {
        for i in 0..h {
            if x >> i & 1 == 1 {
                continue;
            }
            for j in (i + 1)..h {
                if x >> j & 1 == 1 {
                    continue;
                }
                let (a, b, c) = (x | 1 << i, x | 1 << j, x | 1 << i | 1 << j);
                let corners = [x, a, b, c];
                let inside = corners.map(|y| m.contains_index(y));
                if inside.iter().filter(|&&t| t).count() != 2 {
                    continue;
                }
                // the two members are adjacent unless they form a diagonal
                if inside[0] && inside[3] {
                    return Verdict::fail(witness(m, a.min(b), a.max(b)));
                }
                if inside[1] && inside[2] {
                    return Verdict::fail(witness(m, x, c));
                }
            }
        }
    }
    Verdict::pass(true)
}

//! Constructive lower bounds, closed-form upper bounds and known values.

mod codes;
mod independent;
mod known;

pub use codes::{distance3_code, hamming_code, lexicode, parity_extend, BinaryCode};
pub use independent::{alpha_halved_bruteforce, max_independent_halved, max_independent_set};
pub use known::{a_h_4, Entry, KnownValues, SummaryRow};

use crate::cube::{check_dim, layer, Vertex, VertexSet};
use crate::error::{Error, Result};
use crate::visibility::VariantKind;

/// Dimension whose exact values anchor the doubling bounds.
pub const DOUBLING_ANCHOR: u32 = 7;

pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// `L_i ∪ L_{i+gap}` around `0^h`; `gap = 0` gives the single layer `L_i`.
pub fn layer_pair_set(h: u32, i: u32, gap: u32) -> Result<VertexSet> {
    check_dim(h)?;
    if i < 1 || i + gap > h {
        return Err(Error::OutOfRange {
            what: "layer index",
            value: i as i64,
            lo: 1,
            hi: h as i64 - gap as i64,
        });
    }
    let root = Vertex::zero(h)?;
    let base = layer(root, i)?;
    if gap == 0 {
        return Ok(base);
    }
    base.union(&layer(root, i + gap)?)
}

/// `C(h, ⌊h/2⌋−1) + C(h, ⌊h/2⌋+2)`, the largest gap-3 layer pair for `h ≥ 8`.
pub fn mv_lower_bound(h: u32) -> Result<u64> {
    if h < 8 {
        return Err(Error::OutOfRange {
            what: "dimension for the layer-pair bound",
            value: h as i64,
            lo: 8,
            hi: i64::MAX,
        });
    }
    let i = h / 2 - 1;
    Ok(binomial(h, i) + binomial(h, i + 3))
}

/// Upper bound from halving: `μ(Q_h) ≤ 2 μ(Q_{h−1})`, anchored at the
/// largest dimension below `h` with a known exact value.
pub fn doubling_upper_bound(h: u32, kind: VariantKind) -> Result<u64> {
    let kv = KnownValues::embedded();
    let anchor = (1..h)
        .rev()
        .find_map(|a| kv.exact(a, kind).map(|v| (a, v)))
        .ok_or(Error::Untabulated(h))?;
    if kind != VariantKind::Total && h < 8 {
        return Err(Error::OutOfRange {
            what: "dimension for the doubling bound",
            value: h as i64,
            lo: 8,
            hi: i64::MAX,
        });
    }
    let (a, v) = anchor;
    Ok(v << (h - a))
}

/// The largest set from the layer and code constructions that provably
/// satisfies `kind`, used as a search floor.
pub fn constructive_set(h: u32, kind: VariantKind) -> Result<VertexSet> {
    check_dim(h)?;
    match kind {
        VariantKind::Mutual => {
            let mut best = layer_pair_set(h, (h / 2).max(1), 0)?;
            for i in 1..=h.saturating_sub(3) {
                let cand = layer_pair_set(h, i, 3)?;
                if cand.len() > best.len() {
                    best = cand;
                }
            }
            Ok(best)
        }
        VariantKind::Outer => layer_pair_set(h, (h / 2).max(1), 0),
        VariantKind::Total | VariantKind::Dual => code_total_set(h),
    }
}

/// Total set of `Q_h` from the parity extension of a distance-3 code of
/// length `h − 1`.
pub fn code_total_set(h: u32) -> Result<VertexSet> {
    check_dim(h)?;
    if h == 1 {
        return VertexSet::full(1);
    }
    let code = distance3_code(h - 1)?;
    let (e, o) = parity_extend(&code)?;
    e.union(&o)
}

/// A lower or upper bound with where it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub value: u64,
    pub source: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub h: u32,
    pub kind: VariantKind,
    pub lower: Vec<Bound>,
    pub upper: Vec<Bound>,
}

impl BoundReport {
    pub fn best_lower(&self) -> Option<u64> {
        self.lower.iter().map(|b| b.value).max()
    }

    pub fn best_upper(&self) -> Option<u64> {
        self.upper.iter().map(|b| b.value).min()
    }

    pub fn exact(&self) -> Option<u64> {
        match (self.best_lower(), self.best_upper()) {
            (Some(l), Some(u)) if l == u => Some(l),
            _ => None,
        }
    }

    pub fn render(&self) -> String {
        let mut out = format!("h={} variant={}\n", self.h, self.kind);
        match self.exact() {
            Some(v) => out.push_str(&format!("exact {v}\n")),
            None => {
                let fmt = |v: Option<u64>| v.map_or("unknown".to_string(), |x| x.to_string());
                out.push_str(&format!("lower {}\n", fmt(self.best_lower())));
                out.push_str(&format!("upper {}\n", fmt(self.best_upper())));
            }
        }
        for b in &self.lower {
            out.push_str(&format!("  lower {:>8}  {}\n", b.value, b.source));
        }
        for b in &self.upper {
            out.push_str(&format!("  upper {:>8}  {}\n", b.value, b.source));
        }
        out
    }
}

/// Collect every bound the crate knows for `(h, kind)`.
pub fn bounds(h: u32, kind: VariantKind) -> Result<BoundReport> {
    check_dim(h)?;
    let kv = KnownValues::embedded();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    if let Some(e) = kv.get(h, kind) {
        let source = if e.is_exact() {
            "known exact value"
        } else {
            "summary table"
        };
        lower.push(Bound {
            value: e.lower,
            source,
        });
        upper.push(Bound {
            value: e.upper,
            source,
        });
    }
    let construction = match kind {
        VariantKind::Mutual | VariantKind::Outer => "layer construction",
        VariantKind::Total | VariantKind::Dual => "code construction",
    };
    if h <= 16 {
        lower.push(Bound {
            value: constructive_set(h, kind)?.len() as u64,
            source: construction,
        });
    }
    if matches!(kind, VariantKind::Total | VariantKind::Dual) && h >= 3 {
        if let Ok(a) = a_h_4(h) {
            lower.push(Bound {
                value: 2 * a,
                source: "2*A(h,4)",
            });
        }
    }
    if let Ok(u) = doubling_upper_bound(h, kind) {
        if kind != VariantKind::Total || kv.get(h, kind).is_none() {
            upper.push(Bound {
                value: u,
                source: "doubling bound",
            });
        }
    }
    Ok(BoundReport {
        h,
        kind,
        lower,
        upper,
    })
}

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::visibility::VariantKind;

const EMBEDDED: &str = include_str!("../../data/known_values.txt");

/// An exact value (`lower == upper`) or a bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Entry {
    pub lower: u64,
    pub upper: u64,
}

impl Entry {
    pub fn exact(v: u64) -> Self {
        Entry { lower: v, upper: v }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn exact_value(&self) -> Option<u64> {
        self.is_exact().then_some(self.lower)
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lower)
        } else {
            write!(f, "{}-{}", self.lower, self.upper)
        }
    }
}

/// One row of the summary table, in its column order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SummaryRow {
    pub h: u32,
    pub mutual: Entry,
    pub total: Entry,
    pub dual: Entry,
    pub outer: Entry,
}

#[derive(Clone, Debug, Default)]
pub struct KnownValues {
    version: u32,
    exact: BTreeMap<u32, [Option<u64>; 4]>,
    summary: BTreeMap<u32, SummaryRow>,
    total: BTreeMap<u32, u64>,
}

fn slot(kind: VariantKind) -> usize {
    match kind {
        VariantKind::Mutual => 0,
        VariantKind::Total => 1,
        VariantKind::Outer => 2,
        VariantKind::Dual => 3,
    }
}

fn parse_entry(tok: &str, line: usize) -> Result<Option<Entry>> {
    let bad = |msg: String| Error::Parse { line, msg };
    if tok == "-" {
        return Ok(None);
    }
    let num = |s: &str| s.parse::<u64>().map_err(|e| bad(format!("{s:?}: {e}")));
    let entry = match tok.split_once('-') {
        Some((lo, hi)) => Entry {
            lower: num(lo)?,
            upper: num(hi)?,
        },
        None => Entry::exact(num(tok)?),
    };
    if entry.lower > entry.upper {
        return Err(bad(format!("bracket {tok} has lower > upper")));
    }
    Ok(Some(entry))
}

impl KnownValues {
    pub fn parse(text: &str) -> Result<Self> {
        let mut kv = KnownValues::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if let Some(rest) = trimmed.strip_prefix("# format-version:") {
                kv.version = rest.trim().parse().map_err(|_| Error::Parse {
                    line,
                    msg: "bad format version".into(),
                })?;
                continue;
            }
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = trimmed.split_whitespace().collect();
            let bad = |msg: &str| Error::Parse {
                line,
                msg: msg.to_string(),
            };
            let h: u32 = toks
                .get(1)
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad("missing dimension"))?;
            let need = |n: usize| {
                if toks.len() == n {
                    Ok(())
                } else {
                    Err(bad("wrong number of columns"))
                }
            };
            match toks[0] {
                "exact" => {
                    need(6)?;
                    let mut row = [None; 4];
                    for (k, tok) in toks[2..].iter().enumerate() {
                        row[k] = match parse_entry(tok, line)? {
                            Some(e) if e.is_exact() => Some(e.lower),
                            Some(_) => return Err(bad("exact rows cannot hold brackets")),
                            None => None,
                        };
                    }
                    kv.exact.insert(h, row);
                }
                "summary" => {
                    need(6)?;
                    let cell = |k: usize| {
                        parse_entry(toks[k], line)?.ok_or_else(|| bad("summary cells are required"))
                    };
                    kv.summary.insert(
                        h,
                        SummaryRow {
                            h,
                            mutual: cell(2)?,
                            total: cell(3)?,
                            dual: cell(4)?,
                            outer: cell(5)?,
                        },
                    );
                }
                "total" => {
                    need(3)?;
                    let v = parse_entry(toks[2], line)?
                        .and_then(|e| e.exact_value())
                        .ok_or_else(|| bad("total rows hold one exact value"))?;
                    kv.total.insert(h, v);
                }
                other => return Err(bad(&format!("unknown record kind {other:?}"))),
            }
        }
        if kv.version == 0 {
            return Err(Error::Parse {
                line: 0,
                msg: "missing format-version header".into(),
            });
        }
        Ok(kv)
    }

    /// The table shipped with the crate.
    pub fn embedded() -> &'static KnownValues {
        static KV: OnceLock<KnownValues> = OnceLock::new();
        KV.get_or_init(|| KnownValues::parse(EMBEDDED).expect("embedded table parses"))
    }

    pub fn embedded_source() -> &'static str {
        EMBEDDED
    }

    pub fn version(&self) -> u32 {
        self.version
    }

    /// Best known entry for `(h, kind)`.
    pub fn get(&self, h: u32, kind: VariantKind) -> Option<Entry> {
        if kind == VariantKind::Total {
            if let Some(&v) = self.total.get(&h) {
                return Some(Entry::exact(v));
            }
        }
        if let Some(v) = self.exact.get(&h).and_then(|row| row[slot(kind)]) {
            return Some(Entry::exact(v));
        }
        self.summary.get(&h).map(|row| match kind {
            VariantKind::Mutual => row.mutual,
            VariantKind::Total => row.total,
            VariantKind::Outer => row.outer,
            VariantKind::Dual => row.dual,
        })
    }

    pub fn exact(&self, h: u32, kind: VariantKind) -> Option<u64> {
        self.get(h, kind).and_then(|e| e.exact_value())
    }

    pub fn summary_rows(&self) -> impl Iterator<Item = &SummaryRow> {
        self.summary.values()
    }

    pub fn total_rows(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.total.iter().map(|(&h, &v)| (h, v))
    }

    /// Exact rows from the small-dimension theorems: `(h, [mutual, total, outer, dual])`.
    pub fn exact_rows(&self) -> impl Iterator<Item = (u32, [Option<u64>; 4])> + '_ {
        self.exact.iter().map(|(&h, &r)| (h, r))
    }

    /// The summary table with a provenance column.
    pub fn render_summary(&self) -> String {
        let mut out = String::from("summary: lower bounds, upper bounds and exact values\n");
        out.push_str(&format!(
            "{:>3}  {:>9}  {:>6}  {:>8}  {:>8}  {}\n",
            "h", "mutual", "total", "dual", "outer", "provenance"
        ));
        for r in self.summary_rows() {
            let exact = [r.mutual, r.total, r.dual, r.outer]
                .iter()
                .all(Entry::is_exact);
            out.push_str(&format!(
                "{:>3}  {:>9}  {:>6}  {:>8}  {:>8}  {}\n",
                r.h,
                r.mutual.to_string(),
                r.total.to_string(),
                r.dual.to_string(),
                r.outer.to_string(),
                if exact {
                    "summary table (exact)"
                } else {
                    "summary table (bounds)"
                }
            ));
        }
        out
    }

    /// The total-visibility table with `A(h,4)` and provenance.
    pub fn render_total(&self) -> String {
        let mut out = String::from("total: total mutual-visibility numbers\n");
        out.push_str(&format!(
            "{:>3}  {:>6}  {:>6}  {}\n",
            "h", "total", "A(h,4)", "provenance"
        ));
        for (h, v) in self.total_rows() {
            out.push_str(&format!(
                "{:>3}  {:>6}  {:>6}  {}\n",
                h,
                v,
                v / 2,
                "total table = 2*A(h,4)"
            ));
        }
        out
    }
}

impl KnownValues {
    /// Exact values for small dimensions.
    pub fn render_exact(&self) -> String {
        let mut out = String::from("exact: visibility numbers of small hypercubes\n");
        out.push_str(&format!(
            "{:>3}  {:>6}  {:>6}  {:>6}  {:>6}  {}\n",
            "h", "mutual", "total", "outer", "dual", "provenance"
        ));
        let cell = |v: Option<u64>| v.map_or("-".to_string(), |x| x.to_string());
        for (h, row) in self.exact_rows() {
            out.push_str(&format!(
                "{:>3}  {:>6}  {:>6}  {:>6}  {:>6}  {}\n",
                h,
                cell(row[0]),
                cell(self.exact(h, VariantKind::Total)),
                cell(row[2]),
                cell(row[3]),
                "small-dimension theorems"
            ));
        }
        out
    }
}

/// `A(h,4)`, the largest binary code of length `h` with minimum distance 4,
/// read off the total table (`μ_t(Q_h) = 2·A(h,4)`) for `3 ≤ h ≤ 16`.
pub fn a_h_4(h: u32) -> Result<u64> {
    KnownValues::embedded()
        .total
        .get(&h)
        .map(|v| v / 2)
        .ok_or(Error::Untabulated(h))
}

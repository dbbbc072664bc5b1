use std::fmt;

use crate::error::{Error, Result};

use super::vertex::check_dim;
use super::Vertex;

/// A subset of `V(Q_h)` stored as a bitset of length `2^h`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    dim: u8,
    words: Vec<u64>,
}

fn word_count(dim: u32) -> usize {
    (1usize << dim).div_ceil(64)
}

impl VertexSet {
    pub fn new(dim: u32) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self::with_dim(dim))
    }

    pub(crate) fn with_dim(dim: u32) -> Self {
        debug_assert!(check_dim(dim).is_ok());
        VertexSet {
            dim: dim as u8,
            words: vec![0; word_count(dim)],
        }
    }

    /// All of `V(Q_h)`.
    pub fn full(dim: u32) -> Result<Self> {
        let mut set = Self::new(dim)?;
        set.fill();
        Ok(set)
    }

    fn fill(&mut self) {
        let order = self.order();
        for (i, w) in self.words.iter_mut().enumerate() {
            let lo = i * 64;
            let n = (order - lo).min(64);
            *w = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        }
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(dim: u32, vertices: I) -> Result<Self> {
        let mut set = Self::new(dim)?;
        for v in vertices {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: v.dim(),
                });
            }
            set.insert(v);
        }
        Ok(set)
    }

    pub fn from_indices<I: IntoIterator<Item = u32>>(dim: u32, indices: I) -> Result<Self> {
        let mut set = Self::new(dim)?;
        let order = set.order() as u32;
        for i in indices {
            if i >= order {
                return Err(Error::OutOfRange {
                    what: "vertex index",
                    value: i as i64,
                    lo: 0,
                    hi: order as i64 - 1,
                });
            }
            set.insert_index(i);
        }
        Ok(set)
    }

    /// Build from a bitmask over vertex indices (requires `h ≤ 6`).
    pub fn from_mask(dim: u32, mask: u64) -> Result<Self> {
        check_dim(dim)?;
        if dim > 6 {
            return Err(Error::Precondition(format!(
                "u64 mask only covers h <= 6, got {dim}"
            )));
        }
        let order = 1u32 << dim;
        if order < 64 && mask >> order != 0 {
            return Err(Error::Precondition("mask has bits beyond 2^h".into()));
        }
        let mut set = Self::with_dim(dim);
        set.words[0] = mask;
        Ok(set)
    }

    /// The bitmask over vertex indices, when `h ≤ 6`.
    pub fn to_mask(&self) -> Option<u64> {
        (self.dim <= 6).then(|| self.words[0])
    }

    #[inline]
    pub fn dim(&self) -> u32 {
        self.dim as u32
    }

    /// Number of vertices of the ambient cube.
    #[inline]
    pub fn order(&self) -> usize {
        1usize << self.dim
    }

    #[inline]
    pub fn contains_index(&self, i: u32) -> bool {
        self.words[(i >> 6) as usize] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        debug_assert_eq!(v.dim(), self.dim());
        self.contains_index(v.bits())
    }

    #[inline]
    pub(crate) fn insert_index(&mut self, i: u32) -> bool {
        let w = &mut self.words[(i >> 6) as usize];
        let bit = 1u64 << (i & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    /// Returns `true` if the vertex was not already present.
    pub fn insert(&mut self, v: Vertex) -> bool {
        debug_assert_eq!(v.dim(), self.dim());
        self.insert_index(v.bits())
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        debug_assert_eq!(v.dim(), self.dim());
        let i = v.bits();
        let w = &mut self.words[(i >> 6) as usize];
        let bit = 1u64 << (i & 63);
        let had = *w & bit != 0;
        *w &= !bit;
        had
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Member indices in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros();
                    w &= w - 1;
                    Some((wi as u32) * 64 + t)
                }
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        let dim = self.dim();
        self.indices().map(move |i| Vertex::from_raw(i, dim))
    }

    fn check_same(&self, other: &VertexSet) -> Result<()> {
        if self.dim != other.dim {
            Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            })
        } else {
            Ok(())
        }
    }

    pub fn union(&self, other: &VertexSet) -> Result<VertexSet> {
        self.check_same(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        Ok(VertexSet {
            dim: self.dim,
            words,
        })
    }

    pub fn intersection(&self, other: &VertexSet) -> Result<VertexSet> {
        self.check_same(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        Ok(VertexSet {
            dim: self.dim,
            words,
        })
    }

    pub fn difference(&self, other: &VertexSet) -> Result<VertexSet> {
        self.check_same(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & !b)
            .collect();
        Ok(VertexSet {
            dim: self.dim,
            words,
        })
    }

    /// `M̄ = V(Q_h) \ M`.
    pub fn complement(&self) -> VertexSet {
        let mut full = VertexSet::with_dim(self.dim());
        full.fill();
        for (f, w) in full.words.iter_mut().zip(&self.words) {
            *f &= !w;
        }
        full
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.dim == other.dim
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    /// Image under a vertex map (used for automorphisms).
    pub fn map<F: Fn(Vertex) -> Vertex>(&self, f: F) -> VertexSet {
        let mut out = VertexSet::with_dim(self.dim());
        for v in self.iter() {
            out.insert(f(v));
        }
        out
    }

    /// One vertex per line in text form.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in self.iter() {
            s.push_str(&v.to_text());
            s.push('\n');
        }
        s
    }

    /// Parse the set-file format: one vertex per line, `#` comments and
    /// blank lines ignored. With `dim = None` the dimension is taken from
    /// the first vertex line.
    pub fn parse_text(text: &str, dim: Option<u32>) -> Result<VertexSet> {
        let mut set: Option<VertexSet> = match dim {
            Some(d) => Some(VertexSet::new(d)?),
            None => None,
        };
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let v: Vertex = line.parse().map_err(|e| match e {
                Error::Parse { msg, .. } => Error::Parse {
                    line: lineno + 1,
                    msg,
                },
                other => other,
            })?;
            let target = set.get_or_insert_with(|| VertexSet::with_dim(v.dim()));
            if v.dim() != target.dim() {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!(
                        "vertex {line} has length {}, expected {}",
                        v.dim(),
                        target.dim()
                    ),
                });
            }
            target.insert(v);
        }
        set.ok_or_else(|| Error::Parse {
            line: 0,
            msg: "empty set file and no dimension given".into(),
        })
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexSet(h={}, {{", self.dim)?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("})")
    }
}

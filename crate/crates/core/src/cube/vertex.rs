use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::VertexSet;

/// Largest supported hypercube dimension.
pub const MAX_DIM: u32 = 24;

pub(crate) fn check_dim(dim: u32) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        Err(Error::UnsupportedDimension(dim))
    } else {
        Ok(())
    }
}

/// A vertex of `Q_h`: a binary string of length `h` packed into a bitmask.
///
/// Bit `i` holds coordinate `i + 1`, so the leftmost character of the text
/// form is bit 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Vertex {
    bits: u32,
    dim: u8,
}

impl Vertex {
    pub fn new(bits: u32, dim: u32) -> Result<Self> {
        check_dim(dim)?;
        if (bits as u64) >= (1u64 << dim) {
            return Err(Error::OutOfRange {
                what: "vertex bits",
                value: bits as i64,
                lo: 0,
                hi: (1i64 << dim) - 1,
            });
        }
        Ok(Vertex {
            bits,
            dim: dim as u8,
        })
    }

    /// Caller guarantees `dim` is supported and `bits < 2^dim`.
    #[inline]
    pub(crate) fn from_raw(bits: u32, dim: u32) -> Self {
        debug_assert!((1..=MAX_DIM).contains(&dim) && (bits as u64) < (1u64 << dim));
        Vertex {
            bits,
            dim: dim as u8,
        }
    }

    /// The all-zero vertex `0^h`.
    pub fn zero(dim: u32) -> Result<Self> {
        Vertex::new(0, dim)
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn dim(self) -> u32 {
        self.dim as u32
    }

    #[inline]
    pub fn index(self) -> usize {
        self.bits as usize
    }

    /// Number of ones.
    #[inline]
    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    /// Value of coordinate `i` (1-based, as in `b_1 … b_h`).
    pub fn coordinate(self, i: u32) -> Result<bool> {
        if i == 0 || i > self.dim() {
            return Err(Error::OutOfRange {
                what: "coordinate",
                value: i as i64,
                lo: 1,
                hi: self.dim() as i64,
            });
        }
        Ok(self.bits >> (i - 1) & 1 == 1)
    }

    /// Flip bit `bit` (0-based).
    #[inline]
    pub fn flip(self, bit: u32) -> Vertex {
        debug_assert!(bit < self.dim());
        Vertex {
            bits: self.bits ^ (1 << bit),
            dim: self.dim,
        }
    }

    /// Hamming distance; the caller guarantees matching dimensions.
    #[inline]
    pub fn distance(self, other: Vertex) -> u32 {
        debug_assert_eq!(self.dim, other.dim);
        (self.bits ^ other.bits).count_ones()
    }

    #[inline]
    pub fn antipode(self) -> Vertex {
        Vertex {
            bits: !self.bits & mask(self.dim()),
            dim: self.dim,
        }
    }

    pub fn is_adjacent(self, other: Vertex) -> bool {
        self.dim == other.dim && self.distance(other) == 1
    }

    /// Neighbors in increasing bit order.
    pub fn neighbors(self) -> impl Iterator<Item = Vertex> {
        (0..self.dim()).map(move |b| self.flip(b))
    }

    /// `N[u] = N(u) ∪ {u}`.
    pub fn closed_neighborhood(self) -> VertexSet {
        let mut set = VertexSet::with_dim(self.dim());
        set.insert(self);
        for n in self.neighbors() {
            set.insert(n);
        }
        set
    }

    pub fn to_text(self) -> String {
        (0..self.dim())
            .map(|b| if self.bits >> b & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

#[inline]
pub(crate) fn mask(dim: u32) -> u32 {
    if dim >= 32 {
        u32::MAX
    } else {
        (1u32 << dim) - 1
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let dim = s.len() as u32;
        check_dim(dim).map_err(|_| Error::Parse {
            line: 0,
            msg: format!("vertex {s:?} has unsupported length {dim}"),
        })?;
        let mut bits = 0u32;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("invalid character {c:?} in vertex {s:?}"),
                    })
                }
            }
        }
        Ok(Vertex::from_raw(bits, dim))
    }
}

/// Hamming distance between two vertices of the same cube.
pub fn hamming_distance(u: Vertex, v: Vertex) -> Result<u32> {
    same_dim(u, v)?;
    Ok(u.distance(v))
}

/// Coordinatewise complement.
pub fn antipode(u: Vertex) -> Vertex {
    u.antipode()
}

pub(crate) fn same_dim(u: Vertex, v: Vertex) -> Result<()> {
    if u.dim != v.dim {
        Err(Error::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    #[test]
    fn text_form_is_coordinate_ordered() {
        let x = v("0001");
        assert_eq!(x.bits(), 0b1000);
        assert!(x.coordinate(4).unwrap());
        assert!(!x.coordinate(1).unwrap());
        assert_eq!(x.to_text(), "0001");
    }

    #[test]
    fn distance_examples() {
        assert_eq!(hamming_distance(v("0000"), v("0000")).unwrap(), 0);
        assert_eq!(hamming_distance(v("0001"), v("1001")).unwrap(), 1);
        assert_eq!(hamming_distance(v("0110"), v("1011")).unwrap(), 3);
        assert!(matches!(
            hamming_distance(v("000"), v("0000")),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode(v("0000")), v("1111"));
        assert_eq!(antipode(v("0101")), v("1010"));
        for bits in 0..32 {
            let x = Vertex::new(bits, 5).unwrap();
            assert_eq!(x.antipode().antipode(), x);
            assert_eq!(x.distance(x.antipode()), 5);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Vertex::new(16, 4).is_err());
        assert!(Vertex::new(0, 0).is_err());
        assert!(Vertex::new(0, 25).is_err());
        assert!("01a".parse::<Vertex>().is_err());
        assert!("".parse::<Vertex>().is_err());
        assert!(v("010").coordinate(4).is_err());
    }

    #[test]
    fn closed_neighborhood_has_h_plus_one_members() {
        let n = v("0000").closed_neighborhood();
        assert_eq!(n.len(), 5);
        assert!(n.contains(v("0000")));
        assert!(n.contains(v("0010")));
        assert!(!n.contains(v("0011")));
    }

    #[test]
    fn weight_is_popcount() {
        assert_eq!(v("0110").weight(), 2);
        assert_eq!(v("111111").weight(), 6);
    }
}

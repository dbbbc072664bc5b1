//! Automorphisms of `Q_h` (coordinate permutations composed with
//! translations) and canonical forms of small vertex sets.

use std::collections::HashMap;

use crate::cube::{check_dim, next_permutation, Vertex, VertexSet};
use crate::error::{Error, Result};

/// Largest dimension for which the automorphism tables are built.
pub const MAX_SYMMETRY_DIM: u32 = 5;

/// `σ = π ∘ t`: translate by `t`, then send coordinate `i` to `perm[i]`.
pub fn apply_automorphism(set: &VertexSet, perm: &[u32], translation: Vertex) -> Result<VertexSet> {
    let h = set.dim();
    if translation.dim() != h {
        return Err(Error::DimensionMismatch {
            left: h,
            right: translation.dim(),
        });
    }
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if perm.len() != h as usize || sorted.iter().enumerate().any(|(i, &p)| p != i as u32) {
        return Err(Error::Precondition(format!(
            "{perm:?} is not a permutation of 0..{h}"
        )));
    }
    Ok(set.map(|v| {
        let t = v.bits() ^ translation.bits();
        let bits = (0..h).fold(0, |acc, i| acc | ((t >> i) & 1) << perm[i as usize]);
        Vertex::new(bits, h).expect("image stays in the cube")
    }))
}

/// `a < b` in the order of sorted member lists, for sets of equal size.
pub fn lex_less(a: u64, b: u64) -> bool {
    let d = a ^ b;
    d != 0 && a & d & d.wrapping_neg() != 0
}

/// All `2^h · h!` automorphisms of `Q_h` as vertex-index maps.
#[derive(Clone, Debug)]
pub struct Automorphisms {
    h: u32,
    maps: Vec<Vec<u8>>,
}

impl Automorphisms {
    pub fn new(h: u32) -> Result<Self> {
        check_dim(h)?;
        if h > MAX_SYMMETRY_DIM {
            return Err(Error::OutOfRange {
                what: "dimension for automorphism tables",
                value: h as i64,
                lo: 1,
                hi: MAX_SYMMETRY_DIM as i64,
            });
        }
        let n = 1u32 << h;
        let mut maps = Vec::new();
        let mut perm: Vec<u32> = (0..h).collect();
        loop {
            for t in 0..n {
                let map = (0..n)
                    .map(|v| {
                        let x = v ^ t;
                        (0..h).fold(0u32, |acc, i| acc | ((x >> i) & 1) << perm[i as usize]) as u8
                    })
                    .collect();
                maps.push(map);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        Ok(Automorphisms { h, maps })
    }

    pub fn dim(&self) -> u32 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn image(&self, k: usize, mask: u64) -> u64 {
        let map = &self.maps[k];
        let mut out = 0u64;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= 1 << map[v];
        }
        out
    }

    /// The least image of `mask` over the group.
    pub fn canonical(&self, mask: u64) -> u64 {
        (0..self.maps.len())
            .map(|k| self.image(k, mask))
            .fold(
                mask,
                |best, img| if lex_less(img, best) { img } else { best },
            )
    }

    /// Is `mask` already its own canonical form?
    pub fn is_canonical(&self, mask: u64) -> bool {
        (0..self.maps.len()).all(|k| !lex_less(self.image(k, mask), mask))
    }
}

/// Memoized canonical forms.
#[derive(Clone, Debug)]
pub struct CanonicalCache {
    autos: Automorphisms,
    memo: HashMap<u64, u64>,
}

impl CanonicalCache {
    pub fn new(h: u32) -> Result<Self> {
        Ok(CanonicalCache {
            autos: Automorphisms::new(h)?,
            memo: HashMap::new(),
        })
    }

    pub fn canonical(&mut self, mask: u64) -> u64 {
        let autos = &self.autos;
        *self
            .memo
            .entry(mask)
            .or_insert_with(|| autos.canonical(mask))
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }
}

/// Orbit representatives of all subsets of `V(Q_h)` by orderly generation,
/// descending only into sets accepted by `keep` (which must be closed under
/// removing the largest member). Returns the representatives visited.
pub(crate) fn orderly<F: FnMut(u64) -> bool>(autos: &Automorphisms, mut keep: F) -> Vec<u64> {
    let n = 1u32 << autos.dim();
    let mut out = Vec::new();
    let mut stack = vec![0u64];
    while let Some(mask) = stack.pop() {
        if !keep(mask) {
            continue;
        }
        out.push(mask);
        let start = if mask == 0 {
            0
        } else {
            64 - mask.leading_zeros()
        };
        for v in (start..n).rev() {
            let child = mask | 1 << v;
            if autos.is_canonical(child) {
                stack.push(child);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        assert_eq!(Automorphisms::new(1).unwrap().len(), 2);
        assert_eq!(Automorphisms::new(3).unwrap().len(), 48);
        assert_eq!(Automorphisms::new(4).unwrap().len(), 384);
        assert!(Automorphisms::new(6).is_err());
    }

    #[test]
    fn maps_preserve_adjacency() {
        let g = Automorphisms::new(3).unwrap();
        for k in 0..g.len() {
            for a in 0..8u64 {
                for b in 0..8u64 {
                    let (x, y) = (g.image(k, 1 << a), g.image(k, 1 << b));
                    let d = |p: u64, q: u64| (p.trailing_zeros() ^ q.trailing_zeros()).count_ones();
                    assert_eq!(d(x, y), ((a ^ b) as u32).count_ones());
                }
            }
        }
    }

    #[test]
    fn orbit_counts() {
        // numbers of inequivalent vertex subsets of Q_1..Q_4
        for (h, orbits) in [(1, 3), (2, 6), (3, 22), (4, 402)] {
            let g = Automorphisms::new(h).unwrap();
            assert_eq!(orderly(&g, |_| true).len(), orbits, "h={h}");
        }
    }

    #[test]
    fn canonical_is_orbit_invariant() {
        let g = Automorphisms::new(3).unwrap();
        let mut cache = CanonicalCache::new(3).unwrap();
        let m = 0b1001_0110u64;
        let c = cache.canonical(m);
        for k in 0..g.len() {
            assert_eq!(g.canonical(g.image(k, m)), c);
        }
        assert!(g.is_canonical(c));
        assert_eq!(cache.len(), 1);
    }

    #[test]
    fn apply_automorphism_checks_inputs() {
        let s = VertexSet::parse_text("100\n", Some(3)).unwrap();
        let t: Vertex = "010".parse().unwrap();
        let img = apply_automorphism(&s, &[2, 0, 1], t).unwrap();
        // 100 ^ 010 = 110; bit0 -> 2, bit1 -> 0 gives 101
        assert!(img.contains("101".parse().unwrap()));
        assert!(apply_automorphism(&s, &[0, 0, 1], t).is_err());
        assert!(apply_automorphism(&s, &[0, 1], t).is_err());
    }
}

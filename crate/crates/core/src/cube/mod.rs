//! Hypercube geometry: vertices, layers, intervals, shortest paths,
//! raised subcubes and halved cubes.

mod set;
mod vertex;

pub use set::VertexSet;
pub use vertex::{antipode, hamming_distance, Vertex, MAX_DIM};

pub(crate) use vertex::{check_dim, same_dim};

use crate::error::{Error, Result};

/// Longest pair distance for which all `d!` shortest paths are enumerated.
pub const MAX_PATH_ENUM_DISTANCE: u32 = 8;

/// Iterate over every subset of `mask` (including 0 and `mask` itself).
pub(crate) fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some((cur.wrapping_sub(mask)) & mask)
        };
        Some(cur)
    })
}

/// `L^v_i`: all vertices at distance exactly `i` from `v`.
pub fn layer(v: Vertex, i: u32) -> Result<VertexSet> {
    let h = v.dim();
    if i > h {
        return Err(Error::OutOfRange {
            what: "layer index",
            value: i as i64,
            lo: 0,
            hi: h as i64,
        });
    }
    let mut set = VertexSet::with_dim(h);
    for flips in 0..(1u32 << h) {
        if flips.count_ones() == i {
            set.insert_index(v.bits() ^ flips);
        }
    }
    Ok(set)
}

/// `I(u,v)`: every vertex on some shortest `u,v`-path, a subcube of
/// dimension `d(u,v)`.
pub fn interval(u: Vertex, v: Vertex) -> Result<VertexSet> {
    same_dim(u, v)?;
    let mut set = VertexSet::with_dim(u.dim());
    for s in submasks(u.bits() ^ v.bits()) {
        set.insert_index(u.bits() ^ s);
    }
    Ok(set)
}

/// A walk in `Q_h` given by its vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    vertices: Vec<Vertex>,
}

impl Path {
    /// Build a path, checking that consecutive vertices are adjacent.
    pub fn new(vertices: Vec<Vertex>) -> Result<Path> {
        if vertices.is_empty() {
            return Err(Error::Precondition(
                "a path needs at least one vertex".into(),
            ));
        }
        for w in vertices.windows(2) {
            if !w[0].is_adjacent(w[1]) {
                return Err(Error::NotNeighbor(w[1].to_text(), w[0].to_text()));
            }
        }
        Ok(Path { vertices })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn start(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn end(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    /// `V(P) \ {u, v}`.
    pub fn interior(&self) -> &[Vertex] {
        let n = self.vertices.len();
        if n <= 2 {
            &[]
        } else {
            &self.vertices[1..n - 1]
        }
    }

    /// True when the path flips `len()` distinct coordinates, i.e. it is a
    /// shortest path between its endpoints.
    pub fn is_shortest(&self) -> bool {
        self.start().distance(self.end()) as usize == self.len()
    }
}

/// Advance `perm` to its lexicographic successor; `false` once exhausted.
pub(crate) fn next_permutation(perm: &mut [u32]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Visit the interior vertices of every shortest `u,v`-path, one path per
/// permutation of the differing coordinates in lexicographic order.
pub(crate) fn for_each_shortest_path_interior<F: FnMut(&[Vertex])>(
    u: Vertex,
    v: Vertex,
    mut f: F,
) -> Result<()> {
    let d = u.distance(v);
    if d > MAX_PATH_ENUM_DISTANCE {
        return Err(Error::PathCapacity {
            distance: d,
            limit: MAX_PATH_ENUM_DISTANCE,
        });
    }
    let diff = u.bits() ^ v.bits();
    let mut perm: Vec<u32> = (0..u.dim()).filter(|b| diff >> b & 1 == 1).collect();
    let mut interior = Vec::with_capacity(d.saturating_sub(1) as usize);
    loop {
        interior.clear();
        let mut x = u;
        for &b in perm.iter().take(perm.len().saturating_sub(1)) {
            x = x.flip(b);
            interior.push(x);
        }
        f(&interior);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(())
}

/// All `d!` shortest `u,v`-paths when `d(u,v) ≤ max_len`, ordered by the
/// lexicographic order of the flip permutation; empty otherwise.
pub fn enumerate_shortest_paths(u: Vertex, v: Vertex, max_len: u32) -> Result<Vec<Path>> {
    same_dim(u, v)?;
    if u.distance(v) > max_len {
        return Ok(Vec::new());
    }
    let mut paths = Vec::new();
    for_each_shortest_path_interior(u, v, |interior| {
        let mut vertices = Vec::with_capacity(interior.len() + 2);
        vertices.push(u);
        vertices.extend_from_slice(interior);
        if u != v {
            vertices.push(v);
        }
        paths.push(Path { vertices });
    })?;
    Ok(paths)
}

/// The subcube spanned by `u` and the flip directions of its neighbors `x`.
pub fn raised_subcube(u: Vertex, x: &VertexSet) -> Result<VertexSet> {
    if x.dim() != u.dim() {
        return Err(Error::DimensionMismatch {
            left: u.dim(),
            right: x.dim(),
        });
    }
    if x.is_empty() {
        return Err(Error::Precondition(
            "raised subcube needs at least one neighbor".into(),
        ));
    }
    let mut directions = 0u32;
    for n in x.iter() {
        if !u.is_adjacent(n) {
            return Err(Error::NotNeighbor(n.to_text(), u.to_text()));
        }
        directions |= u.bits() ^ n.bits();
    }
    interval(u, Vertex::from_raw(u.bits() ^ directions, u.dim()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// The halved cube: one weight-parity class of `Q_h`, adjacent at
/// Hamming distance 2.
#[derive(Clone, Debug)]
pub struct HalvedCube {
    dim: u32,
    parity: Parity,
    vertices: Vec<Vertex>,
}

impl HalvedCube {
    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Vertices in increasing index order.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn adjacent(&self, a: Vertex, b: Vertex) -> bool {
        a.distance(b) == 2
    }

    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let h = self.dim;
        let mut out = Vec::with_capacity((h * (h - 1) / 2) as usize);
        for i in 0..h {
            for j in (i + 1)..h {
                out.push(v.flip(i).flip(j));
            }
        }
        out
    }

    /// Adjacency rows as bitmasks over positions in `vertices()`; only for
    /// graphs with at most 64 vertices (`h ≤ 7`).
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.vertices.len() > 64 {
            return None;
        }
        Some(
            self.vertices
                .iter()
                .map(|&a| {
                    self.vertices
                        .iter()
                        .enumerate()
                        .filter(|&(_, &b)| a.distance(b) == 2)
                        .fold(0u64, |m, (j, _)| m | 1 << j)
                })
                .collect(),
        )
    }
}

pub fn halved_cube(h: u32, parity: Parity) -> Result<HalvedCube> {
    check_dim(h)?;
    if h < 2 {
        return Err(Error::OutOfRange {
            what: "halved cube dimension",
            value: h as i64,
            lo: 2,
            hi: MAX_DIM as i64,
        });
    }
    let want = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    let vertices = (0..(1u32 << h))
        .filter(|b| b.count_ones() % 2 == want)
        .map(|b| Vertex::from_raw(b, h))
        .collect();
    Ok(HalvedCube {
        dim: h,
        parity,
        vertices,
    })
}

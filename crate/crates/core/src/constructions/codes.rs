use crate::cube::{check_dim, Vertex, VertexSet};
use crate::error::{Error, Result};

/// A binary code with a guaranteed minimum Hamming distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCode {
    length: u32,
    min_distance: u32,
    words: Vec<Vertex>,
}

impl BinaryCode {
    /// Checks every pair of distinct words against `min_distance`.
    pub fn new(length: u32, min_distance: u32, words: Vec<Vertex>) -> Result<Self> {
        check_dim(length)?;
        for w in &words {
            if w.dim() != length {
                return Err(Error::DimensionMismatch {
                    left: length,
                    right: w.dim(),
                });
            }
        }
        for (i, a) in words.iter().enumerate() {
            for b in &words[i + 1..] {
                let d = a.distance(*b);
                if d < min_distance {
                    return Err(Error::Precondition(format!(
                        "words {a} and {b} are at distance {d} < {min_distance}"
                    )));
                }
            }
        }
        Ok(BinaryCode {
            length,
            min_distance,
            words,
        })
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn min_distance(&self) -> u32 {
        self.min_distance
    }

    pub fn words(&self) -> &[Vertex] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// The Hamming code of length `2^m − 1`: words whose set positions XOR to 0.
pub fn hamming_code(m: u32) -> Result<BinaryCode> {
    if !(2..=4).contains(&m) {
        return Err(Error::OutOfRange {
            what: "hamming code order",
            value: m as i64,
            lo: 2,
            hi: 4,
        });
    }
    let n = (1u32 << m) - 1;
    let words = (0..(1u32 << n))
        .filter(|&bits| {
            (0..n)
                .filter(|b| bits >> b & 1 == 1)
                .fold(0u32, |acc, b| acc ^ (b + 1))
                == 0
        })
        .map(|bits| Vertex::from_raw(bits, n))
        .collect();
    BinaryCode::new(n, 3, words)
}

/// Greedy lexicographic code: scan vertices by index and keep each one at
/// distance at least `d` from all kept words.
pub fn lexicode(n: u32, d: u32) -> Result<BinaryCode> {
    check_dim(n)?;
    if n > 16 {
        return Err(Error::OutOfRange {
            what: "lexicode length",
            value: n as i64,
            lo: 1,
            hi: 16,
        });
    }
    let mut words: Vec<Vertex> = Vec::new();
    for bits in 0..(1u32 << n) {
        let cand = Vertex::from_raw(bits, n);
        if words.iter().all(|w| w.distance(cand) >= d) {
            words.push(cand);
        }
    }
    BinaryCode::new(n, d, words)
}

/// A deterministic distance-3 code of length `n`: the Hamming code when
/// `n = 2^m − 1`, otherwise the greedy lexicode.
pub fn distance3_code(n: u32) -> Result<BinaryCode> {
    match n {
        3 => hamming_code(2),
        7 => hamming_code(3),
        15 => hamming_code(4),
        _ => lexicode(n, 3),
    }
}

/// Extend each word of a distance-3 code by a parity bit.
///
/// `C_e` closes each word to even weight and `C_o` to odd weight. Both live
/// in `Q_{n+1}`, have pairwise distances ≥ 4, and their union is a total
/// mutual-visibility set.
pub fn parity_extend(code: &BinaryCode) -> Result<(VertexSet, VertexSet)> {
    if code.min_distance() < 3 {
        return Err(Error::Precondition(format!(
            "parity extension needs minimum distance >= 3, got {}",
            code.min_distance()
        )));
    }
    let n = code.length();
    let h = n + 1;
    check_dim(h)?;
    let mut even = VertexSet::with_dim(h);
    let mut odd = VertexSet::with_dim(h);
    for w in code.words() {
        let parity = w.weight() % 2;
        let top = 1u32 << n;
        let (e, o) = if parity == 0 {
            (w.bits(), w.bits() | top)
        } else {
            (w.bits() | top, w.bits())
        };
        even.insert(Vertex::from_raw(e, h));
        odd.insert(Vertex::from_raw(o, h));
    }
    Ok((even, odd))
}

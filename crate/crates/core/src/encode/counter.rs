//! Sequential-counter encoding of "at most k of these literals are true".

/// Clauses of a sequential counter plus how many register variables it uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterEncoding {
    pub clauses: Vec<Vec<i32>>,
    pub aux_count: u32,
}

/// Encode `Σ literals ≤ k` with registers `s_{i,j}` (`i ∈ [n−1]`, `j ∈ [k]`)
/// numbered from `first_aux`: `s_{i,j} = first_aux + (i−1)·k + (j−1)`.
///
/// `k ≥ n` emits nothing and `k = 0` emits one negative unit per literal.
pub fn sequential_counter_at_most_k(literals: &[i32], k: usize, first_aux: i32) -> CounterEncoding {
    let n = literals.len();
    if k >= n {
        return CounterEncoding {
            clauses: Vec::new(),
            aux_count: 0,
        };
    }
    if k == 0 {
        return CounterEncoding {
            clauses: literals.iter().map(|&x| vec![-x]).collect(),
            aux_count: 0,
        };
    }
    let s = |i: usize, j: usize| first_aux + ((i - 1) * k + (j - 1)) as i32;
    let x = |i: usize| literals[i - 1];
    let mut clauses = Vec::with_capacity(2 * n * k + n);
    clauses.push(vec![-x(1), s(1, 1)]);
    for j in 2..=k {
        clauses.push(vec![-s(1, j)]);
    }
    for i in 2..n {
        clauses.push(vec![-x(i), s(i, 1)]);
        clauses.push(vec![-s(i - 1, 1), s(i, 1)]);
        for j in 2..=k {
            clauses.push(vec![-x(i), -s(i - 1, j - 1), s(i, j)]);
            clauses.push(vec![-s(i - 1, j), s(i, j)]);
        }
        clauses.push(vec![-x(i), -s(i - 1, k)]);
    }
    clauses.push(vec![-x(n), -s(n - 1, k)]);
    CounterEncoding {
        clauses,
        aux_count: ((n - 1) * k) as u32,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Does some register assignment satisfy the clauses, given the inputs?
    fn extendable(enc: &CounterEncoding, n: usize, inputs: u32) -> bool {
        let aux = enc.aux_count;
        (0u64..(1 << aux)).any(|regs| {
            enc.clauses.iter().all(|c| {
                c.iter().any(|&l| {
                    let var = l.unsigned_abs() as usize;
                    let val = if var <= n {
                        inputs >> (var - 1) & 1 == 1
                    } else {
                        regs >> (var - n - 1) & 1 == 1
                    };
                    val == (l > 0)
                })
            })
        })
    }

    fn exhaustive(n: usize, k: usize) {
        let lits: Vec<i32> = (1..=n as i32).collect();
        let enc = sequential_counter_at_most_k(&lits, k, n as i32 + 1);
        for inputs in 0u32..(1 << n) {
            assert_eq!(
                extendable(&enc, n, inputs),
                inputs.count_ones() as usize <= k,
                "n={n} k={k} inputs={inputs:b}"
            );
        }
    }

    #[test]
    fn vacuous_when_k_covers_all() {
        let enc = sequential_counter_at_most_k(&[1, 2, 3], 3, 4);
        assert!(enc.clauses.is_empty());
        assert_eq!(enc.aux_count, 0);
        assert!(sequential_counter_at_most_k(&[1, 2], 5, 3)
            .clauses
            .is_empty());
    }

    #[test]
    fn n3_k1_rejects_two_true() {
        let enc = sequential_counter_at_most_k(&[1, 2, 3], 1, 4);
        assert_eq!(enc.aux_count, 2);
        assert!(!extendable(&enc, 3, 0b011));
        assert!(extendable(&enc, 3, 0b100));
    }

    #[test]
    fn truth_tables() {
        for n in 1..=6 {
            for k in 0..=n {
                exhaustive(n, k);
            }
        }
    }

    #[test]
    fn negative_literals() {
        // at most one of ¬a, ¬b: a ∨ b must hold
        let enc = sequential_counter_at_most_k(&[-1, -2], 1, 3);
        let sat = |a: bool, b: bool| {
            [false, true].iter().any(|&s| {
                enc.clauses.iter().all(|c| {
                    c.iter().any(|&l| {
                        let v = match l.unsigned_abs() {
                            1 => a,
                            2 => b,
                            _ => s,
                        };
                        v == (l > 0)
                    })
                })
            })
        };
        assert!(!sat(false, false));
        assert!(sat(true, false));
        assert!(sat(true, true));
    }
}

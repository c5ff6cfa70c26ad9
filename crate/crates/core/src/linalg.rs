//! Exact matrix rank over the rationals and over prime fields.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Sparse integer matrix given as `(row, col, value)` triples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    fn dense<T: Clone + Zero>(&self, conv: impl Fn(i64) -> T) -> Vec<Vec<T>> {
        let mut m = vec![vec![T::zero(); self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            m[r][c] = m[r][c].clone() + conv(v);
        }
        m
    }

    /// `self · rhs` as a dense matrix.
    pub fn mul_dense(&self, rhs: &SparseMatrix) -> Vec<Vec<i64>> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut by_row: Vec<Vec<(usize, i64)>> = vec![Vec::new(); rhs.rows];
        for &(r, c, v) in &rhs.entries {
            by_row[r].push((c, v));
        }
        let mut out = vec![vec![0i64; rhs.cols]; self.rows];
        for &(r, k, a) in &self.entries {
            for &(c, b) in &by_row[k] {
                out[r][c] += a * b;
            }
        }
        out
    }

    /// Rank over the rationals, by fraction-free (Bareiss) elimination.
    ///
    /// Runs in `i128` and restarts in arbitrary precision if an intermediate
    /// minor overflows.
    pub fn rank_rational(&self) -> usize {
        if self.entries.is_empty() {
            return 0;
        }
        let mut m: Vec<Vec<i128>> = self.dense(|v| v as i128);
        match bareiss_rank(&mut m) {
            Some(r) => r,
            None => {
                let mut m: Vec<Vec<BigInt>> = self.dense(BigInt::from);
                bareiss_rank(&mut m).expect("arbitrary precision cannot overflow")
            }
        }
    }

    /// Rank over `F_p`.
    pub fn rank_mod(&self, p: u32) -> usize {
        if self.entries.is_empty() {
            return 0;
        }
        let p64 = p as i64;
        let mut m: Vec<Vec<u64>> = vec![vec![0; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            m[r][c] = ((m[r][c] as i64 + v.rem_euclid(p64)) % p64) as u64;
        }
        rank_mod_p(&mut m, p as u64)
    }
}

trait Exact: Clone + Zero + One + PartialEq {
    /// `(a·b − c·d) / q`, exact, or `None` on overflow.
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, q: &Self) -> Option<Self>;
}

impl Exact for i128 {
    fn cross_div(a: &i128, b: &i128, c: &i128, d: &i128, q: &i128) -> Option<i128> {
        let num = a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)?;
        debug_assert_eq!(num % q, 0);
        Some(num / q)
    }
}

impl Exact for BigInt {
    fn cross_div(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt, q: &BigInt) -> Option<BigInt> {
        Some((a * b - c * d) / q)
    }
}

fn bareiss_rank<T: Exact>(m: &mut [Vec<T>]) -> Option<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let (head, tail) = m.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            for j in col + 1..cols {
                row[j] = T::cross_div(&prow[col], &row[j], &row[col], &prow[j], &prev)?;
            }
            row[col] = T::zero();
        }
        prev = head[rank][col].clone();
        rank += 1;
    }
    Some(rank)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn rank_mod_p(m: &mut [Vec<u64>], p: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = inv_mod(m[rank][col], p);
        let (head, tail) = m.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            let factor = row[col] * inv % p;
            if factor == 0 {
                continue;
            }
            for j in col..cols {
                row[j] = (row[j] + p - factor * prow[j] % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(rows: &[&[i64]]) -> SparseMatrix {
        let mut m = SparseMatrix::zero(rows.len(), rows.first().map_or(0, |r| r.len()));
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                if v != 0 {
                    m.entries.push((i, j, v));
                }
            }
        }
        m
    }

    #[test]
    fn small_ranks() {
        let m = from_dense(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank_rational(), 2);
        assert_eq!(m.rank_mod(2), 1);
        assert_eq!(m.rank_mod(3), 2);
        // Singular only in characteristic 2.
        let m = from_dense(&[&[1, 1], &[-1, 1]]);
        assert_eq!(m.rank_rational(), 2);
        assert_eq!(m.rank_mod(2), 1);
        assert_eq!(m.rank_mod(3), 2);
        assert_eq!(SparseMatrix::zero(3, 4).rank_rational(), 0);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = 4_000_000_000_000_000_000i64;
        let m = from_dense(&[&[big, 0, 0], &[0, big, 0], &[0, 0, big]]);
        let mut narrow: Vec<Vec<i128>> = m.dense(|v| v as i128);
        assert_eq!(bareiss_rank(&mut narrow), None);
        assert_eq!(m.rank_rational(), 3);
    }

    #[test]
    fn repeated_vandermonde_columns() {
        let rows: Vec<Vec<i64>> = (0..12)
            .map(|i| {
                (0..18)
                    .map(|j| (i as i64 + 2).pow((j % 9) as u32))
                    .collect()
            })
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        assert_eq!(from_dense(&refs).rank_rational(), 9);
    }
}

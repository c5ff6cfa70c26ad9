//! f- and h-vectors, f- and h-triangles.

use std::fmt;
use std::ops::{Index, Sub};

use serde::Serialize;

use crate::complex::FacePoset;

/// Integer vector indexed `0..=d+1`.
///
/// For an f-vector entry `i` holds `f_{i-1}`; for an h-vector it holds `h_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CountVector(pub Vec<i64>);

impl CountVector {
    pub fn zeros(len: usize) -> Self {
        CountVector(vec![0; len])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `d` of a vector of length `d + 2`.
    pub fn dim(&self) -> i32 {
        self.0.len() as i32 - 2
    }

    /// Componentwise sum.
    pub fn add(&self, other: &CountVector) -> CountVector {
        assert_eq!(self.len(), other.len(), "length mismatch");
        CountVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Index<usize> for CountVector {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Sub for &CountVector {
    type Output = CountVector;

    fn sub(self, other: &CountVector) -> CountVector {
        assert_eq!(self.len(), other.len(), "length mismatch");
        CountVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl<const N: usize> From<[i64; N]> for CountVector {
    fn from(v: [i64; N]) -> Self {
        CountVector(v.to_vec())
    }
}

impl fmt::Display for CountVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

/// Entry `i` counts members of cardinality `i`.
pub fn f_vector<P: FacePoset + ?Sized>(p: &P) -> CountVector {
    let mut f = CountVector::zeros((p.ambient_dim() + 2).max(0) as usize);
    for m in p.members() {
        f.0[m.len()] += 1;
    }
    f
}

pub fn h_vector<P: FacePoset + ?Sized>(p: &P) -> CountVector {
    f_to_h(&f_vector(p))
}

/// `h_i = Σ_{j≤i} (-1)^{i-j} C(d+1-j, i-j) f_{j-1}` with `d = len - 2`.
pub fn f_to_h(f: &CountVector) -> CountVector {
    let n = f.len() as i64 - 1; // d + 1
    CountVector(
        (0..f.len())
            .map(|i| {
                (0..=i)
                    .map(|j| {
                        let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
                        sign * binomial(n - j as i64, (i - j) as i64) * f[j]
                    })
                    .sum()
            })
            .collect(),
    )
}

/// Inverse of [`f_to_h`]: `f_{i-1} = Σ_{j≤i} C(d+1-j, i-j) h_j`.
pub fn h_to_f(h: &CountVector) -> CountVector {
    let n = h.len() as i64 - 1;
    CountVector(
        (0..h.len())
            .map(|i| {
                (0..=i)
                    .map(|j| binomial(n - j as i64, (i - j) as i64) * h[j])
                    .sum()
            })
            .collect(),
    )
}

/// Lower-triangular integer array, rows `i = 0..=d+1`, row `i` indexed `j = 0..=i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CountTriangle(pub Vec<Vec<i64>>);

impl CountTriangle {
    pub fn zeros(rows: usize) -> Self {
        CountTriangle((0..rows).map(|i| vec![0; i + 1]).collect())
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0)
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.0[i]
    }

    /// Sum of column `j` over all rows.
    pub fn column_sum(&self, j: usize) -> i64 {
        self.0.iter().filter_map(|r| r.get(j)).sum()
    }

    /// Nonzero entries as `((i, j), value)`.
    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.0.iter().enumerate().flat_map(|(i, r)| {
            r.iter()
                .enumerate()
                .filter(|(_, v)| **v != 0)
                .map(move |(j, v)| ((i, j), *v))
        })
    }
}

impl Sub for &CountTriangle {
    type Output = CountTriangle;

    fn sub(self, other: &CountTriangle) -> CountTriangle {
        assert_eq!(self.rows(), other.rows(), "row count mismatch");
        CountTriangle(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
                .collect(),
        )
    }
}

impl fmt::Display for CountTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{i}: {}", CountVector(row.clone()))?;
        }
        Ok(())
    }
}

/// `f_{i,j}` = number of members `σ` with `d(σ) = i-1` and `|σ| = j`, where
/// `d(σ)` is the largest dimension of a member containing `σ`.
pub fn f_triangle<P: FacePoset + ?Sized>(p: &P) -> CountTriangle {
    let mut t = CountTriangle::zeros((p.ambient_dim() + 2).max(0) as usize);
    for (m, depth) in p.members().iter().zip(p.member_depths()) {
        t.0[(depth + 1) as usize][m.len()] += 1;
    }
    t
}

/// Row-wise f-to-h transform: `h_{i,j} = Σ_{k≤j} (-1)^{j-k} C(i-k, j-k) f_{i,k}`.
pub fn f_to_h_triangle(f: &CountTriangle) -> CountTriangle {
    CountTriangle(
        f.0.iter()
            .enumerate()
            .map(|(i, row)| {
                (0..row.len())
                    .map(|j| {
                        (0..=j)
                            .map(|k| {
                                let sign = if (j - k) % 2 == 0 { 1 } else { -1 };
                                sign * binomial((i - k) as i64, (j - k) as i64) * row[k]
                            })
                            .sum()
                    })
                    .collect()
            })
            .collect(),
    )
}

pub fn h_triangle<P: FacePoset + ?Sized>(p: &P) -> CountTriangle {
    f_to_h_triangle(&f_triangle(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{relative_family, SimplicialComplex};
    use crate::face::face;

    fn cx(facets: &[&str]) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|f| face(f)))
    }

    #[test]
    fn bowtie_vectors() {
        let bowtie = cx(&["123", "345"]);
        assert_eq!(f_vector(&bowtie), CountVector::from([1, 5, 6, 2]));
        assert_eq!(h_vector(&bowtie), CountVector::from([1, 2, -1, 0]));
        let lid = cx(&["123", "345", "234"]);
        assert_eq!(f_vector(&lid), CountVector::from([1, 5, 7, 3]));
        assert_eq!(h_vector(&lid), CountVector::from([1, 2, 0, 0]));
        let rel = relative_family(&lid, &bowtie).unwrap();
        assert_eq!(f_vector(&rel), CountVector::from([0, 0, 1, 1]));
        assert_eq!(h_vector(&rel), CountVector::from([0, 0, 1, 0]));
    }

    #[test]
    fn simplex_and_graph() {
        assert_eq!(h_vector(&cx(&["123"])), CountVector::from([1, 0, 0, 0]));
        let k4_plus = cx(&["12", "13", "14", "23", "24", "34", "56", "78"]);
        assert_eq!(h_vector(&k4_plus), CountVector::from([1, 6, 1]));
        assert_eq!(
            f_to_h(&CountVector::from([1, 4, 2])),
            CountVector::from([1, 2, -1])
        );
    }

    #[test]
    fn void_has_zero_f_minus_one() {
        let void = SimplicialComplex::void();
        assert_eq!(f_vector(&void), CountVector::from([0]));
        assert_eq!(
            f_vector(&SimplicialComplex::irrelevant()),
            CountVector::from([1])
        );
    }

    #[test]
    fn triangles_nonpure() {
        let c = cx(&["12", "3"]);
        let f = f_triangle(&c);
        assert_eq!(f.0, vec![vec![0], vec![0, 1], vec![1, 2, 1]]);
        let h = h_triangle(&c);
        assert_eq!(h.0, vec![vec![0], vec![0, 1], vec![1, 0, 0]]);

        let c = cx(&["12", "13", "23", "4"]);
        let f = f_triangle(&c);
        assert_eq!(f.0, vec![vec![0], vec![0, 1], vec![1, 3, 3]]);
        for j in 0..3 {
            assert_eq!(f.column_sum(j), f_vector(&c)[j]);
        }
        let h = h_triangle(&c);
        assert_eq!(h.0, vec![vec![0], vec![0, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn pure_triangle_is_one_row() {
        let bowtie = cx(&["123", "345"]);
        let h = h_triangle(&bowtie);
        assert_eq!(h.row(3), h_vector(&bowtie).entries());
        assert!(h.nonzero().all(|((i, _), _)| i == 3));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(4, -1), 0);
    }
}

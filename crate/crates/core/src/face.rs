use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

/// Vertex label.
pub type Vertex = u32;

type Labels = SmallVec<[Vertex; 8]>;

/// A finite set of vertex labels, stored sorted and without duplicates.
///
/// When every label is below 64 the face also carries a bit mask so that
/// subset tests reduce to a single word operation.
///
/// Faces are ordered by cardinality first and lexicographically within a
/// cardinality. Every collection in this crate is kept in that order.
#[derive(Clone)]
pub struct Face {
    labels: Labels,
    mask: Option<u64>,
}

fn mask_of(labels: &[Vertex]) -> Option<u64> {
    labels
        .iter()
        .try_fold(0u64, |acc, &v| (v < 64).then(|| acc | (1u64 << v)))
}

impl Face {
    /// Builds a face from arbitrary labels; duplicates are merged.
    pub fn new<I: IntoIterator<Item = Vertex>>(labels: I) -> Self {
        let mut labels: Labels = labels.into_iter().collect();
        labels.sort_unstable();
        labels.dedup();
        let mask = mask_of(&labels);
        Face { labels, mask }
    }

    pub fn empty() -> Self {
        Face {
            labels: Labels::new(),
            mask: Some(0),
        }
    }

    /// Builds a face from labels already known to be strictly increasing.
    fn from_sorted(labels: Labels) -> Self {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        let mask = mask_of(&labels);
        Face { labels, mask }
    }

    pub fn labels(&self) -> &[Vertex] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// `|σ| - 1`; the empty face has dimension -1.
    pub fn dim(&self) -> i32 {
        self.labels.len() as i32 - 1
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        match self.mask {
            Some(m) if v < 64 => m & (1 << v) != 0,
            Some(_) => false,
            None => self.labels.binary_search(&v).is_ok(),
        }
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.labels.last().copied()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        if self.len() > other.len() {
            return false;
        }
        if let (Some(a), Some(b)) = (self.mask, other.mask) {
            return a & !b == 0;
        }
        let mut it = other.labels.iter();
        'outer: for v in &self.labels {
            for w in it.by_ref() {
                match w.cmp(v) {
                    Ordering::Less => continue,
                    Ordering::Equal => continue 'outer,
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        if let (Some(a), Some(b)) = (self.mask, other.mask) {
            return a & b == 0;
        }
        !self.labels.iter().any(|v| other.contains_vertex(*v))
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut out = Labels::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.labels, &other.labels);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Face::from_sorted(out)
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face::from_sorted(
            self.labels
                .iter()
                .copied()
                .filter(|v| !other.contains_vertex(*v))
                .collect(),
        )
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face::from_sorted(
            self.labels
                .iter()
                .copied()
                .filter(|v| other.contains_vertex(*v))
                .collect(),
        )
    }

    pub fn with_vertex(&self, v: Vertex) -> Face {
        if self.contains_vertex(v) {
            return self.clone();
        }
        let pos = self.labels.partition_point(|&w| w < v);
        let mut labels = self.labels.clone();
        labels.insert(pos, v);
        Face::from_sorted(labels)
    }

    pub fn without_vertex(&self, v: Vertex) -> Face {
        Face::from_sorted(self.labels.iter().copied().filter(|&w| w != v).collect())
    }

    /// Faces obtained by deleting one vertex, paired with the deleted position.
    pub fn facets_of_boundary(&self) -> impl Iterator<Item = (usize, Face)> + '_ {
        (0..self.len()).map(move |p| {
            let mut labels = self.labels.clone();
            labels.remove(p);
            (p, Face::from_sorted(labels))
        })
    }

    /// All subsets, in no particular order.
    pub fn subsets(&self) -> impl Iterator<Item = Face> + '_ {
        assert!(self.len() < 32, "face too large to enumerate subsets");
        (0u32..(1u32 << self.len())).map(move |bits| {
            Face::from_sorted(
                self.labels
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits & (1 << i) != 0)
                    .map(|(_, v)| *v)
                    .collect(),
            )
        })
    }

    /// The Boolean interval `[self, top]`; empty when `self` is not below `top`.
    pub fn interval_to(&self, top: &Face) -> Vec<Face> {
        if !self.is_subset(top) {
            return Vec::new();
        }
        top.difference(self)
            .subsets()
            .map(|extra| self.union(&extra))
            .collect()
    }

    /// Applies a vertex map. Labels absent from the map are kept.
    pub fn relabel(&self, map: &impl Fn(Vertex) -> Vertex) -> Face {
        Face::new(self.labels.iter().map(|&v| map(v)))
    }
}

impl PartialEq for Face {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Eq for Face {}

impl Hash for Face {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.labels.hash(state)
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.labels.cmp(&other.labels))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "{{")?;
        for (i, v) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl<const N: usize> From<[Vertex; N]> for Face {
    fn from(labels: [Vertex; N]) -> Self {
        Face::new(labels)
    }
}

impl From<&[Vertex]> for Face {
    fn from(labels: &[Vertex]) -> Self {
        Face::new(labels.iter().copied())
    }
}

impl FromIterator<Vertex> for Face {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        Face::new(iter)
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.labels.as_slice().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let labels = Vec::<Vertex>::deserialize(deserializer)?;
        Ok(Face::new(labels))
    }
}

/// Shorthand used throughout the tests: `face("1256")` for small labels,
/// digits read one at a time.
#[doc(hidden)]
pub fn face(digits: &str) -> Face {
    Face::new(digits.chars().filter_map(|c| c.to_digit(10)))
}

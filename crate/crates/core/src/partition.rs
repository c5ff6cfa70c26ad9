//! Boolean-interval partitionings of face families and their statistics.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{FaceFamily, FacePoset};
use crate::counts::{h_triangle, CountVector};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::face::{Face, Vertex};

/// The Boolean interval `[bottom, top]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub bottom: Face,
    pub top: Face,
}

impl Interval {
    pub fn new(bottom: Face, top: Face) -> Self {
        Interval { bottom, top }
    }

    /// Number of faces in the interval, or 0 if `bottom ⊄ top`.
    pub fn size(&self) -> usize {
        if self.bottom.is_subset(&self.top) {
            1 << (self.top.len() - self.bottom.len())
        } else {
            0
        }
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.bottom.is_subset(face) && face.is_subset(&self.top)
    }

    pub fn relabel(&self, map: &impl Fn(Vertex) -> Vertex) -> Interval {
        Interval {
            bottom: self.bottom.relabel(map),
            top: self.top.relabel(map),
        }
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interval {
    /// By top, then bottom.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.top
            .cmp(&other.top)
            .then_with(|| self.bottom.cmp(&other.bottom))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.bottom, self.top)
    }
}

/// A claimed partitioning of a face family into Boolean intervals.
///
/// Serializes as a list of `{"bottom": [...], "top": [...]}` records in
/// canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(transparent)]
pub struct IntervalPartition {
    intervals: Vec<Interval>,
}

impl Serialize for IntervalPartition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.canonical().intervals.serialize(serializer)
    }
}

impl IntervalPartition {
    pub fn new(intervals: Vec<Interval>) -> Self {
        IntervalPartition { intervals }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn push(&mut self, interval: Interval) {
        self.intervals.push(interval);
    }

    pub fn extend(&mut self, other: impl IntoIterator<Item = Interval>) {
        self.intervals.extend(other);
    }

    pub fn retain(&mut self, keep: impl FnMut(&Interval) -> bool) {
        self.intervals.retain(keep);
    }

    /// Sorted by top, then bottom.
    pub fn canonical(&self) -> IntervalPartition {
        let mut intervals = self.intervals.clone();
        intervals.sort();
        IntervalPartition { intervals }
    }

    pub fn relabel(&self, map: &impl Fn(Vertex) -> Vertex) -> IntervalPartition {
        IntervalPartition {
            intervals: self.intervals.iter().map(|i| i.relabel(map)).collect(),
        }
    }

    /// Interval counts keyed by `(|top|, |bottom|)`.
    pub fn stats(&self) -> BTreeMap<(usize, usize), usize> {
        let mut stats = BTreeMap::new();
        for iv in &self.intervals {
            *stats.entry((iv.top.len(), iv.bottom.len())).or_insert(0) += 1;
        }
        stats
    }
}

impl FromIterator<Interval> for IntervalPartition {
    fn from_iter<I: IntoIterator<Item = Interval>>(iter: I) -> Self {
        IntervalPartition::new(iter.into_iter().collect())
    }
}

/// First reason a claimed partitioning is not one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    BottomNotBelowTop { interval: Interval },
    MissingMember { interval: Interval, face: Face },
    NonMaximalTop { interval: Interval },
    DoublyCovered { face: Face },
    Uncovered { faces: Vec<Face> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BottomNotBelowTop { interval } => {
                write!(f, "bottom of {interval} is not contained in its top")
            }
            Violation::MissingMember { interval, face } => {
                write!(f, "{face} in {interval} is not a member of the family")
            }
            Violation::NonMaximalTop { interval } => {
                write!(f, "top of {interval} is not a maximal member")
            }
            Violation::DoublyCovered { face } => write!(f, "{face} lies in two intervals"),
            Violation::Uncovered { faces } => {
                write!(f, "uncovered:")?;
                for face in faces {
                    write!(f, " {face}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalStat {
    pub top_size: usize,
    pub bottom_size: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub valid: bool,
    pub violation: Option<Violation>,
    pub interval_stats: Vec<IntervalStat>,
}

impl PartitionReport {
    pub fn into_result(self) -> Result<()> {
        match self.violation {
            None => Ok(()),
            Some(v) => Err(Error::InvalidPartitioning(Box::new(v))),
        }
    }
}

pub fn verify_partitioning<P: FacePoset + ?Sized>(
    fam: &P,
    p: &IntervalPartition,
) -> PartitionReport {
    verify_partitioning_with(fam, p, Exec::default())
}

/// Checks that every interval lies inside the family with a maximal top,
/// that intervals are disjoint, and that together they cover the family.
///
/// Interval membership is checked set by set, since families need not be
/// downward closed.
pub fn verify_partitioning_with<P: FacePoset + ?Sized>(
    fam: &P,
    p: &IntervalPartition,
    exec: Exec,
) -> PartitionReport {
    let interval_stats = p
        .stats()
        .into_iter()
        .map(|((top_size, bottom_size), count)| IntervalStat {
            top_size,
            bottom_size,
            count,
        })
        .collect();
    let violation = find_violation(fam, p, exec);
    PartitionReport {
        valid: violation.is_none(),
        violation,
        interval_stats,
    }
}

fn find_violation<P: FacePoset + ?Sized>(
    fam: &P,
    p: &IntervalPartition,
    exec: Exec,
) -> Option<Violation> {
    let members = fam.members();
    let maximal: HashSet<Face> = fam.maximal_members().into_iter().collect();

    let per_interval: Vec<Result<Vec<usize>, Violation>> = exec.map(p.intervals(), |iv| {
        if !iv.bottom.is_subset(&iv.top) {
            return Err(Violation::BottomNotBelowTop {
                interval: iv.clone(),
            });
        }
        let mut faces = iv.bottom.interval_to(&iv.top);
        faces.sort();
        let indices = faces
            .into_iter()
            .map(|face| {
                members
                    .get_index_of(&face)
                    .ok_or_else(|| Violation::MissingMember {
                        interval: iv.clone(),
                        face,
                    })
            })
            .collect::<Result<Vec<usize>, Violation>>()?;
        if !maximal.contains(&iv.top) {
            return Err(Violation::NonMaximalTop {
                interval: iv.clone(),
            });
        }
        Ok(indices)
    });

    let mut covered = vec![false; members.len()];
    for r in per_interval {
        let indices = match r {
            Ok(ix) => ix,
            Err(v) => return Some(v),
        };
        for i in indices {
            if std::mem::replace(&mut covered[i], true) {
                return Some(Violation::DoublyCovered {
                    face: members[i].clone(),
                });
            }
        }
    }
    let uncovered: Vec<Face> = covered
        .iter()
        .enumerate()
        .filter(|(_, c)| !**c)
        .map(|(i, _)| members[i].clone())
        .collect();
    (!uncovered.is_empty()).then_some(Violation::Uncovered { faces: uncovered })
}

fn require_valid<P: FacePoset + ?Sized>(fam: &P, p: &IntervalPartition) -> Result<()> {
    verify_partitioning(fam, p).into_result()
}

/// Entry `i` counts intervals whose bottom has `i` elements.
pub fn h_from_partitioning<P: FacePoset + ?Sized>(
    fam: &P,
    p: &IntervalPartition,
) -> Result<CountVector> {
    require_valid(fam, p)?;
    Ok(bottom_size_counts(p, fam.ambient_dim()))
}

pub(crate) fn bottom_size_counts(p: &IntervalPartition, ambient_dim: i32) -> CountVector {
    let mut h = CountVector::zeros((ambient_dim + 2).max(0) as usize);
    for iv in p.intervals() {
        h.0[iv.bottom.len()] += 1;
    }
    h
}

/// For each `r`, the intervals with top of dimension at least `r` partition
/// the members lying under maximal members of dimension at least `r`.
pub fn is_layer_compatible(fam: &FaceFamily, p: &IntervalPartition) -> Result<bool> {
    require_valid(fam, p)?;
    for r in 0..=fam.ambient_dim() {
        let layer = fam.restrict_to_layer(r);
        let restricted: IntervalPartition = p
            .intervals()
            .iter()
            .filter(|iv| iv.top.dim() >= r)
            .cloned()
            .collect();
        if !verify_partitioning(&layer, &restricted).valid {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Interval counts by `(|top|, |bottom|)` reproduce the h-triangle.
pub fn is_h_compatible<P: FacePoset + ?Sized>(fam: &P, p: &IntervalPartition) -> Result<bool> {
    require_valid(fam, p)?;
    let h = h_triangle(fam);
    let stats = p.stats();
    if stats.keys().any(|&(i, j)| i >= h.rows() || j > i) {
        return Ok(false);
    }
    for i in 0..h.rows() {
        for j in 0..=i {
            let count = stats.get(&(i, j)).copied().unwrap_or(0) as i64;
            if count != h.get(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

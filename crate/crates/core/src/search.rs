//! Exhaustive searches: partitionings of face families and shelling orders.

use std::collections::HashSet;

use serde::Serialize;

use crate::complex::{FacePoset, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::face::Face;
use crate::partition::{Interval, IntervalPartition};

/// Bounds on the exhaustive searches. Both are inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest family handed to [`find_partitioning`].
    pub max_members: usize,
    /// Largest facet count handed to [`find_shelling`].
    pub max_facets: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_members: 40,
            max_facets: 12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "snake_case")]
pub enum Partitionability {
    Partitionable(IntervalPartition),
    NotPartitionable,
}

impl Partitionability {
    pub fn witness(&self) -> Option<&IntervalPartition> {
        match self {
            Partitionability::Partitionable(p) => Some(p),
            Partitionability::NotPartitionable => None,
        }
    }
}

/// Fixed-width bit set over member indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn zeros(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Bits::zeros(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn is_disjoint(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == 0)
    }

    fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn union(&self, other: &Bits) -> Bits {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    fn covers_complement_of(&self, covered: &Bits, full: &Bits) -> bool {
        self.0
            .iter()
            .zip(&covered.0)
            .zip(&full.0)
            .all(|((avail, cov), all)| (all & !cov) & !avail == 0)
    }
}

struct Candidate {
    bottom: Face,
    mask: Bits,
}

struct PartitionSearch {
    tops: Vec<Face>,
    candidates: Vec<Vec<Candidate>>,
    full: Bits,
}

#[derive(Clone)]
struct State {
    next: usize,
    covered: Bits,
    chosen: Vec<usize>,
}

impl PartitionSearch {
    fn new<P: FacePoset + ?Sized>(fam: &P) -> Self {
        let members = fam.members();
        let n = members.len();
        let mut tops = fam.maximal_members();
        tops.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let candidates = tops
            .iter()
            .map(|top| {
                let mut bottoms: Vec<Face> = top.subsets().collect();
                bottoms.sort();
                bottoms
                    .into_iter()
                    .filter_map(|bottom| {
                        let mut mask = Bits::zeros(n);
                        for f in bottom.interval_to(top) {
                            mask.set(members.get_index_of(&f)?);
                        }
                        Some(Candidate { bottom, mask })
                    })
                    .collect()
            })
            .collect();
        PartitionSearch {
            tops,
            candidates,
            full: Bits::full(n),
        }
    }

    /// Every uncovered member is still reachable by some remaining candidate,
    /// and every remaining top has at least one usable candidate.
    fn feasible(&self, state: &State) -> bool {
        let mut avail = Bits::zeros(self.full.0.len() * 64);
        for cands in &self.candidates[state.next..] {
            let mut any = false;
            for c in cands.iter().filter(|c| c.mask.is_disjoint(&state.covered)) {
                avail.union_with(&c.mask);
                any = true;
            }
            if !any {
                return false;
            }
        }
        avail.covers_complement_of(&state.covered, &self.full)
    }

    fn children(&self, state: &State) -> Vec<State> {
        self.candidates[state.next]
            .iter()
            .enumerate()
            .filter(|(_, c)| c.mask.is_disjoint(&state.covered))
            .map(|(i, c)| {
                let mut chosen = state.chosen.clone();
                chosen.push(i);
                State {
                    next: state.next + 1,
                    covered: state.covered.union(&c.mask),
                    chosen,
                }
            })
            .filter(|s| self.feasible(s))
            .collect()
    }

    fn dfs(&self, state: &State) -> Option<Vec<usize>> {
        if state.next == self.tops.len() {
            return (state.covered == self.full).then(|| state.chosen.clone());
        }
        self.children(state).iter().find_map(|s| self.dfs(s))
    }

    fn to_partition(&self, chosen: &[usize]) -> IntervalPartition {
        chosen
            .iter()
            .enumerate()
            .map(|(k, &i)| {
                Interval::new(self.candidates[k][i].bottom.clone(), self.tops[k].clone())
            })
            .collect()
    }
}

pub fn find_partitioning<P: FacePoset + ?Sized>(
    fam: &P,
    limits: &SearchLimits,
) -> Result<Partitionability> {
    find_partitioning_with(fam, limits, Exec::default())
}

/// Backtracking over the choice of bottom for each maximal member.
///
/// Maximal members are visited by decreasing dimension, then in canonical
/// order; bottoms are tried in canonical order. The returned witness is the
/// first one in that order, whatever the execution mode.
pub fn find_partitioning_with<P: FacePoset + ?Sized>(
    fam: &P,
    limits: &SearchLimits,
    exec: Exec,
) -> Result<Partitionability> {
    if fam.len() > limits.max_members {
        return Err(Error::SizeLimitExceeded {
            what: "family",
            size: fam.len(),
            limit: limits.max_members,
            flag: "--max-faces",
        });
    }
    let search = PartitionSearch::new(fam);
    let root = State {
        next: 0,
        covered: Bits::zeros(fam.len()),
        chosen: Vec::new(),
    };
    if !search.feasible(&root) {
        return Ok(Partitionability::NotPartitionable);
    }

    // Expand breadth-first, in order, until there is enough independent work.
    let mut frontier = vec![root];
    while frontier.len() < 64 && frontier.iter().all(|s| s.next < search.tops.len()) {
        let next: Vec<State> = frontier.iter().flat_map(|s| search.children(s)).collect();
        if next.is_empty() {
            return Ok(Partitionability::NotPartitionable);
        }
        frontier = next;
    }
    Ok(match exec.find_map_first(&frontier, |s| search.dfs(s)) {
        Some(chosen) => Partitionability::Partitionable(search.to_partition(&chosen)),
        None => Partitionability::NotPartitionable,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "order", rename_all = "snake_case")]
pub enum Shellability {
    Shellable(Vec<Face>),
    NotShellable,
}

/// Facets of `big` that are not faces of `small`, i.e. the maximal faces of `(big, small)`.
fn relative_facets(
    big: &SimplicialComplex,
    small: Option<&SimplicialComplex>,
) -> Result<Vec<Face>> {
    if let Some(small) = small {
        if let Some(missing) = small.faces().find(|f| !big.contains(f)) {
            return Err(Error::NotASubcomplex(missing.clone()));
        }
    }
    Ok(big
        .facets()
        .iter()
        .filter(|f| small.is_none_or(|s| !s.contains(f)))
        .cloned()
        .collect())
}

/// Whether the faces of `facet` not already present form an interval, i.e.
/// have a unique minimal element.
fn step_has_unique_minimum(
    facet: &Face,
    placed: &[&Face],
    small: Option<&SimplicialComplex>,
) -> bool {
    let present =
        |f: &Face| small.is_some_and(|s| s.contains(f)) || placed.iter().any(|p| f.is_subset(p));
    let new: Vec<Face> = facet.subsets().filter(|f| !present(f)).collect();
    // The new faces are closed upward inside ⟨facet⟩, so a unique minimal
    // element exists exactly when their common intersection is itself new.
    match new.split_first() {
        None => false,
        Some((first, rest)) => {
            let meet = rest
                .iter()
                .fold(first.clone(), |acc, f| acc.intersection(f));
            !present(&meet)
        }
    }
}

/// Each facet in turn adds a family of new faces with a unique minimal element.
/// The first facet is checked against `small` as well.
pub fn check_shelling_order(
    big: &SimplicialComplex,
    small: Option<&SimplicialComplex>,
    order: &[Face],
) -> Result<bool> {
    let mut expected = relative_facets(big, small)?;
    let mut given = order.to_vec();
    expected.sort();
    given.sort();
    if expected != given {
        return Err(Error::NotAPermutation);
    }
    let mut placed: Vec<&Face> = Vec::with_capacity(order.len());
    for facet in order {
        if !step_has_unique_minimum(facet, &placed, small) {
            return Ok(false);
        }
        placed.push(facet);
    }
    Ok(true)
}

/// Depth-first search over facet orders, trying facets in canonical order.
/// Sets of placed facets already known to be dead ends are remembered.
pub fn find_shelling(
    big: &SimplicialComplex,
    small: Option<&SimplicialComplex>,
    limits: &SearchLimits,
) -> Result<Shellability> {
    let facets = relative_facets(big, small)?;
    let limit = limits.max_facets.min(64);
    if facets.len() > limit {
        return Err(Error::SizeLimitExceeded {
            what: "facet list",
            size: facets.len(),
            limit,
            flag: "--max-facets",
        });
    }

    struct Ctx<'a> {
        facets: &'a [Face],
        small: Option<&'a SimplicialComplex>,
        dead: HashSet<u64>,
    }

    fn dfs(ctx: &mut Ctx, used: u64, order: &mut Vec<usize>) -> bool {
        if order.len() == ctx.facets.len() {
            return true;
        }
        if ctx.dead.contains(&used) {
            return false;
        }
        for i in 0..ctx.facets.len() {
            if used & (1 << i) != 0 {
                continue;
            }
            let placed: Vec<&Face> = order.iter().map(|&k| &ctx.facets[k]).collect();
            if !step_has_unique_minimum(&ctx.facets[i], &placed, ctx.small) {
                continue;
            }
            order.push(i);
            if dfs(ctx, used | (1 << i), order) {
                return true;
            }
            order.pop();
        }
        ctx.dead.insert(used);
        false
    }

    let mut ctx = Ctx {
        facets: &facets,
        small,
        dead: HashSet::new(),
    };
    let mut order = Vec::new();
    Ok(if dfs(&mut ctx, 0, &mut order) {
        Shellability::Shellable(order.into_iter().map(|i| facets[i].clone()).collect())
    } else {
        Shellability::NotShellable
    })
}

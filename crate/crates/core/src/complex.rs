//! Simplicial complexes, face families and the structural operations on them.

use std::collections::{BTreeMap, HashMap, HashSet};

use indexmap::IndexSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::face::{Face, Vertex};

/// Anything that is a finite family of faces with a known ambient dimension.
///
/// Members are always iterated in the canonical face order.
pub trait FacePoset {
    fn members(&self) -> &IndexSet<Face>;

    /// The `d` used to size f- and h-vectors.
    fn ambient_dim(&self) -> i32;

    /// Inclusion-maximal members, in canonical order.
    fn maximal_members(&self) -> Vec<Face>;

    fn contains(&self, face: &Face) -> bool {
        self.members().contains(face)
    }

    fn len(&self) -> usize {
        self.members().len()
    }

    fn is_empty(&self) -> bool {
        self.members().is_empty()
    }

    /// Largest dimension of a member containing `face`, if any.
    fn member_depth(&self, face: &Face) -> Option<i32> {
        self.maximal_members()
            .iter()
            .filter(|m| face.is_subset(m))
            .map(Face::dim)
            .max()
    }

    /// [`member_depth`](Self::member_depth) of every member, in member order.
    fn member_depths(&self) -> Vec<i32> {
        let members = self.members();
        let mut depths = vec![-1; members.len()];
        for m in self.maximal_members() {
            for s in m.subsets() {
                if let Some(i) = members.get_index_of(&s) {
                    depths[i] = depths[i].max(m.dim());
                }
            }
        }
        depths
    }
}

/// A downward-closed family of faces, given by its facets.
///
/// The void complex has no faces at all; the irrelevant complex has only the
/// empty face. Every other complex contains the empty face.
#[derive(Clone, Debug, Default)]
pub struct SimplicialComplex {
    facets: Vec<Face>,
    faces: IndexSet<Face>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.facets.serialize(serializer)
    }
}

impl SimplicialComplex {
    /// Builds the complex generated by `facets`. Non-maximal inputs are dropped.
    pub fn from_facets<I: IntoIterator<Item = Face>>(facets: I) -> Self {
        let mut candidates: Vec<Face> = facets.into_iter().collect();
        // Largest first, so a candidate can only be absorbed by something kept earlier.
        candidates.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        candidates.dedup();

        let mut kept: Vec<Face> = Vec::with_capacity(candidates.len());
        for cand in candidates {
            let absorbed = kept
                .iter()
                .take_while(|k| k.len() > cand.len())
                .any(|k| cand.is_subset(k));
            if !absorbed {
                kept.push(cand);
            }
        }
        kept.sort();

        let mut all: HashSet<Face> = HashSet::new();
        for f in &kept {
            all.extend(f.subsets());
        }
        let mut faces: Vec<Face> = all.into_iter().collect();
        faces.sort();
        SimplicialComplex {
            facets: kept,
            faces: faces.into_iter().collect(),
        }
    }

    pub fn void() -> Self {
        SimplicialComplex::default()
    }

    /// The complex `{∅}`.
    pub fn irrelevant() -> Self {
        SimplicialComplex::from_facets([Face::empty()])
    }

    /// The complex `⟨face⟩`.
    pub fn simplex(face: Face) -> Self {
        SimplicialComplex::from_facets([face])
    }

    /// All subsets of `vertices` with at most `r + 1` elements.
    pub fn simplex_skeleton(vertices: &Face, r: i32) -> Self {
        let size = (r + 1).max(0) as usize;
        if size >= vertices.len() {
            return SimplicialComplex::simplex(vertices.clone());
        }
        SimplicialComplex::from_facets(k_subsets(vertices.labels(), size))
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn faces(&self) -> impl ExactSizeIterator<Item = &Face> {
        self.faces.iter()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.faces.contains(face)
    }

    /// Dimension of the largest face; -1 for both the void and the irrelevant complex.
    pub fn dim(&self) -> i32 {
        self.facets.iter().map(Face::dim).max().unwrap_or(-1)
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_irrelevant(&self) -> bool {
        self.facets.len() == 1 && self.facets[0].is_empty()
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Union of all faces.
    pub fn vertices(&self) -> Face {
        Face::new(self.facets.iter().flat_map(|f| f.labels().iter().copied()))
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.facets.iter().all(|f| other.contains(f))
    }

    fn require(&self, face: &Face) -> Result<()> {
        if self.contains(face) {
            Ok(())
        } else {
            Err(Error::FaceNotPresent(face.clone()))
        }
    }

    /// `lk(σ) = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ Δ}`.
    pub fn link(&self, face: &Face) -> Result<SimplicialComplex> {
        self.require(face)?;
        Ok(self.link_unchecked(face))
    }

    pub(crate) fn link_unchecked(&self, face: &Face) -> SimplicialComplex {
        SimplicialComplex::from_facets(
            self.facets
                .iter()
                .filter(|f| face.is_subset(f))
                .map(|f| f.difference(face)),
        )
    }

    /// Faces of dimension at most `r`.
    pub fn skeleton(&self, r: i32) -> Result<SimplicialComplex> {
        if r < -1 {
            return Err(Error::InvalidParameters(format!(
                "skeleton dimension {r} < -1"
            )));
        }
        if r >= self.dim() {
            return Ok(self.clone());
        }
        let size = (r + 1) as usize;
        let mut facets = Vec::new();
        for f in &self.facets {
            if f.len() <= size {
                facets.push(f.clone());
            } else {
                facets.extend(k_subsets(f.labels(), size));
            }
        }
        Ok(SimplicialComplex::from_facets(facets))
    }

    /// `d_Δ(σ)`: the largest dimension of a face containing `σ`.
    pub fn facet_depth(&self, face: &Face) -> Result<i32> {
        self.require(face)?;
        Ok(self.facet_depth_unchecked(face))
    }

    pub(crate) fn facet_depth_unchecked(&self, face: &Face) -> i32 {
        self.facets
            .iter()
            .filter(|f| face.is_subset(f))
            .map(Face::dim)
            .max()
            .unwrap_or(-1)
    }

    /// Smallest facet (in canonical order) of the given dimension containing `face`.
    pub(crate) fn first_facet_containing(&self, face: &Face, dim: Option<i32>) -> Option<&Face> {
        self.facets
            .iter()
            .filter(|f| dim.is_none_or(|d| f.dim() == d))
            .find(|f| face.is_subset(f))
    }

    /// The complex as a face family with its own dimension as ambient dimension.
    pub fn to_family(&self) -> FaceFamily {
        FaceFamily::from_sorted(self.faces.clone(), self.dim())
    }
}

impl FacePoset for SimplicialComplex {
    fn members(&self) -> &IndexSet<Face> {
        &self.faces
    }

    fn ambient_dim(&self) -> i32 {
        self.dim()
    }

    fn maximal_members(&self) -> Vec<Face> {
        self.facets.clone()
    }

    fn member_depth(&self, face: &Face) -> Option<i32> {
        self.contains(face)
            .then(|| self.facet_depth_unchecked(face))
    }
}

fn k_subsets(labels: &[Vertex], k: usize) -> Vec<Face> {
    fn rec(labels: &[Vertex], k: usize, start: usize, cur: &mut Vec<Vertex>, out: &mut Vec<Face>) {
        if cur.len() == k {
            out.push(Face::new(cur.iter().copied()));
            return;
        }
        for i in start..labels.len() {
            if labels.len() - i < k - cur.len() {
                break;
            }
            cur.push(labels[i]);
            rec(labels, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(labels, k, 0, &mut Vec::new(), &mut out);
    out
}

/// An arbitrary finite set of faces, not necessarily downward closed.
///
/// Relative complexes `(Γ,Δ)` and objects such as `(Δ,⟨F⟩) ∪ {σ}` are both
/// face families. The ambient dimension is carried explicitly because it
/// cannot be recovered from the members alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceFamily {
    members: IndexSet<Face>,
    ambient_dim: i32,
    maximal: Vec<Face>,
}

impl FaceFamily {
    pub fn new<I: IntoIterator<Item = Face>>(members: I, ambient_dim: i32) -> Result<Self> {
        let mut members: Vec<Face> = members.into_iter().collect();
        members.sort();
        members.dedup();
        if let Some(big) = members.iter().find(|m| m.dim() > ambient_dim) {
            return Err(Error::InvalidParameters(format!(
                "member {big} exceeds ambient dimension {ambient_dim}"
            )));
        }
        Ok(FaceFamily::from_sorted(
            members.into_iter().collect(),
            ambient_dim,
        ))
    }

    /// `members` must already be in canonical order.
    fn from_sorted(members: IndexSet<Face>, ambient_dim: i32) -> Self {
        let maximal = maximal_of(&members);
        FaceFamily {
            members,
            ambient_dim,
            maximal,
        }
    }

    pub fn empty(ambient_dim: i32) -> Self {
        FaceFamily::from_sorted(IndexSet::new(), ambient_dim)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &Face> {
        self.members.iter()
    }

    /// `members ∪ {face}`.
    pub fn adjoin_face(&self, face: Face) -> Result<FaceFamily> {
        if self.members.contains(&face) {
            return Err(Error::AlreadyPresent(face));
        }
        let ambient_dim = self.ambient_dim.max(face.dim());
        FaceFamily::new(self.members.iter().cloned().chain([face]), ambient_dim)
    }

    /// Members contained in some maximal member of dimension at least `r`.
    pub fn restrict_to_layer(&self, r: i32) -> FaceFamily {
        let depths = self.member_depths();
        FaceFamily::from_sorted(
            self.members
                .iter()
                .zip(depths)
                .filter(|(_, depth)| *depth >= r)
                .map(|(m, _)| m.clone())
                .collect(),
            self.ambient_dim,
        )
    }
}

fn maximal_of(members: &IndexSet<Face>) -> Vec<Face> {
    let mut by_vertex: HashMap<Vertex, Vec<usize>> = HashMap::new();
    for (i, m) in members.iter().enumerate() {
        for &v in m.labels() {
            by_vertex.entry(v).or_default().push(i);
        }
    }
    members
        .iter()
        .filter(|m| {
            if m.is_empty() {
                return members.len() == 1;
            }
            let holders = m
                .labels()
                .iter()
                .map(|v| &by_vertex[v])
                .min_by_key(|l| l.len())
                .expect("nonempty face");
            !holders.iter().any(|&j| {
                let other = &members[j];
                other.len() > m.len() && m.is_subset(other)
            })
        })
        .cloned()
        .collect()
}

impl FacePoset for FaceFamily {
    fn members(&self) -> &IndexSet<Face> {
        &self.members
    }

    fn ambient_dim(&self) -> i32 {
        self.ambient_dim
    }

    fn maximal_members(&self) -> Vec<Face> {
        self.maximal.clone()
    }

    fn member_depth(&self, face: &Face) -> Option<i32> {
        self.maximal
            .iter()
            .filter(|m| face.is_subset(m))
            .map(Face::dim)
            .max()
    }
}

/// `(Γ,Δ)`: faces of `big` that are not faces of `small`.
pub fn relative_family(big: &SimplicialComplex, small: &SimplicialComplex) -> Result<FaceFamily> {
    if let Some(missing) = small.faces().find(|f| !big.contains(f)) {
        return Err(Error::NotASubcomplex(missing.clone()));
    }
    Ok(FaceFamily::from_sorted(
        big.faces()
            .filter(|f| !small.contains(f))
            .cloned()
            .collect(),
        big.dim(),
    ))
}

/// Result of [`glue_mapped`]: the glued complex and where every guest vertex went.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub complex: SimplicialComplex,
    pub vertex_map: BTreeMap<Vertex, Vertex>,
}

/// Glues `guest` onto `host` along `identification` (guest vertex to host vertex).
///
/// Guest vertices outside the identification receive fresh labels, one above
/// the largest host label and upward, assigned in increasing guest-label order.
pub fn glue(
    host: &SimplicialComplex,
    guest: &SimplicialComplex,
    identification: &BTreeMap<Vertex, Vertex>,
) -> Result<SimplicialComplex> {
    glue_mapped(host, guest, identification).map(|g| g.complex)
}

pub fn glue_mapped(
    host: &SimplicialComplex,
    guest: &SimplicialComplex,
    identification: &BTreeMap<Vertex, Vertex>,
) -> Result<Gluing> {
    let guest_vertices = guest.vertices();
    if let Some((&g, _)) = identification
        .iter()
        .find(|(g, _)| !guest_vertices.contains_vertex(**g))
    {
        return Err(Error::InvalidParameters(format!(
            "identified vertex {g} is not a guest vertex"
        )));
    }
    let mut seen: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    for (&g, &h) in identification {
        if let Some(prev) = seen.insert(h, g) {
            return Err(Error::NonInjectiveIdentification(prev, g));
        }
    }
    let domain = Face::new(identification.keys().copied());
    for facet in guest.facets() {
        let identified = facet.intersection(&domain);
        let image = identified.relabel(&|v| identification[&v]);
        if !host.contains(&image) {
            return Err(Error::InconsistentIdentification {
                guest: identified,
                image,
            });
        }
    }

    let mut next = fresh_label(host);
    let mut vertex_map = identification.clone();
    for &v in guest_vertices.labels() {
        vertex_map.entry(v).or_insert_with(|| {
            next += 1;
            next - 1
        });
    }
    let complex = SimplicialComplex::from_facets(
        host.facets().iter().cloned().chain(
            guest
                .facets()
                .iter()
                .map(|f| f.relabel(&|v| vertex_map[&v])),
        ),
    );
    Ok(Gluing {
        complex,
        vertex_map,
    })
}

/// First label above every vertex of `c`; 1 when `c` has no vertices.
pub(crate) fn fresh_label(c: &SimplicialComplex) -> Vertex {
    c.vertices().max_vertex().map_or(1, |m| m + 1)
}

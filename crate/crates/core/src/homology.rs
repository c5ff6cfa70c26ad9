//! Reduced simplicial homology over a field, Cohen–Macaulay tests, depth and
//! Cohen–Macaulay extenders.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::face::Face;
use crate::linalg::SparseMatrix;

/// Coefficient field: the rationals (characteristic 0) or `F_p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u32,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    pub fn new(characteristic: u32) -> Result<Self> {
        if characteristic == 0 || is_prime(characteristic) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(Error::InvalidField(characteristic))
        }
    }

    pub fn characteristic(self) -> u32 {
        self.characteristic
    }

    fn rank(self, m: &SparseMatrix) -> usize {
        match self.characteristic {
            0 => m.rank_rational(),
            p => m.rank_mod(p),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F_{p}"),
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u32(self.characteristic)
    }
}

fn is_prime(n: u32) -> bool {
    // Limited so that products of residues fit in u64.
    (2..1 << 31).contains(&n)
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Augmented chain complex of a pair `(big, small)`.
///
/// `bases[i + 1]` lists the faces of dimension `i` in `big` but not in
/// `small`, for `i = -1..=dim big`. `boundaries[i + 1]` is `∂_i : C_i → C_{i-1}`
/// with the sign of dropping the vertex at position `p` equal to `(-1)^p`.
#[derive(Clone, Debug)]
pub struct ChainComplexData {
    pub bases: Vec<Vec<Face>>,
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplexData {
    /// Chain complex of `big` relative to `small`; pass the void complex for
    /// absolute homology.
    pub fn new(big: &SimplicialComplex, small: &SimplicialComplex) -> Result<Self> {
        if let Some(missing) = small.faces().find(|f| !big.contains(f)) {
            return Err(Error::NotASubcomplex(missing.clone()));
        }
        Ok(Self::build(big, small))
    }

    fn build(big: &SimplicialComplex, small: &SimplicialComplex) -> Self {
        let top = big.dim().max(-1);
        let mut bases: Vec<Vec<Face>> = vec![Vec::new(); (top + 2) as usize];
        for f in big.faces().filter(|f| !small.contains(f)) {
            bases[f.len()].push(f.clone());
        }
        let index: Vec<HashMap<&Face, usize>> = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, f)| (f, i)).collect())
            .collect();
        let mut boundaries = vec![SparseMatrix::zero(0, bases[0].len())];
        for size in 1..bases.len() {
            let mut m = SparseMatrix::zero(bases[size - 1].len(), bases[size].len());
            for (col, f) in bases[size].iter().enumerate() {
                for (pos, g) in f.facets_of_boundary() {
                    if let Some(&row) = index[size - 1].get(&g) {
                        m.entries
                            .push((row, col, if pos % 2 == 0 { 1 } else { -1 }));
                    }
                }
            }
            boundaries.push(m);
        }
        ChainComplexData { bases, boundaries }
    }

    /// Top degree `d`.
    pub fn top_degree(&self) -> i32 {
        self.bases.len() as i32 - 2
    }

    /// `∂_{i-1} ∘ ∂_i = 0` for every `i`.
    pub fn boundary_squares_to_zero(&self) -> bool {
        self.boundaries.windows(2).all(|w| {
            w[0].mul_dense(&w[1])
                .iter()
                .all(|row| row.iter().all(|&x| x == 0))
        })
    }

    pub fn betti(&self, field: FieldSpec) -> HomologyProfile {
        let ranks: Vec<usize> = self.boundaries.iter().map(|m| field.rank(m)).collect();
        let betti = (0..self.bases.len())
            .map(|k| {
                let next = ranks.get(k + 1).copied().unwrap_or(0);
                (self.bases[k].len() - ranks[k] - next) as u64
            })
            .collect();
        HomologyProfile { field, betti }
    }
}

/// Reduced Betti numbers `β_i`, `i = -1..=d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    pub field: FieldSpec,
    betti: Vec<u64>,
}

impl HomologyProfile {
    /// `β_i`, zero outside the stored range.
    pub fn get(&self, i: i32) -> u64 {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.betti.get(k))
            .copied()
            .unwrap_or(0)
    }

    /// Betti numbers starting at degree `-1`.
    pub fn as_slice(&self) -> &[u64] {
        &self.betti
    }

    pub fn top_degree(&self) -> i32 {
        self.betti.len() as i32 - 2
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti.iter().all(|&b| b == 0)
    }

    /// Degrees with nonzero homology, ascending.
    pub fn nonzero_degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.betti
            .iter()
            .enumerate()
            .filter(|(_, b)| **b != 0)
            .map(|(k, _)| k as i32 - 1)
    }

    /// `Σ (-1)^i β_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 1 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

impl Serialize for HomologyProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Report {
            field: FieldSpec,
            betti: BTreeMap<i32, u64>,
        }
        Report {
            field: self.field,
            betti: (-1..=self.top_degree()).map(|i| (i, self.get(i))).collect(),
        }
        .serialize(serializer)
    }
}

pub fn reduced_betti(c: &SimplicialComplex, field: FieldSpec) -> Result<HomologyProfile> {
    if c.is_void() {
        return Err(Error::VoidComplex);
    }
    Ok(ChainComplexData::build(c, &SimplicialComplex::void()).betti(field))
}

/// `H̃_*(big, small)`; a void `small` gives the absolute homology of `big`.
pub fn relative_betti(
    big: &SimplicialComplex,
    small: &SimplicialComplex,
    field: FieldSpec,
) -> Result<HomologyProfile> {
    if big.is_void() {
        return Err(Error::VoidComplex);
    }
    Ok(ChainComplexData::new(big, small)?.betti(field))
}

/// A face whose link has homology where it should not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkObstruction {
    pub face: Face,
    pub degree: i32,
    pub rank: u64,
}

impl fmt::Display for LinkObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "H_{}(lk {}) has rank {}",
            self.degree, self.face, self.rank
        )
    }
}

fn pair_link_betti(
    big: &SimplicialComplex,
    small: &SimplicialComplex,
    face: &Face,
    field: FieldSpec,
) -> HomologyProfile {
    let lk_big = big.link_unchecked(face);
    let lk_small = if small.contains(face) {
        small.link_unchecked(face)
    } else {
        SimplicialComplex::void()
    };
    ChainComplexData::build(&lk_big, &lk_small).betti(field)
}

/// First face (canonical order) whose pair link homology is nonzero in a
/// degree `i` with `|σ| + i ≠ d`.
pub fn relative_cm_violation_with(
    big: &SimplicialComplex,
    small: &SimplicialComplex,
    field: FieldSpec,
    exec: Exec,
) -> Result<Option<LinkObstruction>> {
    if big.is_void() {
        return Err(Error::VoidComplex);
    }
    if let Some(missing) = small.faces().find(|f| !big.contains(f)) {
        return Err(Error::NotASubcomplex(missing.clone()));
    }
    let d = big.dim();
    let faces: Vec<Face> = big.faces().cloned().collect();
    Ok(exec.find_map_first(&faces, |sigma| {
        let h = pair_link_betti(big, small, sigma, field);
        let degree = h.nonzero_degrees().find(|&i| sigma.len() as i32 + i != d)?;
        Some(LinkObstruction {
            face: sigma.clone(),
            degree,
            rank: h.get(degree),
        })
    }))
}

pub fn is_relative_cm(
    big: &SimplicialComplex,
    small: &SimplicialComplex,
    field: FieldSpec,
) -> Result<bool> {
    relative_cm_violation_with(big, small, field, Exec::default()).map(|v| v.is_none())
}

/// Reisner's criterion: the first failing link, if any.
pub fn cm_violation_with(
    c: &SimplicialComplex,
    field: FieldSpec,
    exec: Exec,
) -> Result<Option<LinkObstruction>> {
    relative_cm_violation_with(c, &SimplicialComplex::void(), field, exec)
}

pub fn is_cohen_macaulay_with(c: &SimplicialComplex, field: FieldSpec, exec: Exec) -> Result<bool> {
    cm_violation_with(c, field, exec).map(|v| v.is_none())
}

pub fn is_cohen_macaulay(c: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    is_cohen_macaulay_with(c, field, Exec::default())
}

/// Depth of the face ring, computed two ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    pub depth: i32,
    /// `dim 𝕜[Δ] = d + 1`.
    pub krull_dim: i32,
    /// Face and degree attaining the minimum, when below `d + 1`.
    pub witness: Option<LinkObstruction>,
    /// `1 + max{r : Δ^{(r)} is Cohen–Macaulay}`.
    pub skeleton_depth: i32,
}

pub fn depth_report_with(
    c: &SimplicialComplex,
    field: FieldSpec,
    exec: Exec,
) -> Result<DepthReport> {
    if c.is_void() {
        return Err(Error::VoidComplex);
    }
    let d = c.dim();
    let faces: Vec<Face> = c.faces().cloned().collect();
    let per_face: Vec<Option<LinkObstruction>> = exec.map(&faces, |sigma| {
        let h = reduced_betti(&c.link_unchecked(sigma), field).expect("links are nonvoid");
        let degree = h.nonzero_degrees().find(|&i| (0..d).contains(&i))?;
        Some(LinkObstruction {
            face: sigma.clone(),
            degree,
            rank: h.get(degree),
        })
    });
    let witness = per_face
        .into_iter()
        .flatten()
        .min_by_key(|w| w.face.len() as i32 + w.degree + 1);
    let depth = witness
        .as_ref()
        .map_or(d + 1, |w| (w.face.len() as i32 + w.degree + 1).min(d + 1));

    let mut skeleton_depth = 0;
    for r in (-1..=d).rev() {
        if is_cohen_macaulay_with(&c.skeleton(r)?, field, exec)? {
            skeleton_depth = r + 1;
            break;
        }
    }
    if depth != skeleton_depth {
        return Err(Error::DepthMismatch {
            homological: depth,
            skeleton: skeleton_depth,
        });
    }
    Ok(DepthReport {
        depth,
        krull_dim: d + 1,
        witness,
        skeleton_depth,
    })
}

pub fn depth_report(c: &SimplicialComplex, field: FieldSpec) -> Result<DepthReport> {
    depth_report_with(c, field, Exec::default())
}

pub fn depth(c: &SimplicialComplex, field: FieldSpec) -> Result<i32> {
    depth_report(c, field).map(|r| r.depth)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CmExtenderOutcome {
    /// The `d`-skeleton of the simplex on the vertex set.
    Extender {
        extender: SimplicialComplex,
        depth: i32,
        added_faces: usize,
    },
    /// `depth < d`: the link `lk σ` has `H̃_i ≠ 0` with `|σ| + i + 1 = depth`.
    NoExtender {
        face: Face,
        degree: i32,
        depth: i32,
        /// Where the full `d`-skeleton on the same vertices fails relative CM.
        candidate_failure: LinkObstruction,
    },
}

impl CmExtenderOutcome {
    pub fn extender(&self) -> Option<&SimplicialComplex> {
        match self {
            CmExtenderOutcome::Extender { extender, .. } => Some(extender),
            CmExtenderOutcome::NoExtender { .. } => None,
        }
    }
}

pub fn cm_extender_with(
    c: &SimplicialComplex,
    field: FieldSpec,
    exec: Exec,
) -> Result<CmExtenderOutcome> {
    let report = depth_report_with(c, field, exec)?;
    let d = c.dim();
    let candidate = SimplicialComplex::simplex_skeleton(&c.vertices(), d);
    if report.depth >= d {
        if let Some(v) = cm_violation_with(&candidate, field, exec)? {
            return Err(Error::InvalidResult(format!(
                "skeleton extender is not Cohen-Macaulay: {v}"
            )));
        }
        if let Some(v) = relative_cm_violation_with(&candidate, c, field, exec)? {
            return Err(Error::InvalidResult(format!(
                "extender pair is not relative Cohen-Macaulay: {v}"
            )));
        }
        let added_faces = candidate.num_faces() - c.num_faces();
        return Ok(CmExtenderOutcome::Extender {
            extender: candidate,
            depth: report.depth,
            added_faces,
        });
    }
    let witness = report.witness.expect("depth below d + 1 has a witness");
    let candidate_failure =
        relative_cm_violation_with(&candidate, c, field, exec)?.ok_or_else(|| {
            Error::InvalidResult(format!(
                "depth {} < {d} yet the full skeleton is a relative Cohen-Macaulay extender",
                report.depth
            ))
        })?;
    Ok(CmExtenderOutcome::NoExtender {
        face: witness.face,
        degree: witness.degree,
        depth: report.depth,
        candidate_failure,
    })
}

pub fn cm_extender(c: &SimplicialComplex, field: FieldSpec) -> Result<CmExtenderOutcome> {
    cm_extender_with(c, field, Exec::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::face::face;

    fn cx(facets: &[&str]) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|f| face(f)))
    }

    const Q: FieldSpec = FieldSpec::RATIONALS;

    #[test]
    fn fields() {
        assert!(FieldSpec::new(4).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert_eq!(FieldSpec::new(7).unwrap().to_string(), "F_7");
    }

    #[test]
    fn basic_betti() {
        let circle = cx(&["12", "13", "23"]);
        assert_eq!(reduced_betti(&circle, Q).unwrap().as_slice(), &[0, 0, 1]);
        let irr = SimplicialComplex::irrelevant();
        assert_eq!(reduced_betti(&irr, Q).unwrap().as_slice(), &[1]);
        let two = cx(&["123", "456"]);
        assert_eq!(reduced_betti(&two, Q).unwrap().as_slice(), &[0, 1, 0, 0]);
        assert_eq!(
            reduced_betti(&SimplicialComplex::void(), Q),
            Err(Error::VoidComplex)
        );
    }

    #[test]
    fn relative() {
        let disk = cx(&["123"]);
        let rim = cx(&["12", "13", "23"]);
        assert_eq!(
            relative_betti(&disk, &rim, Q).unwrap().as_slice(),
            &[0, 0, 0, 1]
        );
        assert!(relative_betti(&disk, &disk, Q).unwrap().is_acyclic());
        let lid = cx(&["123", "345", "234"]);
        let bowtie = cx(&["123", "345"]);
        let cc = ChainComplexData::new(&lid, &bowtie).unwrap();
        assert_eq!(cc.bases[2], vec![face("24")]);
        assert!(cc.betti(Q).is_acyclic());
        assert!(matches!(
            relative_betti(&rim, &disk, Q),
            Err(Error::NotASubcomplex(_))
        ));
    }

    #[test]
    fn boundary_squared() {
        let cc = ChainComplexData::new(&cx(&["1234", "2345"]), &SimplicialComplex::void()).unwrap();
        assert!(cc.boundary_squares_to_zero());
    }

    #[test]
    fn projective_plane_depends_on_field() {
        // Six-vertex triangulation of RP^2.
        let rp2 = cx(&[
            "124", "126", "135", "136", "145", "234", "235", "256", "346", "456",
        ]);
        assert_eq!(reduced_betti(&rp2, Q).unwrap().as_slice(), &[0, 0, 0, 0]);
        let f2 = FieldSpec::new(2).unwrap();
        assert_eq!(reduced_betti(&rp2, f2).unwrap().as_slice(), &[0, 0, 1, 1]);
        assert!(is_cohen_macaulay(&rp2, Q).unwrap());
        assert!(!is_cohen_macaulay(&rp2, f2).unwrap());
    }

    #[test]
    fn cohen_macaulay() {
        assert!(is_cohen_macaulay(&cx(&["123"]), Q).unwrap());
        let bowtie = cx(&["123", "345"]);
        let v = cm_violation_with(&bowtie, Q, Exec::Sequential)
            .unwrap()
            .unwrap();
        assert_eq!((v.face, v.degree), (face("3"), 0));
        let skel = SimplicialComplex::simplex_skeleton(&face("12345"), 2);
        assert!(is_cohen_macaulay(&skel, Q).unwrap());
        assert!(!is_cohen_macaulay(&cx(&["12", "3"]), Q).unwrap());
    }

    #[test]
    fn relative_cm() {
        let lid = cx(&["123", "345", "234"]);
        let bowtie = cx(&["123", "345"]);
        assert!(is_relative_cm(&lid, &bowtie, Q).unwrap());
        assert!(!is_relative_cm(&bowtie, &SimplicialComplex::void(), Q).unwrap());
        let two = cx(&["123", "456"]);
        let full = SimplicialComplex::simplex_skeleton(&face("123456"), 2);
        assert!(!is_relative_cm(&full, &two, Q).unwrap());
    }

    #[test]
    fn depths() {
        assert_eq!(depth(&cx(&["123", "345"]), Q).unwrap(), 2);
        assert_eq!(depth(&cx(&["123", "456"]), Q).unwrap(), 1);
        assert_eq!(depth(&cx(&["1"]), Q).unwrap(), 1);
        let sphere = SimplicialComplex::simplex_skeleton(&face("1234"), 2);
        assert_eq!(depth(&sphere, Q).unwrap(), 3);
        assert_eq!(depth(&cx(&["123", "34"]), Q).unwrap(), 2);
        assert_eq!(depth(&SimplicialComplex::irrelevant(), Q).unwrap(), 0);
    }

    #[test]
    fn cm_extenders() {
        let bowtie = cx(&["123", "345"]);
        let out = cm_extender(&bowtie, Q).unwrap();
        let ext = out.extender().unwrap();
        assert_eq!(ext, &SimplicialComplex::simplex_skeleton(&face("12345"), 2));

        let two = cx(&["123", "456"]);
        match cm_extender(&two, Q).unwrap() {
            CmExtenderOutcome::NoExtender {
                face: f,
                degree,
                depth,
                ..
            } => {
                assert_eq!((f, degree, depth), (Face::empty(), 0, 1));
            }
            other => panic!("unexpected {other:?}"),
        }

        let sphere = SimplicialComplex::simplex_skeleton(&face("1234"), 2);
        match cm_extender(&sphere, Q).unwrap() {
            CmExtenderOutcome::Extender {
                extender,
                added_faces,
                ..
            } => {
                assert_eq!(extender, sphere);
                assert_eq!(added_faces, 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn report_serialization() {
        let h = reduced_betti(&cx(&["12", "13", "23"]), Q).unwrap();
        assert_eq!(
            serde_json::to_string(&h).unwrap(),
            r#"{"field":0,"betti":{"-1":0,"0":0,"1":1}}"#
        );
    }
}

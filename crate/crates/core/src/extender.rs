//! Prepartition and partition extenders, whole-complex partition extenders
//! (pure and nonpure), h-vector decompositions and size estimates.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::complex::{glue_mapped, relative_family, FaceFamily, FacePoset, SimplicialComplex};
use crate::counts::{binomial, f_vector, h_triangle, h_vector, CountTriangle, CountVector};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::face::{Face, Vertex};
use crate::partition::{
    bottom_size_counts, is_h_compatible, is_layer_compatible, verify_partitioning_with, Interval,
    IntervalPartition,
};

/// One `K_τ` glued into a partition extender.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    /// The face `τ` that `σ_τ` was identified with.
    pub face: Face,
    /// Dimension of `τ`, so the piece is a `(d, dim τ)`-partition extender.
    pub dim: i32,
    /// Where each vertex of the canonical piece went.
    pub vertex_map: BTreeMap<Vertex, Vertex>,
}

/// A pure `d`-complex with a specified facet `F` and face `σ ⊆ F`, together
/// with partitionings of `(K,⟨F⟩) ∪ {σ}` and, when known, of `(K,⟨F⟩)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkedComplex {
    pub complex: SimplicialComplex,
    pub specified_facet: Face,
    pub specified_face: Face,
    pub with_sigma: IntervalPartition,
    pub without_sigma: Option<IntervalPartition>,
    /// Pieces glued onto the prepartition extender, in gluing order.
    pub pieces: Vec<Piece>,
}

impl MarkedComplex {
    /// `(K,⟨F⟩)`.
    pub fn relative_family(&self) -> FaceFamily {
        relative_family(
            &self.complex,
            &SimplicialComplex::simplex(self.specified_facet.clone()),
        )
        .expect("the specified facet lies in the complex")
    }

    /// `(K,⟨F⟩) ∪ {σ}`.
    pub fn relative_family_with_sigma(&self) -> FaceFamily {
        self.relative_family()
            .adjoin_face(self.specified_face.clone())
            .expect("σ lies in F")
    }

    /// Re-checks both certificates.
    pub fn verify(&self, exec: Exec) -> Result<()> {
        if !self.specified_face.is_subset(&self.specified_facet)
            || !self.complex.facets().contains(&self.specified_facet)
        {
            return Err(Error::InvalidResult(format!(
                "{} is not a face of the facet {}",
                self.specified_face, self.specified_facet
            )));
        }
        check_certificate(
            &self.relative_family_with_sigma(),
            &self.with_sigma,
            "with-sigma",
            exec,
        )?;
        if let Some(p) = &self.without_sigma {
            check_certificate(&self.relative_family(), p, "without-sigma", exec)?;
        }
        Ok(())
    }
}

fn check_certificate<P: FacePoset + ?Sized>(
    fam: &P,
    p: &IntervalPartition,
    certificate: &'static str,
    exec: Exec,
) -> Result<()> {
    match verify_partitioning_with(fam, p, exec).violation {
        None => Ok(()),
        Some(v) => Err(Error::CertificateRejected {
            certificate,
            violation: v.to_string(),
        }),
    }
}

fn check_params(d: i32, k: i32) -> Result<()> {
    if d < -1 || k < -1 || k > d {
        return Err(Error::InvalidParameters(format!(
            "need -1 <= k <= d, got d = {d}, k = {k}"
        )));
    }
    // Canonical labels stay far below the u32 range for any d this guards.
    if d > 16 {
        return Err(Error::InvalidParameters(format!("d = {d} is too large")));
    }
    Ok(())
}

/// The canonical `(d,k)`-prepartition extender on `2d − k + 1` vertices.
///
/// With `m = d − k`, the extra vertices of `D1` are `1..=m`, those of `D2`
/// are `m+1..=2m`, and `σ = {2m+1, …, 2m+k+1}`. The facets are `D1`, `D2`
/// and `W_{1,j} ∪ (σ \ i)` with `W_{1,j} = {j+1, …, j+m+1}`, `0 <= j < m`.
/// `F = D2`.
pub fn prepartition_extender(d: i32, k: i32) -> Result<MarkedComplex> {
    check_params(d, k)?;
    let m = (d - k) as Vertex;
    let sigma = Face::new(2 * m + 1..=2 * m + (k + 1) as Vertex);
    let d1 = Face::new(1..=m).union(&sigma);
    let d2 = Face::new(m + 1..=2 * m).union(&sigma);

    let mut facets = vec![d1.clone(), d2.clone()];
    let mut with_sigma = IntervalPartition::default();
    with_sigma.push(Interval::new(sigma.clone(), d1.clone()));
    for j in 0..m {
        let w1 = Face::new(j + 1..=j + m + 1);
        for &i in sigma.labels() {
            let top = w1.union(&sigma.without_vertex(i));
            let bottom =
                Face::new(sigma.labels().iter().copied().filter(|&v| v < i)).with_vertex(j + 1);
            facets.push(top.clone());
            with_sigma.push(Interval::new(bottom, top));
        }
    }
    let marked = MarkedComplex {
        complex: SimplicialComplex::from_facets(facets),
        specified_facet: d2,
        specified_face: sigma,
        with_sigma,
        without_sigma: None,
        pieces: Vec::new(),
    };
    marked.verify(Exec::default())?;
    Ok(marked)
}

/// Entry `ℓ` counts intervals of the canonical with-σ partitioning whose
/// bottom has `ℓ` elements.
pub fn prepartition_h_profile(d: i32, k: i32) -> Result<CountVector> {
    if k < 0 {
        return Err(Error::InvalidParameters(format!(
            "need 0 <= k <= d, got k = {k}"
        )));
    }
    let p = prepartition_extender(d, k)?;
    Ok(bottom_size_counts(&p.with_sigma, d))
}

/// The recursive `(d,k)`-partition extender.
///
/// Starting from the canonical prepartition extender with `F̃ = D1`, a
/// `(d, dim τ)`-partition extender is glued on for every `σ ⊊ τ ⊆ F̃`, taken
/// by size and then lexicographically. Its specified face goes to `τ` and its
/// remaining specified-facet vertices to `F̃ \ τ`, both in increasing order;
/// its other vertices get fresh labels.
pub fn partition_extender(d: i32, k: i32) -> Result<MarkedComplex> {
    check_params(d, k)?;
    let mut cache = HashMap::new();
    build_partition_extender(d, k, &mut cache).map(|m| (*m).clone())
}

fn build_partition_extender(
    d: i32,
    k: i32,
    cache: &mut HashMap<(i32, i32), Arc<MarkedComplex>>,
) -> Result<Arc<MarkedComplex>> {
    if let Some(m) = cache.get(&(d, k)) {
        return Ok(Arc::clone(m));
    }
    let pre = prepartition_extender(d, k)?;
    let sigma = pre.specified_face.clone();
    let marked = if k == d {
        MarkedComplex {
            without_sigma: Some(IntervalPartition::default()),
            ..pre
        }
    } else {
        let f_tilde = pre
            .with_sigma
            .intervals()
            .iter()
            .find(|iv| iv.bottom == sigma)
            .map(|iv| iv.top.clone())
            .expect("σ is the bottom of an interval");
        let mut complex = pre.complex.clone();
        let mut with_sigma = pre.with_sigma.clone();
        let mut without_sigma = pre.with_sigma.clone();
        without_sigma.retain(|iv| !(iv.bottom == sigma && iv.top == f_tilde));
        let mut pieces = Vec::new();

        let mut taus: Vec<Face> = f_tilde
            .subsets()
            .filter(|t| sigma.is_subset(t) && *t != sigma)
            .collect();
        taus.sort();
        for tau in taus {
            let sub = build_partition_extender(d, tau.dim(), cache)?;
            let identification = order_preserving(&sub.specified_face, &tau)
                .into_iter()
                .chain(order_preserving(
                    &sub.specified_facet.difference(&sub.specified_face),
                    &f_tilde.difference(&tau),
                ))
                .collect();
            let glued = glue_mapped(&complex, &sub.complex, &identification)?;
            let map = |v: Vertex| glued.vertex_map[&v];
            with_sigma.extend(
                sub.without_sigma
                    .as_ref()
                    .expect("partition extenders carry both certificates")
                    .relabel(&map)
                    .intervals()
                    .iter()
                    .cloned(),
            );
            without_sigma.extend(sub.with_sigma.relabel(&map).intervals().iter().cloned());
            complex = glued.complex;
            pieces.push(Piece {
                face: tau,
                dim: sub.specified_face.dim(),
                vertex_map: glued.vertex_map,
            });
        }
        MarkedComplex {
            complex,
            specified_facet: pre.specified_facet,
            specified_face: sigma,
            with_sigma,
            without_sigma: Some(without_sigma),
            pieces,
        }
    };
    marked.verify(Exec::default())?;
    let marked = Arc::new(marked);
    cache.insert((d, k), Arc::clone(&marked));
    Ok(marked)
}

fn order_preserving(from: &Face, to: &Face) -> Vec<(Vertex, Vertex)> {
    debug_assert_eq!(from.len(), to.len());
    from.labels()
        .iter()
        .copied()
        .zip(to.labels().iter().copied())
        .collect()
}

/// What one base face contributed to a whole-complex extender.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Attachment {
    pub face: Face,
    /// The attached piece is a `(piece_dim, dim face)`-partition extender.
    pub piece_dim: i32,
    pub attached_to: Face,
    pub fresh_vertices: Vec<Vertex>,
    pub gamma_intervals: Vec<Interval>,
    pub relative_intervals: Vec<Interval>,
}

/// A partition extender `Γ ⊇ Δ` with certificates for `Γ` and `(Γ,Δ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtenderResult {
    pub extender: SimplicialComplex,
    pub base: SimplicialComplex,
    pub gamma_partition: IntervalPartition,
    pub relative_partition: IntervalPartition,
    pub attachment_log: Vec<Attachment>,
}

impl ExtenderResult {
    /// `(Γ,Δ)` as a face family.
    pub fn relative_family(&self) -> FaceFamily {
        relative_family(&self.extender, &self.base).expect("the base lies in the extender")
    }

    pub fn report(&self) -> ExtenderReport {
        let rel = self.relative_family();
        ExtenderReport {
            base: self.base.clone(),
            extender: self.extender.clone(),
            added_vertices: self.extender.vertices().len() - self.base.vertices().len(),
            gamma_partition: self.gamma_partition.canonical(),
            relative_partition: self.relative_partition.canonical(),
            h_base: h_vector(&self.base),
            h_extender: h_vector(&self.extender),
            h_relative: h_vector(&rel),
            h_triangle_base: h_triangle(&self.base),
            h_triangle_extender: h_triangle(&self.extender),
            h_triangle_relative: h_triangle(&rel),
            attachment_log: self.attachment_log.clone(),
        }
    }
}

/// Serializable summary of an [`ExtenderResult`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtenderReport {
    pub base: SimplicialComplex,
    pub extender: SimplicialComplex,
    pub added_vertices: usize,
    pub gamma_partition: IntervalPartition,
    pub relative_partition: IntervalPartition,
    pub h_base: CountVector,
    pub h_extender: CountVector,
    pub h_relative: CountVector,
    pub h_triangle_base: CountTriangle,
    pub h_triangle_extender: CountTriangle,
    pub h_triangle_relative: CountTriangle,
    pub attachment_log: Vec<Attachment>,
}

/// Partition extender of a pure complex: a `(d, dim σ)`-partition extender is
/// glued onto every face `σ`, along the first facet containing `σ`.
pub fn extender_for_complex(base: &SimplicialComplex) -> Result<ExtenderResult> {
    extender_for_complex_with(base, Exec::default())
}

pub fn extender_for_complex_with(base: &SimplicialComplex, exec: Exec) -> Result<ExtenderResult> {
    if base.is_void() {
        return Err(Error::VoidComplex);
    }
    if !base.is_pure() {
        return Err(Error::NotPure);
    }
    let res = assemble(base, exec, |_| base.dim())?;
    let rel = res.relative_family();
    let identity = &h_vector(&res.extender) - &h_vector(&rel);
    if identity != h_vector(base) {
        return Err(Error::IdentityFailed(format!(
            "h(Γ) - h(Γ,Δ) = {identity} but h(Δ) = {}",
            h_vector(base)
        )));
    }
    Ok(res)
}

/// Extender of an arbitrary complex: the piece on `σ` is a
/// `(d_Δ(σ), dim σ)`-partition extender, glued along the first facet of
/// dimension `d_Δ(σ)` containing `σ`. Both certificates are checked for
/// layer- and h-compatibility, and the h-triangle identity is checked.
pub fn nonpure_extender_for_complex(base: &SimplicialComplex) -> Result<ExtenderResult> {
    nonpure_extender_for_complex_with(base, Exec::default())
}

pub fn nonpure_extender_for_complex_with(
    base: &SimplicialComplex,
    exec: Exec,
) -> Result<ExtenderResult> {
    if base.is_void() {
        return Err(Error::VoidComplex);
    }
    let res = assemble(base, exec, |sigma| base.facet_depth_unchecked(sigma))?;
    let rel = res.relative_family();

    for sigma in base.faces() {
        let (before, after) = (
            base.facet_depth_unchecked(sigma),
            res.extender.facet_depth_unchecked(sigma),
        );
        if before != after {
            return Err(Error::IdentityFailed(format!(
                "facet depth of {sigma} changed from {before} to {after}"
            )));
        }
    }
    let gamma_family = res.extender.to_family();
    for (name, fam, p) in [
        ("gamma", &gamma_family, &res.gamma_partition),
        ("relative", &rel, &res.relative_partition),
    ] {
        if !is_layer_compatible(fam, p)? {
            return Err(Error::CertificateRejected {
                certificate: name,
                violation: "not layer-compatible".into(),
            });
        }
        if !is_h_compatible(fam, p)? {
            return Err(Error::CertificateRejected {
                certificate: name,
                violation: "not h-compatible".into(),
            });
        }
    }
    let identity = &h_triangle(&res.extender) - &h_triangle(&rel);
    if identity != h_triangle(base) {
        return Err(Error::IdentityFailed(format!(
            "h-triangle of Γ minus that of (Γ,Δ) is\n{identity}\nbut the h-triangle of Δ is\n{}",
            h_triangle(base)
        )));
    }
    Ok(res)
}

fn assemble(
    base: &SimplicialComplex,
    exec: Exec,
    piece_dim: impl Fn(&Face) -> i32,
) -> Result<ExtenderResult> {
    let faces: Vec<Face> = base.faces().cloned().collect();
    let mut kinds: Vec<(i32, i32)> = faces.iter().map(|s| (piece_dim(s), s.dim())).collect();
    kinds.sort();
    kinds.dedup();
    // The templates are independent, so they may be built concurrently;
    // gluing below stays in face order.
    let templates: HashMap<(i32, i32), MarkedComplex> = kinds
        .iter()
        .copied()
        .zip(exec.map(&kinds, |&(d, k)| partition_extender(d, k)))
        .map(|(key, m)| m.map(|m| (key, m)))
        .collect::<Result<_>>()?;

    let mut extender = base.clone();
    let mut gamma_partition = IntervalPartition::default();
    let mut relative_partition = IntervalPartition::default();
    let mut attachment_log = Vec::with_capacity(faces.len());
    for sigma in faces {
        let d = piece_dim(&sigma);
        let piece = &templates[&(d, sigma.dim())];
        let facet = base
            .first_facet_containing(&sigma, Some(d))
            .expect("a facet of dimension d_Δ(σ) contains σ")
            .clone();
        let identification: BTreeMap<Vertex, Vertex> =
            order_preserving(&piece.specified_face, &sigma)
                .into_iter()
                .chain(order_preserving(
                    &piece.specified_facet.difference(&piece.specified_face),
                    &facet.difference(&sigma),
                ))
                .collect();
        let glued = glue_mapped(&extender, &piece.complex, &identification)?;
        let map = |v: Vertex| glued.vertex_map[&v];
        let gamma_intervals = piece.with_sigma.relabel(&map).intervals().to_vec();
        let relative_intervals = piece
            .without_sigma
            .as_ref()
            .expect("partition extenders carry both certificates")
            .relabel(&map)
            .intervals()
            .to_vec();
        gamma_partition.extend(gamma_intervals.iter().cloned());
        relative_partition.extend(relative_intervals.iter().cloned());
        let fresh_vertices = glued
            .vertex_map
            .iter()
            .filter(|(g, _)| !identification.contains_key(g))
            .map(|(_, &h)| h)
            .collect();
        attachment_log.push(Attachment {
            face: sigma,
            piece_dim: d,
            attached_to: facet,
            fresh_vertices,
            gamma_intervals,
            relative_intervals,
        });
        extender = glued.complex;
    }

    let res = ExtenderResult {
        extender,
        base: base.clone(),
        gamma_partition,
        relative_partition,
        attachment_log,
    };
    check_certificate(&res.extender, &res.gamma_partition, "gamma", exec)?;
    check_certificate(
        &res.relative_family(),
        &res.relative_partition,
        "relative",
        exec,
    )?;
    Ok(res)
}

/// `h(Γ)`, `h(Γ,Δ)` and their difference, which must be `h(Δ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HDecomposition {
    pub extender: CountVector,
    pub relative: CountVector,
    pub difference: CountVector,
}

pub fn h_decomposition(res: &ExtenderResult) -> Result<HDecomposition> {
    let dec = h_decomposition_of(&res.extender, &res.base)?;
    if res.base.is_pure() {
        let from_gamma = bottom_size_counts(&res.gamma_partition, res.extender.dim());
        let from_rel = bottom_size_counts(&res.relative_partition, res.extender.dim());
        if from_gamma != dec.extender || from_rel != dec.relative {
            return Err(Error::InvalidResult(format!(
                "interval counts {from_gamma} and {from_rel} disagree with h-vectors {} and {}",
                dec.extender, dec.relative
            )));
        }
    }
    Ok(dec)
}

/// Decomposition for any `Δ ⊆ Γ` of equal dimension.
pub fn h_decomposition_of(
    extender: &SimplicialComplex,
    base: &SimplicialComplex,
) -> Result<HDecomposition> {
    if extender.dim() != base.dim() {
        return Err(Error::InvalidResult(format!(
            "extender has dimension {} but base has dimension {}",
            extender.dim(),
            base.dim()
        )));
    }
    let rel = relative_family(extender, base)?;
    let (h_ext, h_rel) = (h_vector(extender), h_vector(&rel));
    let difference = &h_ext - &h_rel;
    let h_base = h_vector(base);
    if difference != h_base {
        return Err(Error::InvalidResult(format!(
            "h(Γ) - h(Γ,Δ) = {difference} but h(Δ) = {h_base}"
        )));
    }
    // Entrywise against the binomial transform of f(Δ).
    let f = f_vector(base);
    let n = f.len() as i64 - 1;
    for i in 0..f.len() {
        let expected: i64 = (0..=i)
            .map(|j| {
                let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
                sign * binomial(n - j as i64, (i - j) as i64) * f[j]
            })
            .sum();
        if difference[i] != expected {
            return Err(Error::InvalidResult(format!(
                "entry {i}: h(Γ) - h(Γ,Δ) gives {} but the transform of f(Δ) gives {expected}",
                difference[i]
            )));
        }
    }
    Ok(HDecomposition {
        extender: h_ext,
        relative: h_rel,
        difference,
    })
}

/// `g(k)` for a `(d, d−k)`-partition extender, and the bound `2^{2^k − 1 + d}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeEstimate {
    pub d: i32,
    pub k: i32,
    #[serde(serialize_with = "as_decimal")]
    pub recurrence: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub upper_bound: BigUint,
}

fn as_decimal<S: serde::Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_str_radix(10))
}

/// `g(k) = k(2^{d+1} − 2^k) + Σ_{j<k} C(k,j) g(j)`, `g(0) = 0`.
///
/// `k` may go up to `d + 1`, the codimension of the piece glued on the empty face.
pub fn size_estimate(d: i32, k: i32) -> Result<SizeEstimate> {
    if d < 0 || k < 0 || k > d + 1 || d > 60 {
        return Err(Error::InvalidParameters(format!(
            "need 0 <= k <= d + 1 and 0 <= d <= 60, got d = {d}, k = {k}"
        )));
    }
    let g = g_table(d, k as usize);
    Ok(SizeEstimate {
        d,
        k,
        recurrence: g[k as usize].clone(),
        upper_bound: BigUint::one() << ((1u64 << k) - 1 + d as u64),
    })
}

fn g_table(d: i32, k: usize) -> Vec<BigUint> {
    let pow = |e: u64| BigUint::one() << e;
    let mut g: Vec<BigUint> = vec![BigUint::zero()];
    for n in 1..=k {
        let mut next = BigUint::from(n) * (pow(d as u64 + 1) - pow(n as u64));
        let mut choose = BigUint::one();
        for (j, gj) in g.iter().enumerate() {
            next += &choose * gj;
            choose = choose * BigUint::from(n - j) / BigUint::from(j + 1);
        }
        g.push(next);
    }
    g
}

/// `Σ_{k=-1}^{d} f_k · g(d − k)` for a pure complex.
pub fn total_size_estimate(c: &SimplicialComplex) -> Result<BigUint> {
    if c.is_void() {
        return Err(Error::VoidComplex);
    }
    let d = c.dim();
    if d < 0 {
        return Ok(BigUint::zero());
    }
    let f = f_vector(c);
    let g = g_table(d, (d + 1) as usize);
    Ok((0..f.len())
        .map(|i| BigUint::from(f[i] as u64) * &g[f.len() - 1 - i])
        .sum())
}

/// Counts for the constructed `(d, d−k)`-partition extender.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeasuredSize {
    pub vertices: usize,
    pub facets: usize,
    pub faces: usize,
    /// Faces outside the specified facet.
    pub added_faces: usize,
}

pub fn measured_size(d: i32, k: i32) -> Result<MeasuredSize> {
    let m = partition_extender(d, d - k)?;
    let faces = m.complex.num_faces();
    Ok(MeasuredSize {
        vertices: m.complex.vertices().len(),
        facets: m.complex.facets().len(),
        faces,
        added_faces: faces - (1usize << m.specified_facet.len()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::face::face;

    fn cx(facets: &[&str]) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|f| face(f)))
    }

    fn parts(pairs: &[(&str, &str)]) -> IntervalPartition {
        pairs
            .iter()
            .map(|(b, t)| Interval::new(face(b), face(t)))
            .collect()
    }

    #[test]
    fn prepartition_3_1() {
        let m = prepartition_extender(3, 1).unwrap();
        assert_eq!(
            m.complex,
            cx(&["1256", "3456", "1236", "1235", "2346", "2345"])
        );
        assert_eq!(m.specified_facet, face("3456"));
        assert_eq!(m.specified_face, face("56"));
        let expected = parts(&[
            ("56", "1256"),
            ("1", "1236"),
            ("2", "2346"),
            ("15", "1235"),
            ("25", "2345"),
        ]);
        assert_eq!(m.with_sigma.canonical(), expected.canonical());
    }

    #[test]
    fn prepartition_degenerate() {
        let m = prepartition_extender(2, 2).unwrap();
        assert_eq!(m.complex, cx(&["123"]));
        assert_eq!(m.with_sigma, parts(&[("123", "123")]));

        let m = prepartition_extender(1, 0).unwrap();
        assert_eq!(m.complex, cx(&["12", "13", "23"]));
        assert_eq!(
            (m.specified_facet.clone(), m.specified_face.clone()),
            (face("23"), face("3"))
        );

        let m = prepartition_extender(2, -1).unwrap();
        assert_eq!(m.complex, cx(&["123", "456"]));
        assert_eq!(m.with_sigma, parts(&[("", "123")]));

        assert!(prepartition_extender(2, 3).is_err());
        assert!(prepartition_extender(2, -2).is_err());
    }

    #[test]
    fn h_profiles() {
        assert_eq!(
            prepartition_h_profile(3, 1).unwrap(),
            CountVector::from([0, 2, 3, 0, 0])
        );
        assert_eq!(
            prepartition_h_profile(3, 2).unwrap(),
            CountVector::from([0, 1, 1, 2, 0])
        );
        assert_eq!(
            prepartition_h_profile(2, 2).unwrap(),
            CountVector::from([0, 0, 0, 1])
        );
    }

    #[test]
    fn partition_extender_base_and_boundary() {
        let m = partition_extender(2, 2).unwrap();
        assert_eq!(m.without_sigma, Some(IntervalPartition::default()));
        let m = partition_extender(3, 2).unwrap();
        assert_eq!(m.complex, prepartition_extender(3, 2).unwrap().complex);
        let without = m.without_sigma.unwrap();
        assert!(without
            .intervals()
            .contains(&Interval::new(face("1345"), face("1345"))));
        assert!(!without
            .intervals()
            .iter()
            .any(|iv| iv.bottom == face("345")));
    }

    #[test]
    fn partition_extender_3_1_matches_worked_example() {
        let m = partition_extender(3, 1).unwrap();
        assert_eq!(m.complex.facets().len(), 14);
        assert!(m.complex.facets().contains(&face("1567")));
        assert!(m.complex.facets().contains(&face("1258")));
        let table = parts(&[
            ("1256", "1256"),
            ("1", "1236"),
            ("2", "2346"),
            ("15", "1235"),
            ("25", "2345"),
            ("156", "1567"),
            ("7", "2567"),
            ("17", "1267"),
            ("157", "1257"),
            ("256", "2568"),
            ("8", "1568"),
            ("28", "1268"),
            ("258", "1258"),
        ]);
        assert_eq!(m.without_sigma.unwrap().canonical(), table.canonical());
    }

    #[test]
    fn two_disjoint_edges() {
        let base = cx(&["12", "34"]);
        let res = extender_for_complex(&base).unwrap();
        assert_eq!(res.extender.vertices().len() - base.vertices().len(), 8);
        let edges = |c: &SimplicialComplex| c.faces().filter(|f| f.len() == 2).count();
        assert_eq!(edges(&res.extender) - edges(&base), 13);
        let dec = h_decomposition(&res).unwrap();
        assert_eq!(dec.difference, CountVector::from([1, 2, -1]));
    }

    #[test]
    fn bowtie_and_edge() {
        let bowtie = cx(&["123", "345"]);
        let res = extender_for_complex(&bowtie).unwrap();
        assert_eq!(
            h_decomposition(&res).unwrap().difference,
            CountVector::from([1, 2, -1, 0])
        );
        let res = extender_for_complex(&cx(&["12"])).unwrap();
        assert_eq!(
            h_decomposition(&res).unwrap().difference,
            CountVector::from([1, 0, 0])
        );
        assert_eq!(extender_for_complex(&cx(&["12", "3"])), Err(Error::NotPure));
        assert_eq!(
            extender_for_complex(&SimplicialComplex::void()),
            Err(Error::VoidComplex)
        );
    }

    #[test]
    fn handmade_decomposition() {
        let lid = cx(&["123", "345", "234"]);
        let bowtie = cx(&["123", "345"]);
        let dec = h_decomposition_of(&lid, &bowtie).unwrap();
        assert_eq!(dec.extender, CountVector::from([1, 2, 0, 0]));
        assert_eq!(dec.relative, CountVector::from([0, 0, 1, 0]));
        assert_eq!(dec.difference, CountVector::from([1, 2, -1, 0]));
        let dec = h_decomposition_of(&bowtie, &bowtie).unwrap();
        assert_eq!(dec.relative, CountVector::from([0, 0, 0, 0]));
    }

    #[test]
    fn nonpure() {
        let c = cx(&["12", "3"]);
        let res = nonpure_extender_for_complex(&c).unwrap();
        let rel = res.relative_family();
        let diff = &h_triangle(&res.extender) - &h_triangle(&rel);
        assert_eq!(diff.0, vec![vec![0], vec![0, 1], vec![1, 0, 0]]);
        nonpure_extender_for_complex(&cx(&["12", "13", "23", "4"])).unwrap();

        let pure = cx(&["123", "345"]);
        assert_eq!(
            nonpure_extender_for_complex(&pure).unwrap(),
            extender_for_complex(&pure).unwrap()
        );
    }

    #[test]
    fn sequential_matches_parallel() {
        let c = cx(&["123", "34", "5"]);
        assert_eq!(
            nonpure_extender_for_complex_with(&c, Exec::Sequential).unwrap(),
            nonpure_extender_for_complex_with(&c, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn g_values() {
        assert_eq!(size_estimate(3, 0).unwrap().recurrence, BigUint::zero());
        // g(1) = 2^{d+1} - 2, g(2) = 2(2^{d+1} - 4) + 2 g(1).
        assert_eq!(
            size_estimate(3, 1).unwrap().recurrence,
            BigUint::from(14u32)
        );
        assert_eq!(
            size_estimate(3, 2).unwrap().recurrence,
            BigUint::from(52u32)
        );
        assert_eq!(
            size_estimate(3, 4).unwrap().recurrence,
            BigUint::from(1256u32)
        );
        assert_eq!(
            size_estimate(2, 2).unwrap().upper_bound,
            BigUint::from(32u32)
        );
        assert!(size_estimate(2, 4).is_err());
    }
}

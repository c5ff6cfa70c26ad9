//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use extenders::homology::{ChainComplexData, CmExtenderOutcome};
use extenders::*;
use num_bigint::BigUint;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn parts(pairs: &[(&str, &str)]) -> IntervalPartition {
    pairs
        .iter()
        .map(|(b, t)| Interval::new(face(b), face(t)))
        .collect()
}

const Q: FieldSpec = FieldSpec::RATIONALS;

fn c1_h_transform() -> Outcome {
    for (f, h) in [
        ([1, 5, 6, 2], [1, 2, -1, 0]),
        ([1, 5, 7, 3], [1, 2, 0, 0]),
        ([0, 0, 1, 1], [0, 0, 1, 0]),
    ] {
        let got = f_to_h(&CountVector::from(f));
        ensure(got == CountVector::from(h), || {
            format!("f = {f:?} gave h = {got}")
        })?;
    }
    Ok("three f-vectors map to the stated h-vectors".into())
}

fn c2_prepartition_3_1() -> Outcome {
    let m = prepartition_extender(3, 1).map_err(err)?;
    let facets = cx(&["1256", "3456", "1236", "1235", "2346", "2345"]);
    ensure(m.complex == facets, || {
        format!("facets {:?}", m.complex.facets())
    })?;
    ensure(m.specified_facet == face("3456"), || {
        format!("F = {}", m.specified_facet)
    })?;
    ensure(m.specified_face == face("56"), || {
        format!("σ = {}", m.specified_face)
    })?;
    let eq = parts(&[
        ("56", "1256"),
        ("1", "1236"),
        ("2", "2346"),
        ("15", "1235"),
        ("25", "2345"),
    ]);
    ensure(m.with_sigma.canonical() == eq.canonical(), || {
        format!(
            "with-σ partition {:?}",
            m.with_sigma.canonical().intervals()
        )
    })?;
    Ok("facets, F, σ and the five intervals match exactly".into())
}

fn c3_partition_3_1() -> Outcome {
    let m = partition_extender(3, 1).map_err(err)?;
    // The (3,2) pieces on 156 and 256 receive the fresh vertices 7 and 8,
    // giving the relabelings (7,2,1,5,6) and (8,1,2,5,6).
    for (tau, expected) in [
        ("156", [(1, 7), (2, 2), (3, 1), (4, 5), (5, 6)]),
        ("256", [(1, 8), (2, 1), (3, 2), (4, 5), (5, 6)]),
    ] {
        let piece = m
            .pieces
            .iter()
            .find(|p| p.face == face(tau))
            .ok_or_else(|| format!("no piece on {tau}"))?;
        let got: Vec<(u32, u32)> = piece.vertex_map.iter().map(|(a, b)| (*a, *b)).collect();
        ensure(got == expected, || {
            format!("piece on {tau} mapped by {got:?}")
        })?;
    }
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
    let without = m.without_sigma.clone().ok_or("no without-σ certificate")?;
    ensure(without.canonical() == table.canonical(), || {
        format!("without-σ partition {:?}", without.canonical().intervals())
    })?;
    verify_partitioning(&m.relative_family(), &without)
        .into_result()
        .map_err(err)?;
    verify_partitioning(&m.relative_family_with_sigma(), &m.with_sigma)
        .into_result()
        .map_err(err)?;
    Ok(format!(
        "13-interval table reproduced, {} facets, both certificates verify",
        m.complex.facets().len()
    ))
}

fn c4_two_edges() -> Outcome {
    let base = cx(&["12", "34"]);
    let res = extender_for_complex(&base).map_err(err)?;
    let vertices = res.extender.vertices().len() - base.vertices().len();
    let edges = |c: &SimplicialComplex| c.faces().filter(|f| f.len() == 2).count();
    let added_edges = edges(&res.extender) - edges(&base);
    ensure((vertices, added_edges) == (8, 13), || {
        format!("added {vertices} vertices and {added_edges} edges")
    })?;
    Ok("adds 8 vertices and 13 edges".into())
}

fn check_extender(base: &SimplicialComplex, res: &ExtenderResult) -> Result<(), String> {
    verify_partitioning(&res.extender, &res.gamma_partition)
        .into_result()
        .map_err(|e| format!("{:?}: gamma certificate: {e}", base.facets()))?;
    verify_partitioning(&res.relative_family(), &res.relative_partition)
        .into_result()
        .map_err(|e| format!("{:?}: relative certificate: {e}", base.facets()))?;
    ensure(res.base.is_subcomplex_of(&res.extender), || {
        "base not contained".into()
    })?;
    Ok(())
}

fn c5_random_pure() -> Outcome {
    let mut rng = seeded(20_240_501);
    let mut largest = 0;
    for _ in 0..100 {
        let base = random_pure(&mut rng);
        let res = extender_for_complex(&base).map_err(err)?;
        check_extender(&base, &res)?;
        let rel = res.relative_family();
        let diff = &h_vector(&res.extender) - &h_vector(&rel);
        ensure(diff == h_vector(&base), || {
            format!(
                "{:?}: h(Γ) - h(Γ,Δ) = {diff}, h(Δ) = {}",
                base.facets(),
                h_vector(&base)
            )
        })?;
        ensure(res.extender.dim() == base.dim(), || {
            "dimension changed".into()
        })?;
        largest = largest.max(res.extender.num_faces());
    }
    Ok(format!(
        "100 complexes, largest extender has {largest} faces"
    ))
}

fn c6_prepartition_cover() -> Outcome {
    let mut cases = 0;
    for d in 0..=5 {
        for k in 0..=d {
            let m = prepartition_extender(d, k).map_err(err)?;
            let sigma = &m.specified_face;
            let d1 = m.with_sigma.intervals()[0].top.clone();
            let i_prime = Interval::new(Face::empty(), m.specified_facet.clone());
            let i_main = Interval::new(sigma.clone(), d1);
            let mut all = m.with_sigma.intervals().to_vec();
            all.push(i_prime.clone());
            for f in m.complex.faces() {
                let holders: Vec<&Interval> = all.iter().filter(|iv| iv.contains(f)).collect();
                if f == sigma {
                    ensure(
                        holders.len() == 2
                            && holders.contains(&&i_main)
                            && holders.contains(&&i_prime),
                        || format!("(d,k) = ({d},{k}): σ lies in {holders:?}"),
                    )?;
                } else {
                    ensure(holders.len() == 1, || {
                        format!("(d,k) = ({d},{k}): {f} lies in {} intervals", holders.len())
                    })?;
                }
            }
            cases += 1;
        }
    }
    Ok(format!(
        "{cases} (d,k) pairs, every face in exactly one interval except σ in I and I'"
    ))
}

fn c7_partitionability() -> Outcome {
    let limits = SearchLimits::default();
    for (name, c) in [
        ("bow-tie", bowtie()),
        ("K4 plus two edges", k4_plus_two_edges()),
    ] {
        let v = find_partitioning(&c, &limits).map_err(err)?;
        ensure(v == Partitionability::NotPartitionable, || {
            format!("{name}: {v:?}")
        })?;
    }
    let tri = triangle_boundary();
    let w = find_partitioning(&tri, &limits)
        .map_err(err)?
        .witness()
        .cloned()
        .ok_or("triangle boundary reported not partitionable")?;
    verify_partitioning(&tri, &w).into_result().map_err(err)?;
    Ok(format!(
        "both examples not partitionable; triangle witness {:?}",
        w.canonical().intervals()
    ))
}

fn c8_remark_closed_form() -> Outcome {
    let mut deviations = Vec::new();
    for d in 0..=5 {
        for k in 0..=d {
            let h = prepartition_h_profile(d, k).map_err(err)?;
            for l in 1..=(k + 1) as usize {
                let closed = if l < (k + 1) as usize {
                    d - k
                } else {
                    d - k + 1
                } as i64;
                ensure(h[l] == closed, || {
                    format!("(d,k) = ({d},{k}), ℓ = {l}: measured {} vs {closed}", h[l])
                })?;
            }
            if h[0] != (d - k) as i64 {
                deviations.push(format!("({d},{k}): h_0 = {} vs {}", h[0], d - k));
            }
        }
    }
    Ok(format!(
        "closed form holds for 1 <= ℓ <= k+1; known deviation at ℓ = 0 in {} cases, e.g. {}",
        deviations.len(),
        deviations.first().map_or("none", String::as_str)
    ))
}

fn c9_random_nonpure() -> Outcome {
    let mut rng = seeded(5_030_303);
    for _ in 0..50 {
        let base = random_nonpure(&mut rng);
        let res = nonpure_extender_for_complex(&base).map_err(err)?;
        check_extender(&base, &res)?;
        let gamma = res.extender.to_family();
        let rel = res.relative_family();
        for (fam, p) in [
            (&gamma, &res.gamma_partition),
            (&rel, &res.relative_partition),
        ] {
            ensure(is_layer_compatible(fam, p).map_err(err)?, || {
                format!("{:?}: not layer-compatible", base.facets())
            })?;
            ensure(is_h_compatible(fam, p).map_err(err)?, || {
                format!("{:?}: not h-compatible", base.facets())
            })?;
        }
        let diff = &h_triangle(&res.extender) - &h_triangle(&rel);
        ensure(diff == h_triangle(&base), || {
            format!("{:?}: h-triangle identity fails", base.facets())
        })?;
        for s in base.faces() {
            let (a, b) = (
                base.facet_depth(s).map_err(err)?,
                res.extender.facet_depth(s).map_err(err)?,
            );
            ensure(a == b, || {
                format!("{:?}: facet depth of {s} moved {a} -> {b}", base.facets())
            })?;
        }
    }
    Ok(
        "50 nonpure complexes: layer- and h-compatible, h-triangle identity, facet depths kept"
            .into(),
    )
}

fn c10_depth_cm() -> Outcome {
    let tetra = SimplicialComplex::simplex_skeleton(&face("1234"), 2);
    for (name, c, want) in [
        ("bow-tie", bowtie(), 2),
        ("two triangles", two_triangles(), 1),
        ("tetrahedron boundary", tetra, 3),
    ] {
        let got = depth(&c, Q).map_err(err)?;
        ensure(got == want, || {
            format!("depth({name}) = {got}, expected {want}")
        })?;
    }
    let out = cm_extender(&bowtie(), Q).map_err(err)?;
    let gamma = out.extender().ok_or("bow-tie has no CM extender")?;
    let skel = SimplicialComplex::simplex_skeleton(&face("12345"), 2);
    ensure(*gamma == skel, || format!("extender {:?}", gamma.facets()))?;
    ensure(is_cohen_macaulay(gamma, Q).map_err(err)?, || {
        "Γ not CM".into()
    })?;
    ensure(is_relative_cm(gamma, &bowtie(), Q).map_err(err)?, || {
        "(Γ,Δ) not relative CM".into()
    })?;
    match cm_extender(&two_triangles(), Q).map_err(err)? {
        CmExtenderOutcome::NoExtender {
            face: f, degree, ..
        } => {
            ensure(f == Face::empty() && degree == 0, || {
                format!("witness ({f}, {degree})")
            })?;
        }
        other => return Err(format!("two triangles: {other:?}")),
    }
    Ok("depths 2, 1, 3; bow-tie extender is the 2-skeleton on 5 vertices; witness (∅, 0)".into())
}

fn c11_shellability() -> Outcome {
    let limits = SearchLimits::default();
    let tri = triangle_boundary();
    let order = match find_shelling(&tri, None, &limits).map_err(err)? {
        Shellability::Shellable(o) => o,
        Shellability::NotShellable => return Err("triangle boundary not shellable".into()),
    };
    ensure(
        check_shelling_order(&tri, None, &order).map_err(err)?,
        || "order fails recheck".into(),
    )?;
    let b = find_shelling(&bowtie(), None, &limits).map_err(err)?;
    ensure(b == Shellability::NotShellable, || {
        format!("bow-tie: {b:?}")
    })?;

    let mut checked = 0;
    let mut pairs = vec![
        (bowtie_with_lid(), bowtie()),
        (cx(&["12", "23"]), cx(&["12"])),
    ];
    let mut rng = seeded(11);
    for _ in 0..40 {
        let big = random_pure(&mut rng);
        let keep = big.facets().len() / 2;
        let small = SimplicialComplex::from_facets(big.facets()[..keep].iter().cloned());
        pairs.push((big, small));
    }
    for (big, small) in &pairs {
        let small_ref = (!small.is_void()).then_some(small);
        if let Shellability::Shellable(_) = find_shelling(big, small_ref, &limits).map_err(err)? {
            ensure(is_relative_cm(big, small, Q).map_err(err)?, || {
                format!(
                    "shellable pair {:?} rel {:?} not relative CM",
                    big.facets(),
                    small.facets()
                )
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "triangle shelling {order:?}; bow-tie not shellable; {checked} shellable pairs relative CM"
    ))
}

fn c12_g() -> Outcome {
    for d in 0..=6 {
        let g0 = size_estimate(d, 0).map_err(err)?.recurrence;
        ensure(g0 == BigUint::from(0u32), || {
            format!("g(0) = {g0} at d = {d}")
        })?;
        if d >= 1 {
            let g1 = size_estimate(d, 1).map_err(err)?.recurrence;
            ensure(g1 <= BigUint::from(1u32) << (d + 1), || {
                format!("g(1) = {g1} at d = {d}")
            })?;
        }
        for k in 0..=d {
            let e = size_estimate(d, k).map_err(err)?;
            ensure(e.recurrence <= e.upper_bound, || {
                format!("g({k}) = {} > {} at d = {d}", e.recurrence, e.upper_bound)
            })?;
        }
    }
    for d in 7..=10 {
        let g1 = size_estimate(d, 1).map_err(err)?.recurrence;
        ensure(g1 <= BigUint::from(1u32) << (d + 1), || {
            format!("g(1) = {g1} at d = {d}")
        })?;
    }
    Ok("g(0) = 0, g(1) <= 2^(d+1), g(k) <= 2^(2^k - 1 + d) for k <= d <= 6".into())
}

fn c13_homology() -> Outcome {
    let f2 = FieldSpec::new(2).map_err(err)?;
    let mut complexes = corpus();
    let mut rng = seeded(13);
    for _ in 0..5 {
        let base = random_pure(&mut rng);
        complexes.push(extender_for_complex(&base).map_err(err)?.extender);
    }
    complexes.push(partition_extender(3, 1).map_err(err)?.complex);
    let mut chains = 0;
    for c in &complexes {
        let void = SimplicialComplex::void();
        let mut pairs = vec![(c.clone(), void)];
        pairs.extend(
            c.faces()
                .map(|s| (c.link(s).unwrap(), SimplicialComplex::void())),
        );
        for (big, small) in &pairs {
            let cc = ChainComplexData::new(big, small).map_err(err)?;
            ensure(cc.boundary_squares_to_zero(), || {
                format!("∂∂ != 0 on {:?}", big.facets())
            })?;
            chains += 1;
        }
        let f = f_vector(c);
        let alt: i64 = (0..f.len())
            .map(|j| if j % 2 == 1 { f[j] } else { -f[j] })
            .sum();
        for field in [Q, f2] {
            let chi = reduced_betti(c, field).map_err(err)?.euler_characteristic();
            ensure(chi == alt, || {
                format!("Euler-Poincaré fails on {:?} over {field}", c.facets())
            })?;
        }
    }
    let b = reduced_betti(&triangle_boundary(), Q).map_err(err)?;
    ensure(b.as_slice() == [0, 0, 1], || {
        format!("triangle boundary betti {:?}", b.as_slice())
    })?;
    Ok(format!(
        "{chains} chain complexes with ∂∂ = 0; Euler-Poincaré on {} complexes",
        complexes.len()
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("h-vector transform", c1_h_transform),
        ("canonical (3,1)-prepartition extender", c2_prepartition_3_1),
        ("(3,1)-partition extender certificates", c3_partition_3_1),
        ("two disjoint edges extender size", c4_two_edges),
        ("random pure extenders", c5_random_pure),
        ("prepartition interval cover", c6_prepartition_cover),
        ("brute-force partitionability", c7_partitionability),
        ("prepartition h-profile closed form", c8_remark_closed_form),
        ("random nonpure extenders", c9_random_nonpure),
        ("depth and CM extenders", c10_depth_cm),
        ("shellability", c11_shellability),
        ("g(k) recurrence and bound", c12_g),
        ("homology unit checks", c13_homology),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {name}: {detail} ({:.2?})",
                i + 1,
                start.elapsed()
            ),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

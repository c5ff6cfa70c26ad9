#![allow(dead_code)]

use extenders::{Face, SimplicialComplex};
use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};

/// `cx(&["123", "345"])` builds ⟨123, 345⟩; single digits are vertices.
pub fn cx(facets: &[&str]) -> SimplicialComplex {
    SimplicialComplex::from_facets(facets.iter().map(|f| face(f)))
}

pub fn face(digits: &str) -> Face {
    extenders::face::face(digits)
}

pub fn bowtie() -> SimplicialComplex {
    cx(&["123", "345"])
}

pub fn bowtie_with_lid() -> SimplicialComplex {
    cx(&["123", "345", "234"])
}

pub fn triangle_boundary() -> SimplicialComplex {
    cx(&["12", "13", "23"])
}

pub fn two_triangles() -> SimplicialComplex {
    cx(&["123", "456"])
}

pub fn k4_plus_two_edges() -> SimplicialComplex {
    cx(&["12", "13", "14", "23", "24", "34", "56", "78"])
}

fn random_subset(rng: &mut StdRng, n: u32, size: usize) -> Face {
    Face::new(
        sample(rng, n as usize, size)
            .into_iter()
            .map(|v| v as u32 + 1),
    )
}

/// Pure complex of dimension at most 3 with at most 12 facets on at most
/// `d + 4` vertices.
pub fn random_pure(rng: &mut StdRng) -> SimplicialComplex {
    let d = rng.random_range(0..=3usize);
    let n = rng.random_range(d as u32 + 1..=d as u32 + 4);
    let count = rng.random_range(1..=12);
    SimplicialComplex::from_facets((0..count).map(|_| random_subset(rng, n, d + 1)))
}

/// Nonpure complex of dimension at most 3 with at most 12 facets.
pub fn random_nonpure(rng: &mut StdRng) -> SimplicialComplex {
    loop {
        let n = rng.random_range(3..=7u32);
        let count = rng.random_range(2..=12);
        let c = SimplicialComplex::from_facets((0..count).map(|_| {
            let size = rng.random_range(1..=4usize.min(n as usize));
            random_subset(rng, n, size)
        }));
        if !c.is_pure() && c.facets().len() <= 12 {
            return c;
        }
    }
}

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Fixed complexes used by corpus-wide checks.
pub fn corpus() -> Vec<SimplicialComplex> {
    let mut out = vec![
        SimplicialComplex::irrelevant(),
        cx(&["1"]),
        cx(&["12"]),
        triangle_boundary(),
        bowtie(),
        bowtie_with_lid(),
        two_triangles(),
        k4_plus_two_edges(),
        cx(&["12", "3"]),
        cx(&["12", "13", "23", "4"]),
        cx(&["1234"]),
        SimplicialComplex::simplex_skeleton(&face("1234"), 2),
        SimplicialComplex::simplex_skeleton(&face("12345"), 2),
        cx(&[
            "124", "126", "135", "136", "145", "234", "235", "256", "346", "456",
        ]),
    ];
    let mut rng = seeded(7);
    out.extend((0..20).map(|_| random_pure(&mut rng)));
    out.extend((0..20).map(|_| random_nonpure(&mut rng)));
    out
}

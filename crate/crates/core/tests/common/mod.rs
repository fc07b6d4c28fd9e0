//! Seeded random tree windings shared by the property and acceptance suites.

#![allow(dead_code)]

use qgs_core::{DimensionVector, Quiver, TArrow, Winding};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Two or three vertices joined by a randomly oriented path, plus up to two extra arrows.
pub fn random_quiver(rng: &mut impl Rng) -> Quiver {
    let k = rng.gen_range(2..=3);
    let vertices: Vec<String> = (0..k).map(|i| format!("v{i}")).collect();
    let mut pairs: Vec<(usize, usize)> = (1..k)
        .map(|i| {
            if rng.gen_bool(0.5) {
                (i - 1, i)
            } else {
                (i, i - 1)
            }
        })
        .collect();
    for _ in 0..rng.gen_range(0..=2) {
        let s = rng.gen_range(0..k);
        let t = (s + rng.gen_range(1..k)) % k;
        pairs.push((s, t));
    }
    let arrows: Vec<(String, String, String)> = pairs
        .iter()
        .enumerate()
        .map(|(i, &(s, t))| (format!("a{i}"), vertices[s].clone(), vertices[t].clone()))
        .collect();
    Quiver::new(&vertices, &arrows).expect("random quiver")
}

/// Random tree on `1..=n` grown by attaching each vertex to an earlier one,
/// then relabelled by a random permutation.
pub fn random_tree_winding(rng: &mut impl Rng, max_vertices: usize) -> Winding {
    let base = random_quiver(rng);
    random_tree_over(rng, base, max_vertices)
}

/// Random tree winding over a given quiver in which every vertex meets an arrow.
pub fn random_tree_over(rng: &mut impl Rng, base: Quiver, max_vertices: usize) -> Winding {
    let n = rng.gen_range(1..=max_vertices);
    let mut fiber = vec![rng.gen_range(0..base.vertex_count())];
    let mut arrows = Vec::new();
    for v in 2..=n {
        let u = rng.gen_range(1..v);
        let p = fiber[u - 1];
        let incident: Vec<(usize, bool)> = base
            .arrows()
            .iter()
            .enumerate()
            .flat_map(|(c, a)| {
                let mut out = Vec::new();
                if a.source == p {
                    out.push((c, true));
                }
                if a.target == p {
                    out.push((c, false));
                }
                out
            })
            .collect();
        let &(colour, outgoing) = incident.choose(rng).expect("every vertex meets an arrow");
        let a = &base.arrows()[colour];
        if outgoing {
            fiber.push(a.target);
            arrows.push(TArrow {
                colour,
                source: u,
                target: v,
            });
        } else {
            fiber.push(a.source);
            arrows.push(TArrow {
                colour,
                source: v,
                target: u,
            });
        }
    }
    let w = Winding::new(base, fiber, arrows).expect("random tree");
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(rng);
    w.relabel(&perm).expect("permutation")
}

/// Uniform dimension vector below the winding's own.
pub fn random_type(rng: &mut impl Rng, w: &Winding) -> DimensionVector {
    DimensionVector(w.dims().0.iter().map(|&d| rng.gen_range(0..=d)).collect())
}

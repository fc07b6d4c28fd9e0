//! Randomized invariants over seeded tree windings and random matrices.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use qgs_core::oracle::{cell_points, grassmannian_points};
use qgs_core::polarization::{
    find_sorting, is_polarization, is_strict_weak_polarization, is_weak_polarization,
};
use qgs_core::schofield::{euler_form, hom_ext};
use qgs_core::schubert::{
    beta_reduced_equation, enumerate_type, is_extremal_successor_closed, is_successor_closed, psi,
    psi_beta, psi_triple, relevant_pairs, relevant_triples,
};
use qgs_core::{
    betti_numbers, cell_dimension, check_hypothesis, coefficient_quiver, decompose,
    euler_characteristic, BetaSubset, CellResult, Document, Error, ExactMatrix, Winding,
};

const BUDGET: u128 = 200_000;

fn winding(seed: u64, max: usize) -> Winding {
    common::random_tree_winding(&mut common::rng(seed), max)
}

fn fibre_order(w: &Winding) -> Vec<Vec<usize>> {
    (0..w.base().vertex_count())
        .map(|p| w.fibre(p).to_vec())
        .collect()
}

fn int_matrix(rows: usize, cols: usize, data: &[i64]) -> ExactMatrix {
    let rows: Vec<Vec<i64>> = data
        .chunks(cols.max(1))
        .take(rows)
        .map(|r| r.to_vec())
        .collect();
    ExactMatrix::from_int_rows(&rows, cols)
}

/// Kernel size over `F_q` by brute force.
fn kernel_size(m: &ExactMatrix, q: u64) -> u64 {
    let r = m.reduce_mod(q).unwrap();
    let entries = r.residues().unwrap().to_vec();
    let (rows, cols) = (r.rows(), r.cols());
    let mut count = 0;
    for idx in 0..q.pow(cols as u32) {
        let v: Vec<u64> = (0..cols).map(|k| idx / q.pow(k as u32) % q).collect();
        if (0..rows).all(|i| (0..cols).map(|k| entries[i * cols + k] * v[k]).sum::<u64>() % q == 0)
        {
            count += 1;
        }
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_is_invariant_under_permutations(
        (rows, cols, data) in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(-3i64..4, r * c))),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        let m = int_matrix(rows, cols, &data);
        let mut rng = common::rng(seed);
        let mut rp: Vec<usize> = (0..rows).collect();
        let mut cp: Vec<usize> = (0..cols).collect();
        rp.shuffle(&mut rng);
        cp.shuffle(&mut rng);
        let data = &data;
        let permuted: Vec<i64> = rp.iter().flat_map(|&i| cp.iter().map(move |&j| data[i * cols + j])).collect();
        prop_assert_eq!(m.rank(), int_matrix(rows, cols, &permuted).rank());
    }

    #[test]
    fn rank_plus_nullity_is_column_count(
        (rows, cols, data) in (1usize..4, 1usize..5).prop_flat_map(|(r, c)| (Just(r), Just(c), proptest::collection::vec(0i64..3, r * c))),
    ) {
        let m = int_matrix(rows, cols, &data).reduce_mod(3).unwrap();
        let nullity = kernel_size(&m, 3).ilog(3) as usize;
        prop_assert_eq!(m.rank() + nullity, cols);
    }

    #[test]
    fn reduction_commutes_with_products(
        a in proptest::collection::vec(-5i64..6, 6),
        b in proptest::collection::vec(-5i64..6, 6),
        q in prop::sample::select(vec![2u64, 3, 5, 7]),
    ) {
        let (ma, mb) = (int_matrix(2, 3, &a), int_matrix(3, 2, &b));
        let left = ma.mul(&mb).unwrap().reduce_mod(q).unwrap();
        let right = ma.reduce_mod(q).unwrap().mul(&mb.reduce_mod(q).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn thin_round_trip(seed in any::<u64>()) {
        let w = winding(seed, 10);
        prop_assert_eq!(coefficient_quiver(&w.push_forward(), &fibre_order(&w)).unwrap(), w.clone());
        let doc = Document::Winding(w);
        prop_assert_eq!(Document::parse(&doc.to_json().unwrap().to_string()).unwrap(), doc);
    }

    #[test]
    fn representation_json_round_trip(seed in any::<u64>()) {
        let doc = Document::Representation(winding(seed, 8).push_forward());
        prop_assert_eq!(Document::parse(&doc.to_json().unwrap().to_string()).unwrap(), doc);
    }

    #[test]
    fn ordered_unramified_windings_have_only_extremal_arrows(seed in any::<u64>()) {
        let w = winding(seed, 10);
        if w.is_ordered() && w.is_unramified() {
            prop_assert_eq!(w.extremal_arrows().len(), w.arrows().len());
        }
    }

    #[test]
    fn polarizations_are_weak(seed in any::<u64>()) {
        let w = winding(seed, 10);
        if is_polarization(&w) {
            prop_assert!(is_weak_polarization(&w));
        }
        if !is_weak_polarization(&w) {
            prop_assert_eq!(is_strict_weak_polarization(&w), Err(Error::NotWeakPolarization));
        }
    }

    #[test]
    fn sorting_witnesses_satisfy_the_block_conditions(seed in any::<u64>()) {
        let w = winding(seed, 10);
        for c in 0..w.base().arrows().len() {
            let Some(s) = find_sorting(&w, c) else { continue };
            let lower_s: BTreeSet<usize> = s.lower_sources(&w).iter().copied().collect();
            let lower_t: BTreeSet<usize> = s.lower_targets(&w).iter().copied().collect();
            let arrows = w.arrows_of_colour(c);
            for a in arrows {
                prop_assert_eq!(lower_s.contains(&a.source), lower_t.contains(&a.target));
            }
            let qa = &w.base().arrows()[c];
            for &v in w.fibre(qa.source) {
                let out = arrows.iter().filter(|a| a.source == v).count();
                let ok = if lower_s.contains(&v) { out <= 1 } else { out >= 1 };
                prop_assert!(ok);
            }
            for &v in w.fibre(qa.target) {
                let inc = arrows.iter().filter(|a| a.target == v).count();
                let ok = if lower_t.contains(&v) { inc >= 1 } else { inc <= 1 };
                prop_assert!(ok);
            }
        }
    }

    #[test]
    fn psi_is_injective_and_dominates_psi_beta(seed in any::<u64>()) {
        let w = winding(seed, 10);
        let pairs = relevant_pairs(&w).unwrap();
        let keys: BTreeSet<_> = pairs.iter().map(|&p| psi(&w, p).unwrap()).collect();
        prop_assert_eq!(keys.len(), pairs.len());
        let mut rng = common::rng(seed ^ 0x5eed);
        let n = w.vertex_count();
        let members: Vec<usize> = (1..=n).filter(|_| rand::Rng::gen_bool(&mut rng, 0.5)).collect();
        let beta = BetaSubset::new(n, &members).unwrap();
        for t in relevant_triples(&w).into_iter().filter(|t| !beta.contains(t.t) && beta.contains(t.s)) {
            if let (Some(full), Some(reduced)) = (psi_triple(&w, t), psi_beta(&w, &beta, t).unwrap()) {
                prop_assert!(reduced <= full);
            }
        }
    }

    #[test]
    fn extremal_closure_is_closure_when_ordered_and_unramified(seed in any::<u64>()) {
        let w = winding(seed, 10);
        if w.is_ordered() && w.is_unramified() {
            let n = w.vertex_count();
            for mask in 0u32..(1 << n) {
                let members: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                let beta = BetaSubset::new(n, &members).unwrap();
                prop_assert_eq!(is_extremal_successor_closed(&w, &beta), is_successor_closed(&w, &beta));
            }
        }
    }

    #[test]
    fn hom_minus_ext_is_the_euler_form(a in any::<u64>(), b in any::<u64>()) {
        let x = winding(a, 6);
        let y = common::random_tree_over(&mut common::rng(b), x.base().clone(), 6);
        {
            let (hom, ext) = hom_ext(&x.push_forward(), &y.push_forward()).unwrap();
            prop_assert_eq!(hom as i64 - ext as i64, euler_form(x.base(), &x.dims(), &y.dims()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cells_partition_the_grassmannian(seed in any::<u64>()) {
        let w = winding(seed, 7);
        let e = common::random_type(&mut common::rng(seed.rotate_left(7)), &w);
        let cells = decompose(&w, &e).unwrap();
        let hypothesis = check_hypothesis(&w).passed();
        for q in [2u64, 3] {
            let Ok(total) = grassmannian_points(&w.push_forward(), &e, q, BUDGET) else { return Ok(()) };
            let mut sum = 0;
            for c in &cells {
                let Ok(points) = cell_points(&w, &c.beta, q, BUDGET) else { return Ok(()) };
                sum += points;
                if !is_extremal_successor_closed(&w, &c.beta) {
                    prop_assert_eq!(points, 0);
                }
                match c.result {
                    CellResult::Empty => prop_assert_eq!(points, 0),
                    CellResult::Affine(d) => prop_assert_eq!(points, q.pow(d as u32)),
                    CellResult::HypothesisViolation(_) => prop_assert!(!hypothesis, "uncertified cell {} under the hypothesis", c.beta),
                }
            }
            prop_assert_eq!(sum, total);
        }
    }

    #[test]
    fn euler_and_betti_agree(seed in any::<u64>()) {
        let w = winding(seed, 8);
        let e = common::random_type(&mut common::rng(seed.rotate_left(11)), &w);
        if let Ok(chi) = euler_characteristic(&w, &e) {
            let betti = betti_numbers(&w, &e, true).unwrap();
            prop_assert_eq!(betti.counts.iter().sum::<usize>(), chi);
            if check_hypothesis(&w).passed() {
                let esc = enumerate_type(&w, &e).unwrap().iter().filter(|b| is_extremal_successor_closed(&w, b)).count();
                prop_assert_eq!(chi, esc);
            }
        }
    }

    #[test]
    fn grassmannian_count_ignores_the_basis_order(seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let w = winding(seed, 7);
        let e = common::random_type(&mut common::rng(seed.rotate_left(3)), &w);
        let mut rng = common::rng(seed.rotate_left(5));
        let mut perm: Vec<usize> = (1..=w.vertex_count()).collect();
        perm.shuffle(&mut rng);
        let v = w.relabel(&perm).unwrap();
        for q in [2u64, 3] {
            let (a, b) = (grassmannian_points(&w.push_forward(), &e, q, BUDGET), grassmannian_points(&v.push_forward(), &e, q, BUDGET));
            if a.is_ok() || b.is_ok() {
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn cell_dimension_matches_reduced_equations(seed in any::<u64>()) {
        let w = winding(seed, 8);
        let e = common::random_type(&mut common::rng(seed.rotate_left(13)), &w);
        for beta in enumerate_type(&w, &e).unwrap() {
            if let CellResult::Affine(d) = cell_dimension(&w, &beta) {
                let live = relevant_triples(&w).into_iter().filter(|&t| !beta_reduced_equation(&w, &beta, t).is_trivial()).count();
                let free = qgs_core::schubert::free_coefficients(&w, &beta).len();
                prop_assert_eq!(d + live, free);
            }
        }
    }
}

#[test]
fn random_generator_covers_the_interesting_classes() {
    let ws: Vec<Winding> = (0..400).map(|s| winding(s, 10)).collect();
    let ordered_unramified = ws
        .iter()
        .filter(|w| w.is_ordered() && w.is_unramified())
        .count();
    let passing = ws.iter().filter(|w| check_hypothesis(w).passed()).count();
    let failing = ws.len() - passing;
    assert!(ordered_unramified >= 20, "{ordered_unramified}");
    assert!(passing >= 20 && failing >= 20, "{passing} / {failing}");
}

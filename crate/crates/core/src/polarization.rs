//! Sortings, polarizations and weak polarizations of windings.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::Representation;
use crate::winding::{coefficient_quiver, natural_order, BasisOrder, Winding};

/// Default cap on the number of orderings tried by [`search_ordered_polarization`].
pub const DEFAULT_SEARCH_BUDGET: u128 = 1_000_000;

/// Split of the source and target fibres of one colour into prefix `<` and suffix `>`.
///
/// `source_split` counts the vertices of `B^<_{s(ᾱ)}`, `target_split` those of `B^<_{t(ᾱ)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sorting {
    pub colour: usize,
    pub source_split: usize,
    pub target_split: usize,
}

impl Sorting {
    pub fn lower_sources<'a>(&self, w: &'a Winding) -> &'a [usize] {
        &w.fibre(w.base().arrows()[self.colour].source)[..self.source_split]
    }

    pub fn lower_targets<'a>(&self, w: &'a Winding) -> &'a [usize] {
        &w.fibre(w.base().arrows()[self.colour].target)[..self.target_split]
    }
}

fn sorting_is_valid(w: &Winding, colour: usize, a: usize, b: usize) -> bool {
    let qa = &w.base().arrows()[colour];
    let (bp, bq) = (w.fibre(qa.source), w.fibre(qa.target));
    let mut out_deg = vec![0usize; bp.len()];
    let mut in_deg = vec![0usize; bq.len()];
    for arrow in w.arrows_of_colour(colour) {
        let i = w.position_in_fibre(arrow.source);
        let j = w.position_in_fibre(arrow.target);
        if (i < a) != (j < b) {
            return false;
        }
        out_deg[i] += 1;
        in_deg[j] += 1;
    }
    out_deg
        .iter()
        .enumerate()
        .all(|(i, &d)| if i < a { d <= 1 } else { d >= 1 })
        && in_deg
            .iter()
            .enumerate()
            .all(|(j, &d)| if j < b { d >= 1 } else { d <= 1 })
}

/// Lexicographically smallest valid split for `colour`, if any.
pub fn find_sorting(w: &Winding, colour: usize) -> Option<Sorting> {
    let qa = &w.base().arrows()[colour];
    let (np, nq) = (w.fibre(qa.source).len(), w.fibre(qa.target).len());
    for a in 0..=np {
        for b in 0..=nq {
            if sorting_is_valid(w, colour, a, b) {
                return Some(Sorting {
                    colour,
                    source_split: a,
                    target_split: b,
                });
            }
        }
    }
    None
}

/// Per-colour sortings, or the colours that admit none.
pub fn polarization_witness(w: &Winding) -> std::result::Result<Vec<Sorting>, Vec<usize>> {
    let found: Vec<(usize, Option<Sorting>)> = (0..w.base().arrows().len())
        .map(|c| (c, find_sorting(w, c)))
        .collect();
    let missing: Vec<usize> = found
        .iter()
        .filter(|(_, s)| s.is_none())
        .map(|(c, _)| *c)
        .collect();
    if missing.is_empty() {
        Ok(found.into_iter().filter_map(|(_, s)| s).collect())
    } else {
        Err(missing)
    }
}

pub fn is_polarization(w: &Winding) -> bool {
    polarization_witness(w).is_ok()
}

/// A same-colour zigzag `s1 → t1 ← s2 → t2`, returned as `[s1, t1, s2, t2]`.
pub fn zigzag(w: &Winding) -> Option<(usize, [usize; 4])> {
    for c in 0..w.base().arrows().len() {
        let arrows = w.arrows_of_colour(c);
        for x in arrows {
            for y in arrows
                .iter()
                .filter(|y| y.target == x.target && y.source != x.source)
            {
                if let Some(z) = arrows
                    .iter()
                    .find(|z| z.source == y.source && z.target != y.target)
                {
                    return Some((c, [x.source, x.target, y.source, z.target]));
                }
            }
        }
    }
    None
}

pub fn is_weak_polarization(w: &Winding) -> bool {
    zigzag(w).is_none()
}

/// Per colour, either all sources or all targets carry at most one arrow.
pub fn is_strict_weak_polarization(w: &Winding) -> Result<bool> {
    if !is_weak_polarization(w) {
        return Err(Error::NotWeakPolarization);
    }
    Ok((0..w.base().arrows().len()).all(|c| {
        let arrows = w.arrows_of_colour(c);
        let at_most_one = |key: fn(&crate::winding::TArrow) -> usize| {
            arrows.iter().map(key).counts().values().all(|&k| k <= 1)
        };
        at_most_one(|a| a.source) || at_most_one(|a| a.target)
    }))
}

/// Number of per-vertex basis permutations.
pub fn ordering_count(rep: &Representation) -> u128 {
    rep.dims().0.iter().fold(1u128, |acc, &d| {
        acc.saturating_mul((1..=d as u128).product::<u128>())
    })
}

/// Exhaustive search over per-vertex basis permutations for an ordered polarization.
///
/// `Ok(None)` means the complete search found nothing; running out of budget
/// first is reported as [`Error::BudgetExceeded`].
pub fn search_ordered_polarization(
    rep: &Representation,
    budget: u128,
) -> Result<Option<BasisOrder>> {
    let natural = natural_order(rep.dims());
    let total = ordering_count(rep);
    let per_vertex: Vec<Vec<Vec<usize>>> = natural
        .iter()
        .map(|labels| labels.iter().copied().permutations(labels.len()).collect())
        .collect();
    for (tried, choice) in per_vertex
        .iter()
        .map(|v| v.iter())
        .multi_cartesian_product()
        .enumerate()
    {
        if tried as u128 >= budget {
            return Err(Error::BudgetExceeded {
                required: total,
                cap: budget,
            });
        }
        let order: BasisOrder = choice.into_iter().cloned().collect();
        let w = coefficient_quiver(rep, &order)?;
        if w.is_ordered() && is_polarization(&w) {
            return Ok(Some(order));
        }
    }
    if per_vertex.is_empty() {
        let w = coefficient_quiver(rep, &natural)?;
        if w.is_ordered() && is_polarization(&w) {
            return Ok(Some(natural));
        }
    }
    Ok(None)
}

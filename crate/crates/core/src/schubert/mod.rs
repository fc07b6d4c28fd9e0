//! Relevant pairs and triples, the ordering Ψ and the hypothesis check.

mod cells;
mod equation;

pub use cells::{
    betti_numbers, cell, cell_dimension, decompose, enumerate_type, euler_characteristic,
    free_coefficients, BettiReport, Cell, CellResult, Certificate,
};
pub use equation::{beta_reduced_equation, psi_beta, Monomial, ReducedEquation};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polarization::{polarization_witness, Sorting};
use crate::winding::{TArrow, Winding};

/// Index `(i, j)` of a coefficient `w_{i,j}`: same fibre, `i ≤ j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RelevantPair {
    pub i: usize,
    pub j: usize,
}

impl RelevantPair {
    pub fn new(i: usize, j: usize) -> Self {
        RelevantPair { i, j }
    }

    pub fn is_diagonal(&self) -> bool {
        self.i == self.j
    }
}

impl fmt::Display for RelevantPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// `(ε, δ, j)`, compared lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PsiKey {
    pub fibre_length: usize,
    pub root_distance: usize,
    pub j: usize,
}

impl fmt::Display for PsiKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{})",
            self.fibre_length, self.root_distance, self.j
        )
    }
}

/// Equation index `(ᾱ, t, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RelevantTriple {
    pub colour: usize,
    pub t: usize,
    pub s: usize,
}

/// Subset of winding vertices, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BetaSubset {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl BetaSubset {
    pub fn new(n: usize, members: &[usize]) -> Result<Self> {
        let mut mask = vec![false; n + 1];
        for &m in members {
            if m == 0 || m > n || mask[m] {
                return Err(Error::Parse(format!(
                    "subset element {m} is out of range or repeated"
                )));
            }
            mask[m] = true;
        }
        let members = (1..=n).filter(|&i| mask[i]).collect();
        Ok(BetaSubset { members, mask })
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask.get(i).copied().unwrap_or(false)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl fmt::Display for BetaSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Ψ for every relevant pair of a winding.
///
/// Distances are graph distances in the underlying undirected graph, so the
/// table exists for any winding; [`relevant_pairs`] additionally insists on a forest.
#[derive(Debug, Clone)]
pub struct PsiTable {
    pos: Vec<usize>,
    dist: Vec<usize>,
    fiber: Vec<usize>,
}

impl PsiTable {
    pub fn new(w: &Winding) -> Self {
        let n = w.vertex_count();
        let rd = w.root_distances();
        let mut pos = vec![0; n + 1];
        let mut dist = vec![0; n + 1];
        let mut fiber = vec![usize::MAX; n + 1];
        for i in 1..=n {
            pos[i] = w.position_in_fibre(i);
            dist[i] = rd[i].1;
            fiber[i] = w.fiber_of(i);
        }
        PsiTable { pos, dist, fiber }
    }

    pub fn psi(&self, p: RelevantPair) -> PsiKey {
        debug_assert!(self.fiber[p.i] == self.fiber[p.j] && p.i <= p.j);
        PsiKey {
            fibre_length: self.pos[p.j] - self.pos[p.i],
            root_distance: self.dist[p.i].max(self.dist[p.j]),
            j: p.j,
        }
    }

    /// Inverse of Ψ on relevant pairs; `j` and `ε` already pin down `i`.
    pub fn pair_of(&self, w: &Winding, key: PsiKey) -> RelevantPair {
        let fibre = w.fibre(self.fiber[key.j]);
        RelevantPair::new(fibre[self.pos[key.j] - key.fibre_length], key.j)
    }
}

fn all_pairs(w: &Winding) -> Vec<RelevantPair> {
    let mut out = Vec::new();
    for p in 0..w.base().vertex_count() {
        let f = w.fibre(p);
        for (a, &i) in f.iter().enumerate() {
            for &j in &f[a..] {
                out.push(RelevantPair::new(i, j));
            }
        }
    }
    out
}

/// Relevant pairs sorted by Ψ ascending.
pub fn relevant_pairs(w: &Winding) -> Result<Vec<RelevantPair>> {
    if !w.is_forest() {
        return Err(Error::NotForest);
    }
    let table = PsiTable::new(w);
    let mut pairs = all_pairs(w);
    pairs.sort_by_key(|&p| table.psi(p));
    let keys: BTreeSet<PsiKey> = pairs.iter().map(|&p| table.psi(p)).collect();
    assert_eq!(
        keys.len(),
        pairs.len(),
        "Ψ must be injective on relevant pairs"
    );
    if let Some(first) = pairs.first() {
        let n = w.vertex_count();
        if *first != RelevantPair::new(n, n) {
            log::debug!("Ψ-minimal relevant pair is {first}, not ({n},{n})");
        }
    }
    Ok(pairs)
}

pub fn psi(w: &Winding, pair: RelevantPair) -> Result<PsiKey> {
    if pair.i > pair.j || pair.j > w.vertex_count() || pair.i == 0 || !w.same_fibre(pair.i, pair.j)
    {
        return Err(Error::Parse(format!("{pair} is not a relevant pair")));
    }
    Ok(PsiTable::new(w).psi(pair))
}

fn is_relevant(w: &Winding, triple: RelevantTriple) -> bool {
    w.arrows_of_colour(triple.colour)
        .iter()
        .any(|a| a.source <= triple.s && triple.t <= a.target)
}

/// All `(ᾱ, t, s)` with `s`, `t` over the source and target of `ᾱ` admitting some
/// `α': s' → t'` of colour `ᾱ` with `s' ≤ s` and `t ≤ t'`.
pub fn relevant_triples(w: &Winding) -> Vec<RelevantTriple> {
    let mut out = Vec::new();
    for (colour, qa) in w.base().arrows().iter().enumerate() {
        for &t in w.fibre(qa.target) {
            for &s in w.fibre(qa.source) {
                let triple = RelevantTriple { colour, t, s };
                if is_relevant(w, triple) {
                    out.push(triple);
                }
            }
        }
    }
    out
}

/// The two pairs whose Ψ-maximum defines Ψ of a relevant triple.
pub fn triple_pairs(w: &Winding, triple: RelevantTriple) -> Option<(RelevantPair, RelevantPair)> {
    let arrows = w.arrows_of_colour(triple.colour);
    let s_min = arrows
        .iter()
        .filter(|a| triple.t <= a.target)
        .map(|a| a.source)
        .min()?;
    let t_max = arrows
        .iter()
        .filter(|a| a.source <= triple.s)
        .map(|a| a.target)
        .max()?;
    if s_min > triple.s || t_max < triple.t {
        return None;
    }
    Some((
        RelevantPair::new(s_min, triple.s),
        RelevantPair::new(triple.t, t_max),
    ))
}

fn psi_triple_with(table: &PsiTable, w: &Winding, triple: RelevantTriple) -> Option<PsiKey> {
    let (a, b) = triple_pairs(w, triple)?;
    Some(table.psi(a).max(table.psi(b)))
}

/// Ψ of a relevant triple; `None` when the triple is not relevant.
pub fn psi_triple(w: &Winding, triple: RelevantTriple) -> Option<PsiKey> {
    if !is_relevant(w, triple) {
        return None;
    }
    psi_triple_with(&PsiTable::new(w), w, triple)
}

/// For each relevant pair that is maximal for some colour, the set of those colours.
pub fn maximal_pair_colours(w: &Winding) -> BTreeMap<RelevantPair, BTreeSet<usize>> {
    let table = PsiTable::new(w);
    let mut out: BTreeMap<RelevantPair, BTreeSet<usize>> = BTreeMap::new();
    for triple in relevant_triples(w) {
        if let Some(key) = psi_triple_with(&table, w, triple) {
            out.entry(table.pair_of(w, key))
                .or_default()
                .insert(triple.colour);
        }
    }
    out
}

/// β meets no extremal arrow `s → t` with `s ∈ β` and `t ∉ β`.
pub fn is_extremal_successor_closed(w: &Winding, beta: &BetaSubset) -> bool {
    esc_witness(w, beta).is_none()
}

pub(crate) fn esc_witness(w: &Winding, beta: &BetaSubset) -> Option<TArrow> {
    w.extremal_arrows()
        .into_iter()
        .find(|a| beta.contains(a.source) && !beta.contains(a.target))
}

/// Every arrow `s → t` with `s ∈ β` has `t ∈ β`.
pub fn is_successor_closed(w: &Winding, beta: &BetaSubset) -> bool {
    w.arrows()
        .iter()
        .all(|a| !beta.contains(a.source) || beta.contains(a.target))
}

/// Outcome of the four structural conditions, with witnesses for failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub forest: bool,
    pub components: usize,
    pub ordered: bool,
    pub crossings: Vec<(TArrow, TArrow)>,
    pub polarization: bool,
    pub sortings: Vec<Sorting>,
    pub unsorted_colours: Vec<usize>,
    pub unique_maximal: bool,
    pub maximal_conflicts: Vec<(RelevantPair, Vec<usize>)>,
}

impl HypothesisReport {
    pub fn passed(&self) -> bool {
        self.forest && self.ordered && self.polarization && self.unique_maximal
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.forest {
            out.push("forest");
        }
        if !self.ordered {
            out.push("ordered");
        }
        if !self.polarization {
            out.push("polarization");
        }
        if !self.unique_maximal {
            out.push("unique_maximal");
        }
        out
    }
}

pub fn check_hypothesis(w: &Winding) -> HypothesisReport {
    let (sortings, unsorted_colours) = match polarization_witness(w) {
        Ok(s) => (s, Vec::new()),
        Err(missing) => (Vec::new(), missing),
    };
    let maximal_conflicts: Vec<(RelevantPair, Vec<usize>)> = maximal_pair_colours(w)
        .into_iter()
        .filter(|(_, c)| c.len() > 1)
        .map(|(p, c)| (p, c.into_iter().collect()))
        .collect();
    let crossings = w.crossings();
    HypothesisReport {
        forest: w.is_forest(),
        components: w.component_count(),
        ordered: crossings.is_empty(),
        crossings,
        polarization: unsorted_colours.is_empty(),
        sortings,
        unsorted_colours,
        unique_maximal: maximal_conflicts.is_empty(),
        maximal_conflicts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn pair(i: usize, j: usize) -> RelevantPair {
        RelevantPair::new(i, j)
    }

    #[test]
    fn kronecker_pairs_in_psi_order() {
        let w = fixtures::kronecker_3_4();
        let order: Vec<(usize, usize)> = relevant_pairs(&w)
            .unwrap()
            .iter()
            .map(|p| (p.i, p.j))
            .collect();
        assert_eq!(
            order,
            [
                (1, 1),
                (4, 4),
                (5, 5),
                (2, 2),
                (6, 6),
                (3, 3),
                (7, 7),
                (4, 5),
                (1, 2),
                (5, 6),
                (2, 3),
                (6, 7),
                (4, 6),
                (1, 3),
                (5, 7),
                (4, 7)
            ]
        );
        assert_eq!(
            psi(&w, pair(4, 6)).unwrap(),
            PsiKey {
                fibre_length: 2,
                root_distance: 3,
                j: 6
            }
        );
        assert_eq!(
            psi(&w, pair(1, 3)).unwrap(),
            PsiKey {
                fibre_length: 2,
                root_distance: 4,
                j: 3
            }
        );
        assert_eq!(
            psi(&w, pair(4, 7)).unwrap(),
            PsiKey {
                fibre_length: 3,
                root_distance: 5,
                j: 7
            }
        );
        let table = PsiTable::new(&w);
        assert_eq!(table.pair_of(&w, table.psi(pair(5, 7))), pair(5, 7));
    }

    #[test]
    fn relevant_pairs_need_a_forest() {
        assert_eq!(
            relevant_pairs(&fixtures::double_edge()),
            Err(Error::NotForest)
        );
    }

    #[test]
    fn hypothesis_reports() {
        let k = check_hypothesis(&fixtures::kronecker_3_4());
        assert!(k.passed());
        let splits: Vec<(usize, usize)> = k
            .sortings
            .iter()
            .map(|s| (s.source_split, s.target_split))
            .collect();
        assert_eq!(splits, [(0, 0), (0, 0)]);
        assert_eq!(
            check_hypothesis(&fixtures::non_ordered_f()).failures(),
            ["ordered"]
        );
        assert_eq!(
            check_hypothesis(&fixtures::non_polarized()).failures(),
            ["polarization"]
        );
        assert_eq!(
            check_hypothesis(&fixtures::double_edge()).failures(),
            ["forest", "unique_maximal"]
        );
        let dp = check_hypothesis(&fixtures::del_pezzo());
        assert_eq!(dp.failures(), ["unique_maximal"]);
        assert_eq!(dp.maximal_conflicts, [(pair(1, 3), vec![1, 2])]);
        let d4 = check_hypothesis(&fixtures::ramified_d4());
        assert_eq!(d4.maximal_conflicts, [(pair(1, 2), vec![1, 2])]);
    }

    #[test]
    fn extremal_successor_closure() {
        let w = fixtures::kronecker_3_4();
        assert!(is_extremal_successor_closed(
            &w,
            &BetaSubset::new(7, &[3, 6, 7]).unwrap()
        ));
        assert!(!is_extremal_successor_closed(
            &w,
            &BetaSubset::new(7, &[1, 6, 7]).unwrap()
        ));
        let d4 = fixtures::ramified_d4();
        let labels: Vec<String> = d4
            .extremal_arrows()
            .iter()
            .map(|a| d4.arrow_label(a))
            .collect();
        assert_eq!(labels, ["alpha:4→1", "gamma:3→2", "eta:5→2"]);
    }
}

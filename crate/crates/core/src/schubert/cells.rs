//! Cell dimensions, decompositions and the derived counts.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use super::beta_reduced_equation;
use super::equation::psi_beta_with;
use super::{
    esc_witness, relevant_triples, BetaSubset, PsiTable, ReducedEquation, RelevantPair,
    RelevantTriple,
};
use crate::error::{Error, Result};
use crate::quiver::DimensionVector;
use crate::winding::{TArrow, Winding};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellResult {
    Empty,
    Affine(usize),
    #[serde(rename = "violation")]
    HypothesisViolation(String),
}

/// Why a cell verdict holds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// β contains the source but not the target of this extremal arrow.
    ExtremalArrow(TArrow),
    /// This equation reduces to `1 = 0`.
    Contradiction(RelevantTriple),
    /// Sweeping relevant pairs by ascending Ψ solves each equation for its Ψ-largest coefficient.
    PsiSweep,
    /// Solved by another triangular pivot order after the Ψ sweep stalled.
    Reordered,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub beta: BetaSubset,
    pub result: CellResult,
    pub certificate: Option<Certificate>,
    pub free: usize,
    pub equations: Vec<ReducedEquation>,
}

/// Coefficients `w_{i,j}` with `i ∉ β`, `j ∈ β`, `i < j` in one fibre.
pub fn free_coefficients(w: &Winding, beta: &BetaSubset) -> Vec<RelevantPair> {
    let mut out = Vec::new();
    for &j in beta.members() {
        for &i in w.fibre(w.fiber_of(j)) {
            if i < j && !beta.contains(i) {
                out.push(RelevantPair::new(i, j));
            }
        }
    }
    out.sort();
    out
}

/// Nontrivial β-reduced equations.
fn nontrivial_equations(w: &Winding, beta: &BetaSubset) -> Vec<ReducedEquation> {
    relevant_triples(w)
        .into_iter()
        .filter(|t| !beta.contains(t.t) && beta.contains(t.s))
        .map(|t| beta_reduced_equation(w, beta, t))
        .filter(|e| !e.net().is_empty())
        .collect()
}

fn psi_sweep(
    table: &PsiTable,
    w: &Winding,
    free: &BTreeSet<RelevantPair>,
    eqs: &[ReducedEquation],
) -> std::result::Result<(), String> {
    let mut by_pivot: BTreeMap<RelevantPair, Vec<&ReducedEquation>> = BTreeMap::new();
    for eq in eqs {
        let key = psi_beta_with(table, eq).expect("nontrivial equations have indices");
        by_pivot.entry(table.pair_of(w, key)).or_default().push(eq);
    }
    let mut pivots: Vec<_> = by_pivot.into_iter().collect();
    pivots.sort_by_key(|(p, _)| table.psi(*p));
    for (pivot, group) in pivots {
        if group.len() > 1 {
            let list: Vec<String> = group.iter().map(|e| e.to_string()).collect();
            return Err(format!(
                "{} equations share the Ψ-pivot w_{{{},{}}}: {}",
                group.len(),
                pivot.i,
                pivot.j,
                list.join("; ")
            ));
        }
        if !free.contains(&pivot) || !group[0].solvable_for(pivot) {
            return Err(format!(
                "Ψ-pivot w_{{{},{}}} does not occur linearly in {}",
                pivot.i, pivot.j, group[0]
            ));
        }
    }
    Ok(())
}

/// Repeatedly removes an equation owning a linear unit coefficient no other
/// remaining equation mentions. Succeeds iff a triangular pivot order exists.
fn peel(eqs: &[ReducedEquation]) -> bool {
    let vars: Vec<Vec<RelevantPair>> = eqs.iter().map(ReducedEquation::variables).collect();
    let mut alive = vec![true; eqs.len()];
    let mut left = eqs.len();
    while left > 0 {
        let mut progress = false;
        for k in 0..eqs.len() {
            if !alive[k] {
                continue;
            }
            let exclusive = vars[k].iter().any(|v| {
                eqs[k].solvable_for(*v)
                    && (0..eqs.len()).all(|l| l == k || !alive[l] || !vars[l].contains(v))
            });
            if exclusive {
                alive[k] = false;
                left -= 1;
                progress = true;
            }
        }
        if !progress {
            return false;
        }
    }
    true
}

/// Decides the cell of β with a certificate.
///
/// An `Affine(d)` verdict always comes with a triangular solution of the
/// reduced system, so it is exact over every field; `HypothesisViolation`
/// means no such solution was found.
pub fn cell(w: &Winding, beta: &BetaSubset) -> Cell {
    let free_list = free_coefficients(w, beta);
    let mut cell = Cell {
        beta: beta.clone(),
        result: CellResult::Empty,
        certificate: None,
        free: free_list.len(),
        equations: vec![],
    };
    if let Some(a) = esc_witness(w, beta) {
        cell.certificate = Some(Certificate::ExtremalArrow(a));
        return cell;
    }
    let eqs = nontrivial_equations(w, beta);
    for eq in &eqs {
        if eq.variables().is_empty() {
            let c = eq.net().get(&super::Monomial::One).copied().unwrap_or(0);
            if c.abs() == 1 {
                cell.certificate = Some(Certificate::Contradiction(eq.triple));
            } else {
                cell.result = CellResult::HypothesisViolation(format!(
                    "constant equation {eq} depends on the characteristic"
                ));
            }
            cell.equations = eqs;
            return cell;
        }
    }
    let free: BTreeSet<RelevantPair> = free_list.into_iter().collect();
    let table = PsiTable::new(w);
    let d = free.len() - eqs.len().min(free.len());
    match psi_sweep(&table, w, &free, &eqs) {
        Ok(()) => {
            cell.result = CellResult::Affine(d);
            cell.certificate = Some(Certificate::PsiSweep);
        }
        Err(reason) => {
            log::debug!("β = {beta}: {reason}");
            if peel(&eqs) {
                cell.result = CellResult::Affine(d);
                cell.certificate = Some(Certificate::Reordered);
            } else {
                cell.result = CellResult::HypothesisViolation(format!(
                    "{reason}; no triangular pivot order exists"
                ));
            }
        }
    }
    cell.equations = eqs;
    cell
}

pub fn cell_dimension(w: &Winding, beta: &BetaSubset) -> CellResult {
    cell(w, beta).result
}

fn check_type(w: &Winding, e: &DimensionVector) -> Result<()> {
    if e.0.len() != w.base().vertex_count() {
        return Err(Error::Parse(
            "dimension vector length differs from the vertex count".into(),
        ));
    }
    for p in 0..e.0.len() {
        if e.get(p) > w.fibre(p).len() {
            return Err(Error::DimensionTooLarge(
                w.base().vertex_name(p).to_string(),
            ));
        }
    }
    Ok(())
}

/// All β of type `e` in lexicographic order.
pub fn enumerate_type(w: &Winding, e: &DimensionVector) -> Result<Vec<BetaSubset>> {
    check_type(w, e)?;
    let n = w.vertex_count();
    let per_vertex: Vec<Vec<Vec<usize>>> = (0..e.0.len())
        .map(|p| w.fibre(p).iter().copied().combinations(e.get(p)).collect())
        .collect();
    let mut out: Vec<BetaSubset> = per_vertex
        .iter()
        .map(|v| v.iter())
        .multi_cartesian_product()
        .map(|choice| {
            let members: Vec<usize> = choice.into_iter().flatten().copied().collect();
            BetaSubset::new(n, &members).expect("fibres are disjoint")
        })
        .collect();
    if per_vertex.is_empty() {
        out.push(BetaSubset::new(n, &[]).expect("empty subset"));
    }
    out.sort();
    Ok(out)
}

pub fn decompose(w: &Winding, e: &DimensionVector) -> Result<Vec<Cell>> {
    let betas = enumerate_type(w, e)?;
    Ok(betas.par_iter().map(|b| cell(w, b)).collect())
}

fn certified(cells: &[Cell]) -> Result<()> {
    if let Some(c) = cells
        .iter()
        .find(|c| matches!(c.result, CellResult::HypothesisViolation(_)))
    {
        if let CellResult::HypothesisViolation(reason) = &c.result {
            return Err(Error::HypothesisViolation(format!(
                "β = {}: {reason}",
                c.beta
            )));
        }
    }
    Ok(())
}

/// Number of nonempty cells; with the hypothesis in force this is the number
/// of extremal successor closed subsets of type `e`.
pub fn euler_characteristic(w: &Winding, e: &DimensionVector) -> Result<usize> {
    let cells = decompose(w, e)?;
    certified(&cells)?;
    Ok(cells
        .iter()
        .filter(|c| matches!(c.result, CellResult::Affine(_)))
        .count())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiReport {
    /// `counts[d]` is the number of cells of dimension `d`.
    pub counts: Vec<usize>,
    pub smooth_asserted: bool,
    pub caveat: Option<String>,
}

/// Cell counts per dimension. These are Betti numbers `b_{2d}` only for a
/// smooth projective Grassmannian, which the caller asserts through `smooth`.
pub fn betti_numbers(w: &Winding, e: &DimensionVector, smooth: bool) -> Result<BettiReport> {
    let cells = decompose(w, e)?;
    certified(&cells)?;
    let mut counts = Vec::new();
    for c in &cells {
        if let CellResult::Affine(d) = c.result {
            if counts.len() <= d {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
    }
    let caveat = (!smooth).then(|| {
        "cell counts per dimension; Betti numbers only if the Grassmannian is smooth".to_string()
    });
    Ok(BettiReport {
        counts,
        smooth_asserted: smooth,
        caveat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::schubert::relevant_triples;

    fn beta(n: usize, m: &[usize]) -> BetaSubset {
        BetaSubset::new(n, m).unwrap()
    }

    #[test]
    fn kronecker_cell_equations() {
        let w = fixtures::kronecker_3_4();
        let b = beta(7, &[3, 6, 7]);
        let eqs: Vec<String> = relevant_triples(&w)
            .into_iter()
            .map(|t| beta_reduced_equation(&w, &b, t))
            .filter(|e| !e.is_trivial())
            .map(|e| e.to_string().replace(' ', ""))
            .collect();
        assert_eq!(
            eqs,
            [
                "w_{1,3}=w_{4,6}",
                "w_{2,3}=w_{5,6}",
                "0=w_{2,3}w_{4,6}+w_{4,7}",
                "w_{1,3}=w_{2,3}w_{5,6}+w_{5,7}"
            ]
        );
        let c = cell(&w, &b);
        assert_eq!(
            (c.result, c.certificate, c.free),
            (CellResult::Affine(2), Some(Certificate::PsiSweep), 6)
        );
        assert_eq!(cell_dimension(&w, &beta(7, &[1, 6, 7])), CellResult::Empty);
        assert_eq!(
            euler_characteristic(&w, &DimensionVector(vec![1, 2])),
            Ok(3)
        );
    }

    #[test]
    fn del_pezzo_cells() {
        let w = fixtures::del_pezzo();
        let e = DimensionVector(vec![2, 1, 1, 1]);
        let cells = decompose(&w, &e).unwrap();
        assert_eq!(cells.len(), 24);
        let affine: Vec<(String, usize)> = cells
            .iter()
            .filter_map(|c| match c.result {
                CellResult::Affine(d) => Some((c.beta.to_string(), d)),
                _ => None,
            })
            .collect();
        let expected = [
            ("{1,2,4,6,8}", 0),
            ("{1,2,5,6,8}", 1),
            ("{1,3,4,6,9}", 1),
            ("{1,3,4,7,9}", 1),
            ("{2,3,5,7,8}", 1),
            ("{2,3,5,7,9}", 2),
        ];
        assert_eq!(affine, expected.map(|(b, d)| (b.to_string(), d)));
        let top = cells
            .iter()
            .find(|c| c.beta.to_string() == "{2,3,5,7,9}")
            .unwrap();
        assert_eq!(top.certificate, Some(Certificate::Reordered));
        assert_eq!(euler_characteristic(&w, &e), Ok(6));
        let betti = betti_numbers(&w, &e, true).unwrap();
        assert_eq!((betti.counts, betti.caveat), (vec![1, 4, 1], None));
        assert!(betti_numbers(&w, &e, false).unwrap().caveat.is_some());
    }

    #[test]
    fn ramified_d4_cells() {
        let w = fixtures::ramified_d4();
        assert_eq!(
            euler_characteristic(&w, &DimensionVector(vec![1, 1, 0, 0])),
            Ok(1)
        );
        let c = cell(&w, &beta(5, &[2, 3, 5]));
        assert!(matches!(c.result, CellResult::HypothesisViolation(_)));
        assert!(matches!(
            euler_characteristic(&w, &DimensionVector(vec![1, 1, 0, 1])),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn enumeration_rejects_oversized_types() {
        let w = fixtures::kronecker_3_4();
        assert!(matches!(
            enumerate_type(&w, &DimensionVector(vec![4, 0])),
            Err(Error::DimensionTooLarge(_))
        ));
        assert_eq!(
            enumerate_type(&w, &DimensionVector(vec![1, 2]))
                .unwrap()
                .len(),
            18
        );
    }
}

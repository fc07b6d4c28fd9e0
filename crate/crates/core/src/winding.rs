//! Windings (coloured coefficient quivers) and their combinatorics.
//!
//! Vertices of a winding are numbered `1..=n`; this numbering is the
//! global order used by every ordering condition.

use std::collections::VecDeque;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::quiver::{DimensionVector, Quiver, Representation};

/// Arrow of a winding; `colour` indexes the base quiver's arrows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TArrow {
    pub colour: usize,
    pub source: usize,
    pub target: usize,
}

/// Per base vertex, the winding vertex assigned to each standard basis vector.
pub type BasisOrder = Vec<Vec<usize>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Winding {
    base: Quiver,
    fiber: Vec<usize>,
    arrows: Vec<TArrow>,
    fibres: Vec<Vec<usize>>,
    by_colour: Vec<Vec<TArrow>>,
}

impl Winding {
    /// `fiber[i - 1]` is the base vertex of winding vertex `i`.
    pub fn new(base: Quiver, fiber: Vec<usize>, mut arrows: Vec<TArrow>) -> Result<Self> {
        let n = fiber.len();
        if let Some(&p) = fiber.iter().find(|&&p| p >= base.vertex_count()) {
            return Err(Error::InvalidWinding(format!(
                "fibre vertex index {p} out of range"
            )));
        }
        for a in &arrows {
            if a.colour >= base.arrows().len() {
                return Err(Error::InvalidWinding(format!(
                    "colour index {} out of range",
                    a.colour
                )));
            }
            if a.source == 0 || a.source > n || a.target == 0 || a.target > n {
                return Err(Error::InvalidWinding(format!(
                    "arrow {}→{} leaves 1..={n}",
                    a.source, a.target
                )));
            }
            let qa = &base.arrows()[a.colour];
            if fiber[a.source - 1] != qa.source || fiber[a.target - 1] != qa.target {
                return Err(Error::InvalidWinding(format!(
                    "arrow {}:{}→{} is not compatible with the fibres",
                    qa.name, a.source, a.target
                )));
            }
        }
        arrows.sort();
        if let Some(w) = arrows.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidWinding(format!(
                "duplicate arrow {}→{}",
                w[0].source, w[0].target
            )));
        }
        let mut fibres = vec![Vec::new(); base.vertex_count()];
        for (i, &p) in fiber.iter().enumerate() {
            fibres[p].push(i + 1);
        }
        let mut by_colour = vec![Vec::new(); base.arrows().len()];
        for a in &arrows {
            by_colour[a.colour].push(*a);
        }
        Ok(Winding {
            base,
            fiber,
            arrows,
            fibres,
            by_colour,
        })
    }

    /// Builds a winding from names: fibre vertex names and `(colour, source, target)` triples.
    pub fn from_names<S: AsRef<str>>(
        base: Quiver,
        fiber: &[S],
        arrows: &[(S, usize, usize)],
    ) -> Result<Self> {
        let fiber = fiber
            .iter()
            .map(|p| base.vertex_index(p.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let arrows = arrows
            .iter()
            .map(|(c, s, t)| {
                Ok(TArrow {
                    colour: base.arrow_index(c.as_ref())?,
                    source: *s,
                    target: *t,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Winding::new(base, fiber, arrows)
    }

    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn vertex_count(&self) -> usize {
        self.fiber.len()
    }

    /// Base vertex of winding vertex `i`.
    pub fn fiber_of(&self, i: usize) -> usize {
        self.fiber[i - 1]
    }

    pub fn fiber(&self) -> &[usize] {
        &self.fiber
    }

    /// Sorted winding vertices over base vertex `p`.
    pub fn fibre(&self, p: usize) -> &[usize] {
        &self.fibres[p]
    }

    /// Arrows sorted by `(colour, source, target)`.
    pub fn arrows(&self) -> &[TArrow] {
        &self.arrows
    }

    pub fn arrows_of_colour(&self, colour: usize) -> &[TArrow] {
        &self.by_colour[colour]
    }

    pub fn dims(&self) -> DimensionVector {
        DimensionVector(self.fibres.iter().map(Vec::len).collect())
    }

    /// Zero-based position of `i` inside its fibre.
    pub fn position_in_fibre(&self, i: usize) -> usize {
        self.fibres[self.fiber_of(i)]
            .binary_search(&i)
            .expect("vertex lies in its fibre")
    }

    /// The order under which the push-forward's coefficient quiver is this winding.
    pub fn basis_order(&self) -> BasisOrder {
        self.fibres.clone()
    }

    pub fn same_fibre(&self, i: usize, j: usize) -> bool {
        self.fiber_of(i) == self.fiber_of(j)
    }

    pub fn arrow_label(&self, a: &TArrow) -> String {
        format!(
            "{}:{}→{}",
            self.base.arrow_name(a.colour),
            a.source,
            a.target
        )
    }

    /// Renumbers vertex `i` as `perm[i - 1]`; `perm` must be a permutation of `1..=n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Winding> {
        let n = self.vertex_count();
        check_permutation(perm, n)?;
        let mut fiber = vec![0; n];
        for i in 1..=n {
            fiber[perm[i - 1] - 1] = self.fiber_of(i);
        }
        let arrows = self
            .arrows
            .iter()
            .map(|a| TArrow {
                colour: a.colour,
                source: perm[a.source - 1],
                target: perm[a.target - 1],
            })
            .collect();
        Winding::new(self.base.clone(), fiber, arrows)
    }

    /// 0/1 representation over ℚ whose coefficient quiver is this winding.
    pub fn push_forward(&self) -> Representation {
        let dims = self.dims();
        let mut rep = Representation::zero(self.base.clone(), dims, Field::Rational);
        let one = crate::linalg::ExactScalar::Rational(BigRational::one());
        for a in &self.arrows {
            let (r, c) = (
                self.position_in_fibre(a.target),
                self.position_in_fibre(a.source),
            );
            rep.matrix_mut(a.colour)
                .set(r, c, one.clone())
                .expect("rational matrix");
        }
        rep
    }

    fn components(&self) -> (Vec<usize>, usize, bool) {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let mut acyclic = true;
        for a in &self.arrows {
            let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
            if x == y {
                acyclic = false;
            } else {
                parent[x.max(y)] = x.min(y);
            }
        }
        let roots: Vec<usize> = (0..=n).map(|i| find(&mut parent, i)).collect();
        let count = (1..=n).filter(|&i| roots[i] == i).count();
        (roots, count, acyclic)
    }

    /// True iff the underlying undirected graph has no cycle.
    pub fn is_forest(&self) -> bool {
        self.components().2
    }

    /// Forest check; the number of components is reported separately.
    pub fn is_tree(&self) -> bool {
        self.is_forest()
    }

    pub fn is_connected_tree(&self) -> bool {
        let (_, count, acyclic) = self.components();
        acyclic && count <= 1
    }

    pub fn component_count(&self) -> usize {
        self.components().1
    }

    /// `(root, distance)` per vertex, the root being the smallest vertex of its component.
    pub fn root_distances(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n + 1];
        for a in &self.arrows {
            adj[a.source].push(a.target);
            adj[a.target].push(a.source);
        }
        let mut out = vec![(0, usize::MAX); n + 1];
        for r in 1..=n {
            if out[r].1 != usize::MAX {
                continue;
            }
            out[r] = (r, 0);
            let mut queue = VecDeque::from([r]);
            while let Some(v) = queue.pop_front() {
                for &u in &adj[v] {
                    if out[u].1 == usize::MAX {
                        out[u] = (r, out[v].1 + 1);
                        queue.push_back(u);
                    }
                }
            }
        }
        out
    }

    /// Same-colour pairs `(α, α')` with `s(α) < s(α')` but `t(α) > t(α')`.
    pub fn crossings(&self) -> Vec<(TArrow, TArrow)> {
        let mut out = Vec::new();
        for arrows in &self.by_colour {
            for a in arrows {
                for b in arrows {
                    if a.source < b.source && a.target > b.target {
                        out.push((*a, *b));
                    }
                }
            }
        }
        out
    }

    /// Same-colour arrows never cross.
    pub fn is_ordered(&self) -> bool {
        self.by_colour.iter().all(|arrows| {
            arrows.iter().all(|a| {
                arrows
                    .iter()
                    .all(|b| !(a.source < b.source && a.target > b.target))
            })
        })
    }

    /// Number of arrows of the given colour incident to `i`.
    pub fn ramification_index(&self, i: usize, colour: usize) -> usize {
        self.by_colour[colour]
            .iter()
            .filter(|a| a.source == i || a.target == i)
            .count()
    }

    pub fn is_unramified(&self) -> bool {
        (1..=self.vertex_count())
            .all(|i| (0..self.by_colour.len()).all(|c| self.ramification_index(i, c) <= 1))
    }

    /// `α: s→t` such that every other arrow `α'` of its colour has `s < s'` or `t' < t`.
    pub fn extremal_arrows(&self) -> Vec<TArrow> {
        let mut out = Vec::new();
        for arrows in &self.by_colour {
            for a in arrows {
                if arrows
                    .iter()
                    .all(|b| b == a || a.source < b.source || b.target < a.target)
                {
                    out.push(*a);
                }
            }
        }
        out
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidOrdering(format!(
            "expected {n} labels, got {}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n + 1];
    for &p in perm {
        if p == 0 || p > n || seen[p] {
            return Err(Error::InvalidOrdering(format!(
                "label {p} is out of range or repeated"
            )));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Concatenates the standard bases in base-vertex order.
pub fn natural_order(dims: &DimensionVector) -> BasisOrder {
    let mut next = 1;
    dims.0
        .iter()
        .map(|&d| {
            let v: Vec<usize> = (next..next + d).collect();
            next += d;
            v
        })
        .collect()
}

/// Coefficient quiver of `rep` for the basis labelled by `order`.
///
/// Arrow `α: b → c` of colour `a` exists iff the entry of `M_a` at row
/// `c`, column `b` is nonzero.
pub fn coefficient_quiver(rep: &Representation, order: &BasisOrder) -> Result<Winding> {
    let quiver = rep.quiver();
    if order.len() != quiver.vertex_count() {
        return Err(Error::InvalidOrdering(
            "one label list per vertex is required".into(),
        ));
    }
    let n = rep.dims().total();
    let mut fiber = vec![usize::MAX; n];
    for (p, labels) in order.iter().enumerate() {
        if labels.len() != rep.dims().get(p) {
            return Err(Error::InvalidOrdering(format!(
                "vertex `{}` needs {} labels",
                quiver.vertex_name(p),
                rep.dims().get(p)
            )));
        }
        for &l in labels {
            if l == 0 || l > n || fiber[l - 1] != usize::MAX {
                return Err(Error::InvalidOrdering(format!(
                    "label {l} is out of range or repeated"
                )));
            }
            fiber[l - 1] = p;
        }
    }
    let mut arrows = Vec::new();
    for (c, a) in quiver.arrows().iter().enumerate() {
        let m = rep.matrix(c);
        for row in 0..m.rows() {
            for col in 0..m.cols() {
                if !m.is_zero_at(row, col) {
                    arrows.push(TArrow {
                        colour: c,
                        source: order[a.source][col],
                        target: order[a.target][row],
                    });
                }
            }
        }
    }
    Winding::new(quiver.clone(), fiber, arrows)
}

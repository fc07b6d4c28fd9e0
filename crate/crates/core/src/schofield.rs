//! Hom and Ext between representations, and gluing of windings along a
//! tree-shaped basis of `Ext(X, Y)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, ExactScalar};
use crate::polarization::is_weak_polarization;
use crate::quiver::{DimensionVector, Quiver, Representation};
use crate::winding::{BasisOrder, TArrow, Winding};

fn domain_offsets(x: &DimensionVector, y: &DimensionVector) -> (Vec<usize>, usize) {
    let mut offsets = Vec::with_capacity(x.0.len());
    let mut total = 0;
    for (a, b) in x.0.iter().zip(&y.0) {
        offsets.push(total);
        total += a * b;
    }
    (offsets, total)
}

fn codomain_offsets(q: &Quiver, x: &DimensionVector, y: &DimensionVector) -> (Vec<usize>, usize) {
    let mut offsets = Vec::with_capacity(q.arrows().len());
    let mut total = 0;
    for a in q.arrows() {
        offsets.push(total);
        total += x.get(a.source) * y.get(a.target);
    }
    (offsets, total)
}

/// Matrix of `f ↦ (Y_a f_{s(a)} − f_{t(a)} X_a)_a`.
///
/// Coordinates `(q, k, l)` of the domain stand for the map sending the
/// `k`-th basis vector of `X_q` to the `l`-th of `Y_q`; the codomain uses
/// `(a, k, l)` in arrow order likewise.
pub fn gamma_matrix(x: &Representation, y: &Representation) -> Result<ExactMatrix> {
    if x.quiver() != y.quiver() {
        return Err(Error::QuiverMismatch);
    }
    if x.field() != y.field() {
        return Err(Error::MixedFields);
    }
    let q = x.quiver();
    let (xd, yd) = (x.dims(), y.dims());
    let (dom, cols) = domain_offsets(xd, yd);
    let (cod, rows) = codomain_offsets(q, xd, yd);
    let mut m = ExactMatrix::zeros(x.field(), rows, cols);
    for (ai, a) in q.arrows().iter().enumerate() {
        let (xs, yt) = (xd.get(a.source), yd.get(a.target));
        let coord = |k: usize, l: usize| cod[ai] + k * yt + l;
        for k in 0..xs {
            for l in 0..yd.get(a.source) {
                let col = dom[a.source] + k * yd.get(a.source) + l;
                for lp in 0..yt {
                    let v = y.matrix(ai).get(lp, l);
                    if !v.is_zero() {
                        m.set(coord(k, lp), col, v)?;
                    }
                }
            }
        }
        for k in 0..xd.get(a.target) {
            for l in 0..yt {
                let col = dom[a.target] + k * yt + l;
                for kp in 0..xs {
                    let v = x.matrix(ai).get(k, kp);
                    if !v.is_zero() {
                        m.set(coord(kp, l), col, v.neg())?;
                    }
                }
            }
        }
    }
    Ok(m)
}

/// `(dim Hom(X, Y), dim Ext(X, Y))`.
pub fn hom_ext(x: &Representation, y: &Representation) -> Result<(usize, usize)> {
    let g = gamma_matrix(x, y)?;
    let r = g.rank();
    Ok((g.cols() - r, g.rows() - r))
}

pub fn hom_dim(x: &Representation, y: &Representation) -> Result<usize> {
    Ok(hom_ext(x, y)?.0)
}

pub fn ext_dim(x: &Representation, y: &Representation) -> Result<usize> {
    Ok(hom_ext(x, y)?.1)
}

/// `⟨x, y⟩ = Σ_q x_q y_q − Σ_a x_{s(a)} y_{t(a)}`.
pub fn euler_form(q: &Quiver, x: &DimensionVector, y: &DimensionVector) -> i64 {
    let vertices: i64 = x.0.iter().zip(&y.0).map(|(a, b)| (a * b) as i64).sum();
    let arrows: i64 = q
        .arrows()
        .iter()
        .map(|a| (x.get(a.source) * y.get(a.target)) as i64)
        .sum();
    vertices - arrows
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExceptionalPairReport {
    pub hom_xx: usize,
    pub ext_xx: usize,
    pub hom_yy: usize,
    pub ext_yy: usize,
    pub hom_xy: usize,
    pub ext_xy: usize,
    pub hom_yx: usize,
    pub ext_yx: usize,
}

impl ExceptionalPairReport {
    /// First violated condition, if any.
    pub fn failure(&self) -> Option<&'static str> {
        if self.hom_xx != 1 || self.ext_xx != 0 {
            Some("X is not exceptional")
        } else if self.hom_yy != 1 || self.ext_yy != 0 {
            Some("Y is not exceptional")
        } else if self.hom_xy != 0 {
            Some("Hom(X, Y) ≠ 0")
        } else if self.hom_yx != 0 || self.ext_yx != 0 {
            Some("X is not right orthogonal to Y")
        } else if self.ext_xy == 0 {
            Some("Ext(X, Y) = 0 leaves nothing to glue")
        } else {
            None
        }
    }

    pub fn holds(&self) -> bool {
        self.failure().is_none()
    }
}

pub fn exceptional_pair_report(
    y: &Representation,
    x: &Representation,
) -> Result<ExceptionalPairReport> {
    let (hom_xx, ext_xx) = hom_ext(x, x)?;
    let (hom_yy, ext_yy) = hom_ext(y, y)?;
    let (hom_xy, ext_xy) = hom_ext(x, y)?;
    let (hom_yx, ext_yx) = hom_ext(y, x)?;
    Ok(ExceptionalPairReport {
        hom_xx,
        ext_xx,
        hom_yy,
        ext_yy,
        hom_xy,
        ext_xy,
        hom_yx,
        ext_yx,
    })
}

/// `(Y, X)` is an exceptional sequence with `Hom(X, Y) = 0` and `Ext(X, Y) ≠ 0`.
pub fn is_exceptional_pair(y: &Representation, x: &Representation) -> Result<bool> {
    Ok(exceptional_pair_report(y, x)?.holds())
}

/// Basis element of `Ext(X, Y)`: colour `a`, a vertex of `T_X` over `s(a)`
/// and a vertex of `T_Y` over `t(a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExtBasisElement {
    pub colour: usize,
    pub source: usize,
    pub target: usize,
}

/// The same element in local coordinates: `k` indexes `X_{s(a)}`, `l` indexes `Y_{t(a)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ExtCoordinate {
    pub colour: usize,
    pub k: usize,
    pub l: usize,
}

impl ExtBasisElement {
    pub fn coordinate(&self, tx: &Winding, ty: &Winding) -> Result<ExtCoordinate> {
        let q = tx.base();
        let bad = |why: &str| Error::InvalidWinding(format!("basis element {:?}: {why}", self));
        let a = q
            .arrows()
            .get(self.colour)
            .ok_or_else(|| bad("unknown colour"))?;
        if self.source == 0
            || self.source > tx.vertex_count()
            || tx.fiber_of(self.source) != a.source
        {
            return Err(bad("source is not a vertex of T_X over s(a)"));
        }
        if self.target == 0
            || self.target > ty.vertex_count()
            || ty.fiber_of(self.target) != a.target
        {
            return Err(bad("target is not a vertex of T_Y over t(a)"));
        }
        Ok(ExtCoordinate {
            colour: self.colour,
            k: tx.position_in_fibre(self.source),
            l: ty.position_in_fibre(self.target),
        })
    }
}

/// Rank of `[γ | chosen unit vectors]` equals `rank γ` plus their number.
pub fn check_tree_shaped_basis(
    tx: &Winding,
    ty: &Winding,
    elements: &[ExtBasisElement],
) -> Result<bool> {
    if tx.base() != ty.base() {
        return Err(Error::QuiverMismatch);
    }
    let (x, y) = (tx.push_forward(), ty.push_forward());
    let g = gamma_matrix(&x, &y)?;
    let r = g.rank();
    let ext = g.rows() - r;
    if elements.len() != ext {
        return Err(Error::WrongCount {
            expected: ext,
            got: elements.len(),
        });
    }
    let (cod, _) = codomain_offsets(x.quiver(), x.dims(), y.dims());
    let mut e = ExactMatrix::zeros(g.field(), g.rows(), elements.len());
    for (c, el) in elements.iter().enumerate() {
        let co = el.coordinate(tx, ty)?;
        let yt = y.dims().get(x.quiver().arrows()[co.colour].target);
        e.set(
            cod[co.colour] + co.k * yt + co.l,
            c,
            ExactScalar::integer(1),
        )?;
    }
    Ok(g.hstack(&e)?.rank() == r + elements.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisPolarization {
    NotPolarized,
    Polarized,
    Strong,
}

fn colours_out(w: &Winding, v: usize) -> impl Iterator<Item = usize> + '_ {
    w.arrows()
        .iter()
        .filter(move |a| a.source == v)
        .map(|a| a.colour)
}

fn colours_in(w: &Winding, v: usize) -> impl Iterator<Item = usize> + '_ {
    w.arrows()
        .iter()
        .filter(move |a| a.target == v)
        .map(|a| a.colour)
}

/// Level of the basis together with the first violated clause below it.
pub fn basis_polarization(
    tx: &Winding,
    ty: &Winding,
    elements: &[ExtBasisElement],
) -> (BasisPolarization, Option<String>) {
    let s_x = |e: &ExtBasisElement| colours_out(tx, e.source).any(|c| c == e.colour);
    let t_y = |e: &ExtBasisElement| colours_in(ty, e.target).any(|c| c == e.colour);
    let mut colours: Vec<usize> = elements.iter().map(|e| e.colour).collect();
    colours.sort();
    colours.dedup();
    if colours.len() == elements.len() && elements.iter().all(|e| !s_x(e) && !t_y(e)) {
        return (BasisPolarization::Strong, None);
    }
    let name = |e: &ExtBasisElement| tx.base().arrow_name(e.colour).to_string();
    for e in elements {
        if s_x(e) && t_y(e) {
            return (
                BasisPolarization::NotPolarized,
                Some(format!(
                    "(a): {} leaves the source and enters the target of {e:?}",
                    name(e)
                )),
            );
        }
    }
    for (k, e) in elements.iter().enumerate() {
        for (l, f) in elements.iter().enumerate() {
            if k == l || e.colour != f.colour {
                continue;
            }
            if e.source == f.source && t_y(e) {
                return (
                    BasisPolarization::NotPolarized,
                    Some(format!(
                        "(b): shared source with {} entering target {}",
                        name(e),
                        e.target
                    )),
                );
            }
            if e.target == f.target && s_x(e) {
                return (
                    BasisPolarization::NotPolarized,
                    Some(format!(
                        "(b): shared target with {} leaving source {}",
                        name(e),
                        e.source
                    )),
                );
            }
        }
    }
    let degree = |w: &Winding, c: usize, v: usize| w.ramification_index(v, c);
    for e in elements {
        for a in tx
            .arrows_of_colour(e.colour)
            .iter()
            .filter(|a| a.source == e.source)
        {
            if degree(tx, e.colour, a.target) != 1 {
                return (
                    BasisPolarization::NotPolarized,
                    Some(format!(
                        "(c): vertex {} of T_X has {} {}-arrows",
                        a.target,
                        degree(tx, e.colour, a.target),
                        name(e)
                    )),
                );
            }
        }
        for a in ty
            .arrows_of_colour(e.colour)
            .iter()
            .filter(|a| a.target == e.target)
        {
            if degree(ty, e.colour, a.source) != 1 {
                return (
                    BasisPolarization::NotPolarized,
                    Some(format!(
                        "(c): vertex {} of T_Y has {} {}-arrows",
                        a.source,
                        degree(ty, e.colour, a.source),
                        name(e)
                    )),
                );
            }
        }
    }
    let why = if colours.len() != elements.len() {
        "colours repeat"
    } else {
        "an endpoint already carries its colour"
    };
    (
        BasisPolarization::Polarized,
        Some(format!("not strong: {why}")),
    )
}

pub fn check_basis_polarization(
    tx: &Winding,
    ty: &Winding,
    elements: &[ExtBasisElement],
) -> BasisPolarization {
    basis_polarization(tx, ty, elements).0
}

/// Inputs of a gluing: `T_X`, `T_Y`, a basis of `Ext(X, Y)` and a winding
/// `T_M` over the Kronecker quiver with one arrow per basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingSpec {
    pub tx: Winding,
    pub ty: Winding,
    pub basis: Vec<ExtBasisElement>,
    pub tm: Winding,
}

impl GluingSpec {
    fn copies(&self) -> (usize, usize) {
        (self.tm.fibre(0).len(), self.tm.fibre(1).len())
    }

    /// First label of the copy attached to vertex `u` of `T_M`.
    fn offset(&self, u: usize) -> usize {
        let (d, _) = self.copies();
        let pos = self.tm.position_in_fibre(u);
        if self.tm.fiber_of(u) == 0 {
            pos * self.tx.vertex_count()
        } else {
            d * self.tx.vertex_count() + pos * self.ty.vertex_count()
        }
    }

    /// Basis order of the middle term under which its coefficient quiver is the glued winding.
    pub fn basis_order(&self) -> BasisOrder {
        let (d, e) = self.copies();
        let (nx, ny) = (self.tx.vertex_count(), self.ty.vertex_count());
        (0..self.tx.base().vertex_count())
            .map(|p| {
                let mut labels = Vec::new();
                for u in 0..d {
                    labels.extend(self.tx.fibre(p).iter().map(|b| u * nx + b));
                }
                for v in 0..e {
                    labels.extend(self.ty.fibre(p).iter().map(|c| d * nx + v * ny + c));
                }
                labels
            })
            .collect()
    }

    fn check(&self) -> Result<()> {
        let fail = |s: &str| Err(Error::PreconditionFailed(s.to_string()));
        if self.tx.base() != self.ty.base() {
            return Err(Error::QuiverMismatch);
        }
        if !self.tx.base().is_acyclic() {
            return fail("the base quiver has an oriented cycle");
        }
        let km = self.tm.base();
        let m = self.basis.len();
        if m == 0
            || km.vertex_count() != 2
            || km.arrows().len() != m
            || km.arrows().iter().any(|a| a.source != 0 || a.target != 1)
        {
            return fail(
                "T_M must live over the Kronecker quiver with one arrow per basis element",
            );
        }
        if !self.tm.is_connected_tree() {
            return fail("T_M is not a tree");
        }
        if !is_weak_polarization(&self.tx) || !is_weak_polarization(&self.ty) {
            return fail("T_X and T_Y must be weak polarizations");
        }
        match check_tree_shaped_basis(&self.tx, &self.ty, &self.basis) {
            Ok(true) => {}
            Ok(false) => return fail("the chosen elements are not a basis of Ext(X, Y)"),
            Err(Error::WrongCount { expected, got }) => {
                return Err(Error::PreconditionFailed(format!(
                    "Ext(X, Y) has dimension {expected} but {got} elements were given"
                )))
            }
            Err(e) => return Err(e),
        }
        let (level, why) = basis_polarization(&self.tx, &self.ty, &self.basis);
        let unramified = self.tm.is_unramified();
        if unramified && level >= BasisPolarization::Polarized {
            return Ok(());
        }
        if level == BasisPolarization::Strong && is_weak_polarization(&self.tm) {
            return Ok(());
        }
        Err(Error::PreconditionFailed(format!(
            "need T_M unramified with a polarized basis, or a strong basis with T_M a weak polarization (T_M unramified: {unramified}, basis: {level:?}{})",
            why.map(|w| format!(", {w}")).unwrap_or_default()
        )))
    }
}

/// Glued winding: copies of `T_X` for the `q0`-vertices of `T_M`, then
/// copies of `T_Y` for its `q1`-vertices, joined by one arrow per arrow of `T_M`.
pub fn glue(spec: &GluingSpec) -> Result<Winding> {
    spec.check()?;
    let (d, e) = spec.copies();
    let mut fiber = Vec::new();
    let mut arrows = Vec::new();
    for (copies, w) in [(d, &spec.tx), (e, &spec.ty)] {
        for _ in 0..copies {
            let off = fiber.len();
            fiber.extend_from_slice(w.fiber());
            arrows.extend(w.arrows().iter().map(|a| TArrow {
                colour: a.colour,
                source: a.source + off,
                target: a.target + off,
            }));
        }
    }
    for rho in spec.tm.arrows() {
        let el = spec.basis[rho.colour];
        arrows.push(TArrow {
            colour: el.colour,
            source: spec.offset(rho.source) + el.source,
            target: spec.offset(rho.target) + el.target,
        });
    }
    let z = Winding::new(spec.tx.base().clone(), fiber, arrows)?;
    if !z.is_connected_tree() {
        return Err(Error::NotTreeAfterGlue);
    }
    if !is_weak_polarization(&z) {
        return Err(Error::NotWeakPolarization);
    }
    Ok(z)
}

/// Middle term of `0 → Y^e → Z → X^d → 0` for a representation `M` of the
/// Kronecker quiver of dimension `(d, e)`; basis vectors of each `Z_q` list
/// the `X` copies before the `Y` copies.
pub fn middle_term(
    x: &Representation,
    y: &Representation,
    coords: &[ExtCoordinate],
    kron: &Representation,
) -> Result<Representation> {
    if x.quiver() != y.quiver() {
        return Err(Error::QuiverMismatch);
    }
    if kron.quiver().arrows().len() != coords.len() || kron.quiver().vertex_count() != 2 {
        return Err(Error::WrongCount {
            expected: coords.len(),
            got: kron.quiver().arrows().len(),
        });
    }
    if x.field() != y.field() || (!kron.quiver().arrows().is_empty() && kron.field() != x.field()) {
        return Err(Error::MixedFields);
    }
    let q = x.quiver();
    let (d, e) = (kron.dims().get(0), kron.dims().get(1));
    let dims = DimensionVector(
        (0..q.vertex_count())
            .map(|p| d * x.dims().get(p) + e * y.dims().get(p))
            .collect(),
    );
    let mut z = Representation::zero(q.clone(), dims.clone(), x.field());
    for (ai, a) in q.arrows().iter().enumerate() {
        let (xs, xt) = (x.dims().get(a.source), x.dims().get(a.target));
        let (ys, yt) = (y.dims().get(a.source), y.dims().get(a.target));
        let m = z.matrix_mut(ai);
        for u in 0..d {
            for r in 0..xt {
                for c in 0..xs {
                    m.set(u * xt + r, u * xs + c, x.matrix(ai).get(r, c))?;
                }
            }
        }
        for v in 0..e {
            for r in 0..yt {
                for c in 0..ys {
                    m.set(
                        d * xt + v * yt + r,
                        d * xs + v * ys + c,
                        y.matrix(ai).get(r, c),
                    )?;
                }
            }
        }
        for (k, co) in coords.iter().enumerate().filter(|(_, co)| co.colour == ai) {
            let mk = kron.matrix(k);
            for u in 0..d {
                for v in 0..e {
                    let coeff = mk.get(v, u);
                    if coeff.is_zero() {
                        continue;
                    }
                    let (r, c) = (d * xt + v * yt + co.l, u * xs + co.k);
                    let sum = m.get(r, c).add(&coeff)?;
                    m.set(r, c, sum)?;
                }
            }
        }
    }
    z.validate()?;
    Ok(z)
}

/// Middle term of a single extension `0 → Y → Z → X → 0` with class `Σ c_k e_k`.
pub fn middle_term_representation(
    x: &Representation,
    y: &Representation,
    coords: &[ExtCoordinate],
    coefficients: &[ExactScalar],
) -> Result<Representation> {
    if coefficients.len() != coords.len() {
        return Err(Error::WrongCount {
            expected: coords.len(),
            got: coefficients.len(),
        });
    }
    let kq = Quiver::kronecker(coords.len());
    let matrices = coefficients
        .iter()
        .map(|c| {
            let mut m = ExactMatrix::zeros(c.field(), 1, 1);
            m.set(0, 0, c.clone()).map(|_| m)
        })
        .collect::<Result<Vec<_>>>()?;
    let kron = Representation::new(kq, DimensionVector(vec![1, 1]), matrices)?;
    middle_term(x, y, coords, &kron)
}

/// `X_a`, `Y_a` agree on injectivity and surjectivity for every arrow.
pub fn same_rank_profile(x: &Representation, y: &Representation) -> bool {
    x.quiver().arrows().iter().enumerate().all(|(ai, _)| {
        let profile = |r: &Representation| {
            let m = r.matrix(ai);
            let k = m.rank();
            (k == m.cols(), k == m.rows())
        };
        profile(x) == profile(y)
    })
}

//! β-reduced equations `E(ᾱ, t, s)` in the coefficients of a β-normal form.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{BetaSubset, PsiKey, PsiTable, RelevantPair, RelevantTriple};
use crate::error::{Error, Result};
use crate::winding::Winding;

/// Term of a reduced equation after substituting constants.
///
/// The derived order puts products first, then single coefficients, then `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Monomial {
    Product(RelevantPair, RelevantPair),
    Coefficient(RelevantPair),
    One,
}

impl Monomial {
    fn product(a: RelevantPair, b: RelevantPair) -> Self {
        Monomial::Product(a.min(b), a.max(b))
    }

    pub fn factors(&self) -> Vec<RelevantPair> {
        match *self {
            Monomial::Product(a, b) => vec![a, b],
            Monomial::Coefficient(a) => vec![a],
            Monomial::One => vec![],
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monomial::Product(a, b) => write!(f, "w_{{{},{}}} w_{{{},{}}}", a.i, a.j, b.i, b.j),
            Monomial::Coefficient(a) => write!(f, "w_{{{},{}}}", a.i, a.j),
            Monomial::One => write!(f, "1"),
        }
    }
}

/// `lhs = rhs`, both sides sorted, with the coefficient indices of the
/// unsubstituted form kept in `indices` (diagonal constants included).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducedEquation {
    pub triple: RelevantTriple,
    pub lhs: Vec<Monomial>,
    pub rhs: Vec<Monomial>,
    pub indices: Vec<RelevantPair>,
}

impl ReducedEquation {
    fn trivial(triple: RelevantTriple) -> Self {
        ReducedEquation {
            triple,
            lhs: vec![],
            rhs: vec![],
            indices: vec![],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    /// `lhs - rhs` as monomial → integer coefficient, zeros dropped.
    pub fn net(&self) -> BTreeMap<Monomial, i64> {
        let mut out: BTreeMap<Monomial, i64> = BTreeMap::new();
        for m in &self.lhs {
            *out.entry(*m).or_default() += 1;
        }
        for m in &self.rhs {
            *out.entry(*m).or_default() -= 1;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Coefficients that survive cancellation.
    pub fn variables(&self) -> Vec<RelevantPair> {
        let mut v: Vec<RelevantPair> = self.net().keys().flat_map(Monomial::factors).collect();
        v.sort();
        v.dedup();
        v
    }

    /// `v` occurs only linearly and with coefficient ±1.
    pub fn solvable_for(&self, v: RelevantPair) -> bool {
        let net = self.net();
        let linear = net.get(&Monomial::Coefficient(v)).copied().unwrap_or(0);
        linear.abs() == 1
            && !net
                .keys()
                .any(|m| matches!(m, Monomial::Product(a, b) if *a == v || *b == v))
    }
}

impl fmt::Display for ReducedEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |ms: &[Monomial]| {
            if ms.is_empty() {
                "0".to_string()
            } else {
                ms.iter()
                    .map(|m| m.to_string())
                    .collect::<Vec<_>>()
                    .join(" + ")
            }
        };
        write!(f, "{} = {}", side(&self.lhs), side(&self.rhs))
    }
}

/// Substitutes the β-normal form into `E(ᾱ, t, s)`.
///
/// Constants become `w_{i,i} = 1` for `i ∈ β` and `0` otherwise; the
/// equation is trivial unless `t ∉ β` and `s ∈ β`.
pub fn beta_reduced_equation(
    w: &Winding,
    beta: &BetaSubset,
    triple: RelevantTriple,
) -> ReducedEquation {
    let RelevantTriple { t, s, .. } = triple;
    if beta.contains(t) || !beta.contains(s) {
        return ReducedEquation::trivial(triple);
    }
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    let mut indices = Vec::new();
    for a in w.arrows_of_colour(triple.colour) {
        let (sa, ta) = (a.source, a.target);
        if ta == t && sa <= s && (!beta.contains(sa) || sa == s) {
            indices.push(RelevantPair::new(sa, s));
            lhs.push(if sa == s {
                Monomial::One
            } else {
                Monomial::Coefficient(RelevantPair::new(sa, s))
            });
        }
        if t < ta && sa < s && beta.contains(ta) && !beta.contains(sa) {
            let (x, y) = (RelevantPair::new(t, ta), RelevantPair::new(sa, s));
            indices.extend([x, y]);
            rhs.push(Monomial::product(x, y));
        }
        if sa == s && t <= ta && (beta.contains(ta) || ta == t) {
            indices.push(RelevantPair::new(t, ta));
            if ta != t {
                rhs.push(Monomial::Coefficient(RelevantPair::new(t, ta)));
            }
        }
    }
    lhs.sort();
    rhs.sort();
    indices.sort();
    indices.dedup();
    ReducedEquation {
        triple,
        lhs,
        rhs,
        indices,
    }
}

pub(crate) fn psi_beta_with(table: &PsiTable, eq: &ReducedEquation) -> Option<PsiKey> {
    eq.indices.iter().map(|&p| table.psi(p)).max()
}

/// Ψ of the Ψ-largest coefficient index of the reduced equation.
pub fn psi_beta(w: &Winding, beta: &BetaSubset, triple: RelevantTriple) -> Result<Option<PsiKey>> {
    if beta.contains(triple.t) || !beta.contains(triple.s) {
        return Err(Error::WrongMembership);
    }
    let eq = beta_reduced_equation(w, beta, triple);
    Ok(psi_beta_with(&PsiTable::new(w), &eq))
}

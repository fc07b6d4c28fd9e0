//! Brute-force point counts over `F_q`.
//!
//! [`cell_points`] enumerates β-normal forms and tests the unreduced
//! equations `E(ᾱ, t, s)` directly; [`grassmannian_points`] enumerates
//! subspaces in reduced column echelon form and tests `M_a(N_s) ⊆ N_t`.
//! Neither touches the reduction or sweep code in [`crate::schubert`].

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::check_prime;
use crate::quiver::{DimensionVector, Representation};
use crate::schubert::{check_hypothesis, decompose, free_coefficients, BetaSubset, CellResult};
use crate::winding::Winding;

pub const DEFAULT_MAX_POINTS: u128 = 10_000_000;
pub const DEFAULT_PRIMES: [u64; 2] = [2, 3];

fn power(q: u64, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, _| acc.saturating_mul(q as u128))
}

/// Points of the Schubert cell `C_β` over `F_q`.
pub fn cell_points(w: &Winding, beta: &BetaSubset, q: u64, max_points: u128) -> Result<u64> {
    check_prime(q)?;
    let free = free_coefficients(w, beta);
    let total = power(q, free.len());
    if total > max_points {
        return Err(Error::BudgetExceeded {
            required: total,
            cap: max_points,
        });
    }
    let n = w.vertex_count();
    let size = n + 1;
    let mut base = vec![0u64; size * size];
    for &j in beta.members() {
        base[j * size + j] = 1;
    }
    type ColourCheck<'a> = (Vec<(usize, usize)>, &'a [usize], &'a [usize]);
    let checks: Vec<ColourCheck> = w
        .base()
        .arrows()
        .iter()
        .enumerate()
        .map(|(c, a)| {
            let arrows = w
                .arrows_of_colour(c)
                .iter()
                .map(|x| (x.source, x.target))
                .collect();
            (arrows, w.fibre(a.target), w.fibre(a.source))
        })
        .collect();
    let holds = |m: &[u64]| {
        checks.iter().all(|(arrows, targets, sources)| {
            targets.iter().all(|&t| {
                sources.iter().all(|&s| {
                    let mut lhs = 0u64;
                    let mut rhs = 0u64;
                    for &(sa, ta) in arrows {
                        let ws = m[sa * size + s];
                        if ta == t {
                            lhs += ws;
                        }
                        rhs += m[t * size + ta] * ws % q;
                    }
                    lhs % q == rhs % q
                })
            })
        })
    };
    let count = (0..total as usize)
        .into_par_iter()
        .with_min_len(256)
        .map_init(
            || base.clone(),
            |m, idx| {
                let mut idx = idx as u64;
                for p in &free {
                    m[p.i * size + p.j] = idx % q;
                    idx /= q;
                }
                holds(m) as u64
            },
        )
        .sum();
    Ok(count)
}

/// Subspace of `F_q^d` in reduced column echelon form.
struct Subspace {
    pivots: Vec<usize>,
    columns: Vec<Vec<u64>>,
}

impl Subspace {
    fn contains(&self, v: &[u64], q: u64) -> bool {
        let mut r = v.to_vec();
        for (p, col) in self.pivots.iter().zip(&self.columns) {
            let f = r[*p];
            if f != 0 {
                for (x, y) in r.iter_mut().zip(col) {
                    *x = (*x + q - f * y % q) % q;
                }
            }
        }
        r.iter().all(|&x| x == 0)
    }
}

/// Gaussian binomial `[d choose e]_q`, saturating.
pub fn gaussian_binomial(d: usize, e: usize, q: u64) -> u128 {
    if e > d {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for k in 0..e {
        num = num.saturating_mul(power(q, d - k).saturating_sub(1));
        den = den.saturating_mul(power(q, k + 1) - 1);
    }
    if num == u128::MAX {
        u128::MAX
    } else {
        num / den
    }
}

fn subspaces(d: usize, e: usize, q: u64) -> Vec<Subspace> {
    use itertools::Itertools;
    let mut out = Vec::new();
    for pivots in (0..d).combinations(e) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(k, &r)| (0..r).filter(|i| !pivots.contains(i)).map(move |i| (k, i)))
            .collect();
        for mut idx in 0..power(q, free.len()) as u64 {
            let mut columns = vec![vec![0u64; d]; e];
            for (k, &r) in pivots.iter().enumerate() {
                columns[k][r] = 1;
            }
            for &(k, i) in &free {
                columns[k][i] = idx % q;
                idx /= q;
            }
            out.push(Subspace {
                pivots: pivots.clone(),
                columns,
            });
        }
    }
    out
}

/// Points of `Gr_e(M)` over `F_q`.
pub fn grassmannian_points(
    rep: &Representation,
    e: &DimensionVector,
    q: u64,
    max_points: u128,
) -> Result<u64> {
    check_prime(q)?;
    let quiver = rep.quiver();
    if e.0.len() != quiver.vertex_count() {
        return Err(Error::Parse(
            "dimension vector length differs from the vertex count".into(),
        ));
    }
    for p in 0..e.0.len() {
        if e.get(p) > rep.dims().get(p) {
            return Err(Error::DimensionTooLarge(quiver.vertex_name(p).to_string()));
        }
    }
    let reduced = rep.reduce_mod(q)?;
    let total = (0..e.0.len()).fold(1u128, |acc, p| {
        acc.saturating_mul(gaussian_binomial(rep.dims().get(p), e.get(p), q))
    });
    if total > max_points {
        return Err(Error::BudgetExceeded {
            required: total,
            cap: max_points,
        });
    }
    let spaces: Vec<Vec<Subspace>> = (0..e.0.len())
        .map(|p| subspaces(rep.dims().get(p), e.get(p), q))
        .collect();
    let mats: Vec<(usize, usize, usize, Vec<u64>)> = quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let m = reduced.matrix(ai);
            (
                a.source,
                a.target,
                m.cols(),
                m.residues().expect("reduced").to_vec(),
            )
        })
        .collect();
    let check = |choice: &[usize], p: usize| {
        mats.iter()
            .filter(|(s, t, _, _)| (*s).max(*t) == p)
            .all(|(s, t, cols, m)| {
                let (ns, nt) = (&spaces[*s][choice[*s]], &spaces[*t][choice[*t]]);
                ns.columns.iter().all(|col| {
                    let image: Vec<u64> = m
                        .chunks(*cols.max(&1))
                        .take(rep.dims().get(*t))
                        .map(|row| {
                            row.iter()
                                .zip(col)
                                .fold(0u64, |acc, (a, b)| (acc + a * b) % q)
                        })
                        .collect();
                    nt.contains(&image, q)
                })
            })
    };
    fn walk(
        p: usize,
        choice: &mut Vec<usize>,
        spaces: &[Vec<Subspace>],
        check: &dyn Fn(&[usize], usize) -> bool,
    ) -> u64 {
        if p == spaces.len() {
            return 1;
        }
        let mut count = 0;
        for k in 0..spaces[p].len() {
            choice[p] = k;
            if check(choice, p) {
                count += walk(p + 1, choice, spaces, check);
            }
        }
        count
    }
    if spaces.is_empty() {
        return Ok(1);
    }
    let count = (0..spaces[0].len())
        .into_par_iter()
        .map(|k| {
            let mut choice = vec![0; spaces.len()];
            choice[0] = k;
            if check(&choice, 0) {
                walk(1, &mut choice, &spaces, &check)
            } else {
                0
            }
        })
        .sum();
    Ok(count)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellCheck {
    pub beta: Vec<usize>,
    pub result: CellResult,
    pub points: u64,
    /// `q^d` for affine cells, `0` for empty ones, absent for violations.
    pub expected: Option<u64>,
}

impl CellCheck {
    pub fn matches(&self) -> bool {
        self.expected.is_none_or(|e| e == self.points)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeCheck {
    pub q: u64,
    pub grassmannian: u64,
    pub cell_sum: u64,
    pub cells: Vec<CellCheck>,
}

impl PrimeCheck {
    pub fn partition_holds(&self) -> bool {
        self.grassmannian == self.cell_sum
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub hypothesis_passed: bool,
    pub primes: Vec<PrimeCheck>,
}

impl VerificationReport {
    /// Partition identity at every prime and every certified cell count as predicted.
    pub fn passed(&self) -> bool {
        self.primes
            .iter()
            .all(|p| p.partition_holds() && p.cells.iter().all(CellCheck::matches))
    }

    pub fn mismatches(&self) -> Vec<(u64, &CellCheck)> {
        self.primes
            .iter()
            .flat_map(|p| {
                p.cells
                    .iter()
                    .filter(|c| !c.matches())
                    .map(move |c| (p.q, c))
            })
            .collect()
    }
}

/// Compares the decomposition of the push-forward of `w` against both oracles.
pub fn verify_decomposition(
    w: &Winding,
    e: &DimensionVector,
    primes: &[u64],
    max_points: u128,
) -> Result<VerificationReport> {
    let cells = decompose(w, e)?;
    let rep = w.push_forward();
    let mut out = Vec::new();
    for &q in primes {
        let grassmannian = grassmannian_points(&rep, e, q, max_points)?;
        let mut checks = Vec::new();
        for c in &cells {
            let points = cell_points(w, &c.beta, q, max_points)?;
            let expected = match c.result {
                CellResult::Empty => Some(0),
                CellResult::Affine(d) => Some(power(q, d) as u64),
                CellResult::HypothesisViolation(_) => None,
            };
            checks.push(CellCheck {
                beta: c.beta.members().to_vec(),
                result: c.result.clone(),
                points,
                expected,
            });
        }
        let cell_sum = checks.iter().map(|c| c.points).sum();
        out.push(PrimeCheck {
            q,
            grassmannian,
            cell_sum,
            cells: checks,
        });
    }
    Ok(VerificationReport {
        hypothesis_passed: check_hypothesis(w).passed(),
        primes: out,
    })
}

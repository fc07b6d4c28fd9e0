//! Worked examples used by the tests, the benchmarks and `qgs fixtures:<name>`.

use crate::io::Document;
use crate::linalg::ExactMatrix;
use crate::quiver::{DimensionVector, Quiver, Representation};
use crate::schofield::{ExtBasisElement, GluingSpec};
use crate::winding::{coefficient_quiver, natural_order, Winding};

fn rep(quiver: Quiver, dims: &[usize], matrices: &[&[&[i64]]]) -> Representation {
    let mats = quiver
        .arrows()
        .iter()
        .zip(matrices)
        .map(|(a, rows)| {
            let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
            ExactMatrix::from_int_rows(&rows, dims[a.source])
        })
        .collect();
    Representation::new(quiver, DimensionVector(dims.to_vec()), mats)
        .expect("fixture representation")
}

fn natural(rep: &Representation) -> Winding {
    coefficient_quiver(rep, &natural_order(rep.dims())).expect("natural order")
}

/// The Kronecker quiver with arrows `alpha`, `gamma` from `q0` to `q1`.
pub fn kronecker_quiver() -> Quiver {
    Quiver::new(
        &["q0", "q1"],
        &[("alpha", "q0", "q1"), ("gamma", "q0", "q1")],
    )
    .expect("valid")
}

/// Unramified tree of dimension `(3, 4)` over the Kronecker quiver.
pub fn kronecker_3_4() -> Winding {
    Winding::from_names(
        kronecker_quiver(),
        &["q0", "q0", "q0", "q1", "q1", "q1", "q1"],
        &[
            ("alpha", 1, 4),
            ("alpha", 2, 5),
            ("alpha", 3, 6),
            ("gamma", 1, 5),
            ("gamma", 2, 6),
            ("gamma", 3, 7),
        ],
    )
    .expect("valid")
}

fn d4_quiver(order: &[&str]) -> Quiver {
    Quiver::new(
        order,
        &[("alpha", "x", "t"), ("gamma", "y", "t"), ("eta", "z", "t")],
    )
    .expect("valid")
}

/// Three lines `(1,0)`, `(1,1)`, `(0,1)` in a plane.
pub fn ramified_d4_representation() -> Representation {
    rep(
        d4_quiver(&["t", "y", "x", "z"]),
        &[2, 1, 1, 1],
        &[&[&[1], &[0]], &[&[1], &[1]], &[&[0], &[1]]],
    )
}

pub fn ramified_d4() -> Winding {
    natural(&ramified_d4_representation())
}

/// Three planes in a three dimensional space.
pub fn del_pezzo_representation() -> Representation {
    rep(
        d4_quiver(&["t", "x", "y", "z"]),
        &[3, 2, 2, 2],
        &[
            &[&[1, 0], &[0, 1], &[0, 0]],
            &[&[1, 0], &[0, 0], &[0, 1]],
            &[&[0, 0], &[1, 0], &[0, 1]],
        ],
    )
}

pub fn del_pezzo() -> Winding {
    natural(&del_pezzo_representation())
}

fn single_arrow_quiver() -> Quiver {
    Quiver::new(&["p", "q"], &[("a", "p", "q")]).expect("valid")
}

/// Coefficient quiver with two crossing arrows.
pub fn non_ordered_f_representation() -> Representation {
    rep(single_arrow_quiver(), &[2, 2], &[&[&[0, 1], &[1, 0]]])
}

pub fn non_ordered_f() -> Winding {
    natural(&non_ordered_f_representation())
}

/// Coefficient quiver containing a zigzag `2 → 4 ← 1 → 3`.
pub fn non_polarized_representation() -> Representation {
    rep(single_arrow_quiver(), &[2, 2], &[&[&[1, 0], &[1, 1]]])
}

pub fn non_polarized() -> Winding {
    natural(&non_polarized_representation())
}

/// Two parallel arrows between two vertices; not a forest.
pub fn double_edge() -> Winding {
    Winding::from_names(
        Quiver::kronecker(2),
        &["q0", "q1"],
        &[("rho1", 1, 2), ("rho2", 1, 2)],
    )
    .expect("valid")
}

/// Subspace quiver with vertices `q0..qn` and arrows `a_i: q_i → q0`.
pub fn subspace_quiver(n: usize) -> Quiver {
    let names: Vec<String> = (0..=n).map(|i| format!("q{i}")).collect();
    let arrows: Vec<(String, String, String)> = (1..=n)
        .map(|i| (format!("a{i}"), format!("q{i}"), "q0".to_string()))
        .collect();
    Quiver::new(&names, &arrows).expect("valid")
}

/// Indecomposable of dimension `(2,1,1,1,0)` over the four-subspace quiver.
pub fn s4_x_alpha() -> Representation {
    rep(
        subspace_quiver(4),
        &[2, 1, 1, 1, 0],
        &[&[&[1], &[0]], &[&[1], &[1]], &[&[0], &[1]], &[&[], &[]]],
    )
}

/// Simple at `q4`.
pub fn s4_x_beta() -> Representation {
    rep(subspace_quiver(4), &[0, 0, 0, 0, 1], &[&[], &[], &[], &[]])
}

/// The exceptional Kronecker winding of dimension `(1, 2)`.
pub fn kronecker_1_2() -> Winding {
    Winding::from_names(
        Quiver::kronecker(2),
        &["q0", "q1", "q1"],
        &[("rho1", 1, 2), ("rho2", 1, 3)],
    )
    .expect("valid")
}

/// Gluing of `X_β` onto two copies of `X_α` along the two `a4` extensions.
pub fn s4_gluing() -> GluingSpec {
    let tx = natural(&s4_x_beta());
    let ty = natural(&s4_x_alpha());
    let basis = vec![
        ExtBasisElement {
            colour: 3,
            source: 1,
            target: 1,
        },
        ExtBasisElement {
            colour: 3,
            source: 1,
            target: 2,
        },
    ];
    GluingSpec {
        tx,
        ty,
        basis,
        tm: kronecker_1_2(),
    }
}

/// Roots `(1,1,0,…,0)` and `(1,0,1,…,1)` over the `n`-subspace quiver, `n ≥ 3`,
/// with the `a_i` extensions for `i = 3..=n` as basis of `Ext(X, Y)`.
pub fn sn_pair(n: usize) -> (Winding, Winding, Vec<ExtBasisElement>) {
    let q = subspace_quiver(n);
    let mut dims_x = vec![1; n + 1];
    dims_x[1] = 0;
    let mut dims_y = vec![0; n + 1];
    dims_y[0] = 1;
    dims_y[1] = 1;
    let x_fiber: Vec<String> = std::iter::once("q0".to_string())
        .chain((2..=n).map(|i| format!("q{i}")))
        .collect();
    let x_arrows: Vec<(String, usize, usize)> = (2..=n).map(|i| (format!("a{i}"), i, 1)).collect();
    let tx = Winding::from_names(q.clone(), &x_fiber, &x_arrows).expect("valid");
    let ty = Winding::from_names(
        q,
        &["q0".to_string(), "q1".to_string()],
        &[("a1".to_string(), 2, 1)],
    )
    .expect("valid");
    let basis = (3..=n)
        .map(|i| ExtBasisElement {
            colour: i - 1,
            source: i,
            target: 1,
        })
        .collect();
    (tx, ty, basis)
}

/// A named fixture with a default dimension vector for `qgs`.
pub struct Fixture {
    pub name: &'static str,
    pub document: Document,
    pub default_dims: Option<&'static str>,
}

pub const NAMES: [&str; 6] = [
    "kronecker_3_4",
    "ramified_d4",
    "del_pezzo",
    "non_ordered_f",
    "non_polarized",
    "s4_glue",
];

pub fn by_name(name: &str) -> Option<Fixture> {
    let (document, default_dims) = match name {
        "kronecker_3_4" => (Document::Winding(kronecker_3_4()), Some("q0=1,q1=2")),
        "ramified_d4" => (Document::Winding(ramified_d4()), Some("t=1,y=1")),
        "del_pezzo" => (Document::Winding(del_pezzo()), Some("t=2,x=1,y=1,z=1")),
        "non_ordered_f" => (Document::Winding(non_ordered_f()), Some("p=1,q=1")),
        "non_polarized" => (Document::Winding(non_polarized()), Some("p=1,q=1")),
        "s4_glue" => (Document::Gluing(s4_gluing()), None),
        _ => return None,
    };
    let name = NAMES.iter().find(|n| **n == name).copied()?;
    Some(Fixture {
        name,
        document,
        default_dims,
    })
}

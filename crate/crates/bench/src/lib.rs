//! Inputs for the criterion benchmarks.

use qgs_core::{Quiver, Winding};

/// Preinjective Kronecker tree of dimension `(n, n + 1)`:
/// `alpha: i → n + i` and `gamma: i → n + i + 1`.
pub fn kronecker_preinjective(n: usize) -> Winding {
    let quiver = Quiver::new(
        &["q0", "q1"],
        &[("alpha", "q0", "q1"), ("gamma", "q0", "q1")],
    )
    .expect("valid");
    let fiber: Vec<&str> = (0..2 * n + 1)
        .map(|i| if i < n { "q0" } else { "q1" })
        .collect();
    let arrows: Vec<(&str, usize, usize)> = (1..=n)
        .flat_map(|i| [("alpha", i, n + i), ("gamma", i, n + i + 1)])
        .collect();
    Winding::from_names(quiver, &fiber, &arrows).expect("valid")
}

//! Schubert decompositions of quiver Grassmannians of tree modules.
//!
//! A representation with a chosen basis is encoded by its coefficient
//! quiver, a [`Winding`]. For a subset β of the winding's vertices the
//! Schubert cell `C_β` is cut out by the equations `E(ᾱ, t, s)`; [`cell`]
//! decides whether it is empty or an affine space and [`decompose`] does so
//! for every β of a given type. The [`oracle`] module counts points over
//! finite fields independently, and [`schofield`] glues windings along a
//! basis of `Ext`.

pub mod error;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod polarization;
pub mod quiver;
pub mod schofield;
pub mod schubert;
pub mod winding;

pub use error::{Error, Result};
pub use io::Document;
pub use linalg::{ExactMatrix, ExactScalar, Field};
pub use oracle::{cell_points, grassmannian_points, verify_decomposition, VerificationReport};
pub use polarization::{
    find_sorting, is_polarization, is_strict_weak_polarization, is_weak_polarization,
    search_ordered_polarization, Sorting,
};
pub use quiver::{DimensionVector, QArrow, Quiver, Representation};
pub use schofield::{
    basis_polarization, glue, hom_ext, is_exceptional_pair, middle_term, BasisPolarization,
    ExtBasisElement, GluingSpec,
};
pub use schubert::{
    betti_numbers, cell, cell_dimension, check_hypothesis, decompose, euler_characteristic,
    BetaSubset, Cell, CellResult, HypothesisReport, PsiKey, RelevantPair, RelevantTriple,
};
pub use winding::{coefficient_quiver, natural_order, BasisOrder, TArrow, Winding};

//! Exact verification and construction tools for finite-dimensional Banach
//! lattice algebras.
//!
//! Every finite-dimensional Archimedean vector lattice is modelled in its atom
//! basis with the coordinatewise order, so an algebra is fully described by a
//! lattice norm ([`NormSpec`]) and a rank-3 structure tensor
//! ([`StructureTensor`]). All scalars are exact rationals; the only floating
//! point lives in [`complexify`] (square roots) and in the spectral-radius
//! estimate of [`constructions::ideal_ae`].
//!
//! Modules:
//!
//! * [`lattice`]: coordinatewise lattice operations, norms, dual norms, order
//!   units and band projections.
//! * [`algebra`]: products from structure constants, the axiom battery,
//!   f-algebra classification and Arens adjoints.
//! * [`representation`]: transport of AM-algebras with unit onto pointwise
//!   products, the Martignon uniqueness solver, and the quotient/gluing
//!   construction for constraint-defined sublattices.
//! * [`sparse_seq`]: finitely supported sequences, a non-unital model with an
//!   approximate unit.
//! * [`constructions`]: the example gallery, the ideal generated by the
//!   identity, and the two alternative products.
//! * [`complexify`]: complex products, moduli and C*-identity checks.
//! * [`format`]: the JSON file formats consumed by the command-line tool.

pub mod algebra;
pub mod complexify;
pub mod constructions;
mod error;
pub mod format;
pub mod lattice;
pub mod linalg;
pub mod representation;
pub mod sampling;
pub mod scalar;
pub mod sparse_seq;
mod union_find;

pub use algebra::{AlgebraSpec, AxiomReport, BilinearMap, StructureTensor};
pub use error::{Error, Result};
pub use lattice::{Element, Functional, NormKind, NormSpec};
pub use scalar::Scalar;

/// Outcome of a decision procedure: either the property holds, or it fails
/// with a reproducible witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

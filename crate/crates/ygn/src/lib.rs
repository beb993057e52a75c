//! Exact verification toolkit for a family of circle bundles over surfaces.
//! It decides by complete search whether an integral lattice embeds into
//! the standard negative definite diagonal lattice, and combines that
//! verdict with the spin-c arithmetic of the two distinguished tight
//! contact structures to produce fillability obstruction reports.
//!
//! All lattice arithmetic is exact (arbitrary precision integers and
//! rationals); search verdicts are certificates, not approximations. Every
//! value is immutable after construction and every operation is a pure
//! function, so the whole API is safe for unrestricted concurrent use.

// index loops in the elimination and Gram code mirror the matrix notation
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod lattice;
pub mod pipeline;
pub mod search;
pub mod spinc;
pub mod topology;

pub use error::{Error, Result};
pub use lattice::{DefinitenessClass, DiagonalTarget, GramLattice, GramRepresentation};
pub use pipeline::{obstruct, theorem_range, ObstructionReport, Verdict};
pub use search::{
    enumerate_norm_vectors, find_representations, orbit_count, represents_into_some_diagonal,
    support_bound, SearchCertificate, SearchOptions, SearchOutcome,
};
pub use spinc::{CircleBundle, ContactStructure, DiskSpinc, FMultiple, TorsionSpinc};
pub use topology::{
    blowup_lattice, cap_parameters, ld_lattice, orthogonality_report, proper_transform_class,
    sublattice_from_classes, BlowupClass, CapData,
};

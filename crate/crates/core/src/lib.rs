//! Symbolic engine for equivariant noncommutative residues of Laplace-type
//! operators built from Dirac operators perturbed by Killing vector fields.

#![allow(clippy::needless_range_loop)]

pub mod charts;
pub mod boundary;
pub mod clifford;
pub mod cliffjet;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod jets;
pub mod operators;
pub mod scalars;
pub mod symcalc;

pub use clifford::{Blade, Clifford, FormTensor};
pub use cliffjet::CliffordJet;
pub use error::{Error, Result};
pub use geometry::{derive_geometry, GeometryData, KillingField, MetricChart};
pub use jets::{Jet, MultiIndex};
pub use scalars::{ExactScalar, FloatScalar, GaussRational, Scalar, Tier, Tolerance};

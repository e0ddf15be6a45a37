//! Boundary residue terms at a collar boundary point.

pub mod constants;
pub mod halfsym;
pub mod phi;

pub use constants::{derivative_bracket, general_n_constants, GeneralNConstants};
pub use halfsym::HalfSymbol;
pub use phi::{compute_phi, equivariant_extras, perturbed_boundary_term, BoundaryChart, PhiCase, PhiResult};

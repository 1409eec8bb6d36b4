//! Degrees of freedom of the smooth three-dimensional spaces, their induced
//! projections and the commuting diagrams.

pub mod commute;
pub mod face;
pub mod functional;
pub mod projection;
pub mod sets;

pub use commute::{check_commute, check_commute_on, random_form, CommuteReport, Diagram, DiagramProjectors, IdentityResult};
pub use face::{curl_f, div_f, grad_f, rot_f, stokes_sides, FaceRT};
pub use functional::{DofFunctional, DualCache, Integrand, MapCache, Proj};
pub use projection::{check_unisolvence, dof_matrix, unisolvence, Projector, UnisolvenceReport};
pub use sets::{build_dofset, block_counts, DofGroup, DofSet, DofSpace};

//! Global spaces on Alfeld-refined macro meshes, their exactness and the
//! cell-by-cell projections.

pub mod assembly;
pub mod exact;
pub mod project;

pub use assembly::{compose, conformity, GlobalSpace, Rank, RankMode, Trace};
pub use exact::{check_global_exact, counted_dim, sequence_diagram, sequence_spaces, GlobalExactReport, GlobalSlot};
pub use project::{global_project, random_cases, GlobalProjectCase, GlobalProjectReport, GlobalProjectors};

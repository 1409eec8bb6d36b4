pub mod build;
pub mod constraints;
pub mod formulas;
pub mod layout;
pub mod potential;
pub mod probes;
pub mod sequence;
pub mod spec;

pub use build::{build_space, build_space_uncached, SpaceBasis};
pub use constraints::{constraint_rows, ConstraintBuilder, LocalOp};
pub use formulas::dimension_formula;
pub use layout::RawLayout;
pub use potential::{find_potential, total_integral};
pub use probes::{
    is_subspace, low_degree_checks, polynomial_forms, spans_equal, trimmed_variants, verify_dimension,
    vertex_smoothness_probe, DimReport, ProbeReport,
};
pub use sequence::{check_exact, d_images, d_matrix, raw_d, Head, SequenceReport, SequenceSpec, SlotReport};
pub use spec::{Family, SpaceSpec};

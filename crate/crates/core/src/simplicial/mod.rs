//! Simplices, barycentric splits and macro meshes with exact coordinates.

pub mod mesh;
pub mod simplex;
pub mod split;

pub use mesh::{MacroMesh, MeshFace};
pub use simplex::{edge_frame, facet_normal, point, AffineFunctional, Point, Simplex};
pub use split::{combinations, AlfeldSplit, SubSimplex};

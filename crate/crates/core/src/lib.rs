pub mod cli;
pub mod dofs3d;
pub mod globalfe;
pub mod error;
pub mod polyforms;
pub mod ratlinalg;
pub mod report;
pub mod simplicial;
pub mod splitspaces;

pub use error::{Error, Result};
pub use ratlinalg::{RatMatrix, Rational};

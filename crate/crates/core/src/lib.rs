pub mod algebra;
pub mod census;
pub mod error;
pub mod euler;
pub mod invariance;
pub mod io;
pub mod moves;
pub mod report;
pub mod spider;
pub mod spine;
pub mod torsion;
pub mod triangulation;

pub use error::{Error, Result};
pub use spine::BranchedSpine;
pub use triangulation::Triangulation;

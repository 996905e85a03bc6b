//! Exact γ-quasi-clique numbers of graphs, two-point predictions for
//! binomial random graphs, and numerical checks of the first- and
//! second-moment estimates behind them.

pub mod error;
pub mod experiments;
pub mod graph;
pub mod logvalue;
pub mod moments;
pub mod solver;
pub mod theory;

pub use error::{Error, Result};
pub use graph::{Graph, RationalDensity, Seed, VertexSet};
pub use logvalue::LogValue;

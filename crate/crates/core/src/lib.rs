pub mod acm;
pub mod asymptotics;
pub mod block;
pub mod closed_forms;
pub mod error;
pub mod leamer;
pub mod numerical;
pub mod omega;
mod search;

pub use error::{Error, Result};
pub use numerical::{FactorizationVector, NumericalMonoid};
pub use omega::{BulletSet, OmegaResult};

pub mod analytics;
pub mod chain;
pub mod dynamics;
pub mod error;
pub mod hamiltonians;
pub mod hilbert;
pub mod numerics;
pub mod observables;
pub mod params;
pub mod transforms;

pub use error::{Error, Result};

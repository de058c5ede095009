pub mod error;
pub mod prototype;
mod zpk;

pub use error::{Error, Result};
pub mod planner;
pub mod transform;
pub mod realization;
pub mod design;
pub mod analysis;
pub mod audio;
pub mod cli;

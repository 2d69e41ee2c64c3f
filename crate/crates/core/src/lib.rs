//! Finite stratified spaces, conical derivatives and Lie algebra cohomology.

pub mod cone;
pub mod deriv;
pub mod error;
pub mod forms;
pub mod order;
pub mod refine;
pub mod sample;
pub mod stratify;
pub mod stratmap;
pub mod topology;

pub use error::{Error, Result};

//! Random generation of well-typed terms and property suites for the
//! kernel, the closure conversion and the model.

pub mod config;
pub mod gen;
pub mod properties;
pub mod report;
pub mod shrink;
pub mod terms;

pub use config::{EnvProfile, GenConfig};
pub use gen::{gen_term, Gen, GenError};
pub use properties::{run_named, run_property, Property};
pub use report::{Failure, Input, PropertyReport};
